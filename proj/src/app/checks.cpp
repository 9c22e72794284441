#include "edsd/app.hpp"

#include <numeric>
#include <random>
#include <sstream>

#include "edsd/modp.hpp"

namespace edsd {

namespace {

Json result(char const *anchor, std::size_t violations, std::size_t unknown = 0)
{
    return {{"anchor", anchor}, {"violations", violations}, {"unknown", unknown}, {"pass", violations == 0}};
}

std::string fixed(double v, int digits = 6)
{
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(digits);
    os << v;
    return os.str();
}

std::vector<std::string> strings(std::vector<Integer> const &v)
{
    std::vector<std::string> out;
    for (auto const &x : v)
        out.push_back(to_string(x));
    return out;
}

DescentPair pair_of(RunConfig const &cfg)
{
    return DescentPair(cfg.isogeny, cfg.Q);
}

bool is_default_example(RunConfig const &cfg)
{
    RunConfig const d = default_config();
    return cfg.a == d.a && cfg.Q == d.Q;
}

} // namespace

Json to_json(HeightEstimate const &h)
{
    return {{"value", fixed(h.value, 9)},
            {"method", to_string(h.method)},
            {"sampleRange", {h.rangeLo, h.rangeHi}},
            {"intercept", fixed(h.intercept, 6)},
            {"residual", fixed(h.residual, 9)}};
}

Json to_json(MembershipVerdict const &v)
{
    Json w = {{"clause", v.witness.clause}, {"steps", v.witness.steps}};
    if (v.witness.rank) {
        w["n_p"] = *v.witness.rank;
        Json f = Json::array();
        for (auto const &[l, e] : v.witness.rankFactors)
            f.push_back({l, e});
        w["n_p_factors"] = f;
    }
    Json out = {{"prime", to_string(v.prime)},
                {"family", to_string(v.family)},
                {"verdict", to_string(v.verdict)},
                {"witness", w},
                {"budgetSpent", v.budgetSpent}};
    if (!v.blocking.empty())
        out["blocking"] = v.blocking;
    return out;
}

Json to_json(Decomposition const &d)
{
    Json primes = Json::array();
    for (auto const &[p, v] : d.primes)
        primes.push_back({{"prime", to_string(p)}, {"verdict", to_string(v)}});
    Json out = {{"x", format_rational(d.x)}, {"ok", d.ok}, {"primes", primes}};
    if (d.ok) {
        out["s"] = format_rational(d.s);
        out["t"] = format_rational(d.t);
    }
    if (d.blocking)
        out["blocking"] = to_string(*d.blocking);
    return out;
}

Json check_eds_fixtures(RunConfig const &cfg)
{
    EdsSequence const seq(cfg.curve(), cfg.Q, 4);
    std::vector<std::string> B;
    for (std::size_t n = 1; n <= 4; ++n)
        B.push_back(to_string(seq.B(n)));
    std::size_t violations = 0;
    bool const applicable = is_default_example(cfg);
    if (applicable)
        violations = B != std::vector<std::string>{"1", "1", "3", "22"};
    auto out = result("eds-fixtures", violations);
    out["B"] = B;
    out["fixturesApply"] = applicable;
    return out;
}

Json check_divisibility_law(RunConfig const &cfg)
{
    EdsSequence const seq(cfg.curve(), cfg.Q, cfg.divisibilityN);
    auto const v = check_divisibility(seq, cfg.divisibilityN);
    auto out = result("divisibility-law", v.size());
    out["N"] = cfg.divisibilityN;
    Json bad = Json::array();
    for (auto const &x : v)
        bad.push_back({x.n, x.m});
    out["failures"] = bad;
    return out;
}

Json check_rank_law(RunConfig const &cfg)
{
    auto const curve = cfg.curve();
    std::size_t const N = cfg.divisibilityN;
    EdsSequence const seq(curve, cfg.Q, N);
    std::size_t violations = 0, within = 0, beyond = 0;
    Json failures = Json::array();
    for (auto l : primes_up_to(static_cast<std::uint32_t>(cfg.primeBound))) {
        Integer const L(l);
        if (curve.is_bad(L))
            continue;
        auto const order = point_order_mod_p(curve, cfg.Q, l);
        auto const r = rank_of_apparition(seq, L);
        bool bad = false;
        if (r) {
            ++within;
            bad = *r != order;
            for (std::size_t m = 1; m <= N; ++m)
                if ((seq.B(m) % L == 0) != (m % *r == 0))
                    bad = true;
        } else {
            ++beyond;
            bad = order <= N;
        }
        if (bad) {
            ++violations;
            failures.push_back(l);
        }
    }
    auto out = result("rank-of-apparition", violations);
    out["primeBound"] = cfg.primeBound;
    out["N"] = N;
    out["primesWithRankInRange"] = within;
    out["primesWithRankBeyond"] = beyond;
    out["failures"] = failures;
    return out;
}

Json check_descent_map(RunConfig const &cfg)
{
    auto const pair = pair_of(cfg);
    RatPoint const image = sigma(pair, pair.Qprime());
    std::size_t violations = 0;
    std::mt19937_64 rng(cfg.rhoSeed);
    std::size_t checked = 0;
    while (checked < 50) {
        long const m1 = static_cast<long>(rng() % 19) - 9, m2 = static_cast<long>(rng() % 19) - 9;
        RatPoint const P1 = scalar_mul(pair.Eprime(), pair.Qprime(), m1);
        RatPoint const P2 = scalar_mul(pair.Eprime(), pair.Qprime(), m2);
        RatPoint const lhs = sigma(pair, add(pair.Eprime(), P1, P2));
        RatPoint const rhs = add(pair.E(), sigma(pair, P1), sigma(pair, P2));
        if (!(lhs == rhs) || !on_curve(pair.E(), lhs) || !(lhs == scalar_mul(pair.E(), pair.Q(), pair.signMatch() * (m1 + m2))))
            ++violations;
        ++checked;
    }
    auto out = result("descent-map", violations);
    out["sigmaQprime"] = {format_rational(image.x()), format_rational(image.y())};
    out["signMatch"] = pair.signMatch();
    out["homomorphismChecks"] = checked;
    return out;
}

Json check_ord_chain(RunConfig const &cfg)
{
    auto const pair = pair_of(cfg);
    EdsSequence const B(pair.E(), pair.Q(), cfg.descentN);
    EdsSequence const b = companion_eds(pair, pair.q() * cfg.descentN);
    auto const rep = check_divdiv(pair, B, b, cfg.descentN, cfg.certificate_options());
    auto out = result("ord-chain", rep.violations.size() + rep.aggregateFailures.size());
    out["N"] = cfg.descentN;
    out["primeRecords"] = rep.records.size();
    out["aggregateFailures"] = rep.aggregateFailures;
    return out;
}

Json check_ord_addition(RunConfig const &cfg)
{
    auto const pair = pair_of(cfg);
    EdsSequence const b = companion_eds(pair, pair.q() * cfg.descentN);
    auto const rep = check_ordord_range(pair, b, cfg.descentN, cfg.certificate_options());
    auto out = result("ord-addition", rep.violations.size() + rep.aggregateFailures.size());
    out["N"] = cfg.descentN;
    out["pairsChecked"] = rep.results.size();
    out["aggregateFailures"] = rep.aggregateFailures;
    return out;
}

Json check_primitive_lift(RunConfig const &cfg)
{
    auto const pair = pair_of(cfg);
    EdsSequence const B(pair.E(), pair.Q(), cfg.descentN);
    EdsSequence const b = companion_eds(pair, cfg.descentN);
    auto const rep = primitive_lift_check(pair, B, b, cfg.descentN, cfg.certificate_options());
    std::size_t violations = 0;
    for (auto const &r : rep.records)
        violations += !r.exact || !r.notLifted.empty();
    auto out = result("primitive-lift", violations);
    out["N"] = cfg.descentN;
    out["records"] = rep.records.size();
    out["skipped"] = rep.skipped;
    return out;
}

Json check_two_divisors(RunConfig const &cfg)
{
    auto const pair = pair_of(cfg);
    EdsSequence const B(pair.E(), pair.Q(), cfg.maxN);
    std::vector<std::size_t> indices;
    for (std::size_t n = 1; n <= cfg.maxN; ++n)
        if (std::gcd(n, static_cast<std::size_t>(pair.q())) == 1)
            indices.push_back(n);
    auto const rep = two_primitive_divisors_report(pair, B, indices, cfg.budget);
    std::size_t resolved = 0, violations = 0, unknown = 0;
    Json table = Json::array();
    for (auto const &row : rep.rows) {
        bool const known = row.all.kind != PrimitiveClass::Unknown;
        resolved += known;
        unknown += !known;
        table.push_back({{"n", row.n}, {"all", to_string(row.all.kind)}, {"good", to_string(row.good.kind)}});
        bool const inWindow = row.n >= cfg.twoDivisorLo && row.n <= cfg.twoDivisorHi && is_prime_u64(row.n);
        if (inWindow && row.good.kind != PrimitiveClass::Unknown && row.good.kind != PrimitiveClass::AtLeastTwoPrimes)
            ++violations;
    }
    double const fraction = rep.rows.empty() ? 1.0 : static_cast<double>(resolved) / rep.rows.size();
    bool const enough = fraction >= 0.8;
    auto out = result("two-primitive-divisors", violations + !enough, unknown);
    out["table"] = table;
    out["resolvedFraction"] = fixed(fraction, 4);
    out["window"] = {cfg.twoDivisorLo, cfg.twoDivisorHi};
    return out;
}

Json check_hypotheses(RunConfig const &cfg)
{
    auto const pair = pair_of(cfg);
    EdsSequence const B(pair.E(), pair.Q(), std::max<std::size_t>(pair.q(), 4));
    auto const h = check_hypotheses(pair, B);
    auto out = result("hypotheses", !h.holds());
    out["torsionTrivial"] = h.torsionTrivial;
    out["rankOneGeneratorTrusted"] = h.rankOneGeneratorTrusted;
    out["realComponents"] = h.realComponents;
    out["signMatch"] = h.signMatch;
    out["Bq"] = to_string(h.Bq);
    out["sameBadPrimes"] = h.sameBadPrimes;
    return out;
}

Json check_heights(RunConfig const &cfg)
{
    auto const pair = pair_of(cfg);
    EdsSequence const B(pair.E(), pair.Q(), cfg.N);
    EdsSequence const b = companion_eds(pair, cfg.N);
    auto const hE = estimate_height(B, cfg.heightLo, cfg.heightHi);
    auto const hEp = estimate_height(b, cfg.heightLo, cfg.heightHi);
    auto const ratio = check_height_isogeny_ratio(hE, hEp, pair.q());
    auto const naive = estimate_height_doubling(pair.E(), pair.Q());
    auto out = result("height-isogeny-ratio", !ratio.pass);
    out["E"] = to_json(hE);
    out["Eprime"] = to_json(hEp);
    out["naiveDoublingE"] = to_json(naive);
    out["ratio"] = fixed(ratio.ratio, 6);
    out["expected"] = pair.q();
    out["tolerance"] = fixed(ratio.tolerance, 3);
    return out;
}

Json check_growth(RunConfig const &cfg)
{
    EdsSequence const B(cfg.curve(), cfg.Q, cfg.N);
    double const h = estimate_height(B, cfg.heightLo, cfg.heightHi).value;
    auto const g = check_primitive_growth(B, h, 1, cfg.N, cfg.growthLo, cfg.growthHi);
    auto out = result("primitive-growth", !g.pass);
    Json rows = Json::array();
    for (auto const &r : g.rows)
        rows.push_back({r.n, fixed(r.ratio, 6)});
    out["window"] = {g.windowLo, g.windowHi};
    out["bound"] = fixed(g.bound, 3);
    out["minRatio"] = fixed(g.minRatio, 6);
    out["argMin"] = g.argMin;
    out["ratios"] = rows;
    return out;
}

Json check_prime_zeta(RunConfig const &cfg)
{
    double const v = prime_zeta2_partial(cfg.zetaBound);
    auto out = result("prime-zeta-tail", !(v < 0.453));
    out["bound"] = cfg.zetaBound;
    out["value"] = fixed(v, 9);
    return out;
}

Json sets_build(RunConfig const &cfg, SetBuilder &sb, std::string *fragmentsCsv)
{
    auto const fam = sb.assemble();
    auto entries = [](IndexSetU const &V, std::size_t count) {
        Json a = Json::array();
        for (std::size_t i = 0; i < std::min(count, V.entries().size()); ++i) {
            auto const &e = V.entries()[i];
            a.push_back({{"i", e.i}, {"l", e.l}, {"y", to_decimal(e.y, 15)}, {"exactVerified", e.exactVerified}});
        }
        return a;
    };
    auto fragment = [](Fragment const &f) {
        Json members = Json::array();
        for (auto const &e : f.members)
            members.push_back({{"prime", to_string(e.prime)},
                               {"index", e.index},
                               {"clause", e.clause},
                               {"exponent", e.exponent}});
        Json unknown = Json::array();
        for (auto const &[n, why] : f.unknown)
            unknown.push_back({{"index", n}, {"reason", why}});
        return Json{{"members", members}, {"unknown", unknown}, {"partialIndices", f.partialIndices}};
    };
    Json out = {{"anchor", "set-construction"},
                {"mode", to_string(cfg.sets.mode)},
                {"schedule", cfg.sets.schedule.name()},
                {"bounds",
                 {{"count", cfg.sets.count},
                  {"searchBound", cfg.sets.searchBound},
                  {"termBound", cfg.sets.termBound},
                  {"fragmentBound", cfg.sets.fragmentBound}}},
                {"L", strings(sb.constants().L)},
                {"b", sb.constants().b},
                {"U", entries(sb.U(), cfg.sets.count)},
                {"S1", fragment(fam.S1)},
                {"S2", fragment(fam.S2)},
                {"T1", fragment(fam.T1)},
                {"T2", fragment(fam.T2)},
                {"venn",
                 {{"S1capS2", strings(fam.venn.S1capS2)},
                  {"T2capT1", strings(fam.venn.T2capT1)},
                  {"T2capS2", strings(fam.venn.T2capS2)},
                  {"T2capS1", strings(fam.venn.T2capS1)},
                  {"T1capS1", strings(fam.venn.T1capS1)},
                  {"notGood", strings(fam.venn.notGood)},
                  {"ok", fam.venn.ok()}}}};
    if (sb.Uprime())
        out["Uprime"] = entries(*sb.Uprime(), cfg.sets.count);
    if (fragmentsCsv) {
        std::ostringstream os;
        os << "set,prime,index,exponent,clause\n";
        for (auto const *f : {&fam.S1, &fam.S2, &fam.T1, &fam.T2})
            for (auto const &e : f->members)
                os << f->name << ',' << e.prime << ',' << e.index << ',' << e.exponent << ",\"" << e.clause
                   << "\"\n";
        *fragmentsCsv = os.str();
    }
    return out;
}

Json check_set_construction(RunConfig const &cfg, SetBuilder &sb)
{
    Json build = sets_build(cfg, sb);
    bool const vennOk = build["venn"]["ok"].get<bool>();
    bool const exact = cfg.sets.mode == SetMode::Exact;
    std::size_t resolved = 0, unknown = 0, violations = 0;
    for (auto p : primes_up_to(static_cast<std::uint32_t>(cfg.decideBound))) {
        auto const s = sb.decide(p, Family::S).verdict;
        auto const t = sb.decide(p, Family::T).verdict;
        if (s == Verdict::Unknown || t == Verdict::Unknown) {
            ++unknown;
            continue;
        }
        ++resolved;
        bool const inS = s == Verdict::In, inT = t == Verdict::In;
        if (!(inS || inT) || (exact && inS && inT))
            ++violations;
    }
    auto out = result("set-construction", violations + !vennOk, unknown);
    out["build"] = build;
    out["decideBound"] = cfg.decideBound;
    out["resolved"] = resolved;
    return out;
}

Json check_integral_points(RunConfig const &cfg, SetBuilder &sb)
{
    auto const rep = sb.check_EZS(cfg.maxN);
    std::size_t undecided = 0;
    Json rows = Json::array();
    for (auto const &r : rep.rows) {
        undecided += !r.decided;
        Json row = {{"n", r.n}, {"inU", r.inU}, {"inZS", r.inZS}, {"decided", r.decided}, {"reason", r.reason}};
        if (r.witness)
            row["witness"] = to_string(*r.witness);
        rows.push_back(row);
    }
    auto out = result("integral-points", rep.exceptions.size() > 5, undecided);
    out["N"] = cfg.maxN;
    out["exceptions"] = rep.exceptions;
    out["rows"] = rows;
    return out;
}

Json check_model(RunConfig const &cfg, SetBuilder &sb)
{
    // the rounding argument needs the 1/(10i) schedule whatever the sets use
    auto emb = std::make_shared<RealEmbedding const>(sb.embedding());
    IndexRules rules{sb.constants().b, cfg.isogeny.q, [&sb](std::uint64_t l) { return sb.in_L(l); }};
    IndexSetU U(emb, rules, ToleranceSchedule::paper(), cfg.sets.searchBound);
    U.ensure_count(cfg.modelCount);
    auto const r = model_check(U);
    auto out = result("model-arithmetic", r.disagreements + r.deviationViolations + r.mulDisagreements);
    Json l = Json::array();
    for (auto const &e : U.entries())
        l.push_back(e.l);
    out["U"] = l;
    out["schedule"] = "paper";
    out["addChecked"] = r.rows.size();
    out["maxDeviation"] = fixed(r.maxDeviation, 6);
    out["mulChecked"] = r.mulChecked;
    return out;
}

Json check_decomposition(RunConfig const &cfg, SetBuilder &sb)
{
    if (cfg.sets.mode != SetMode::Exact) {
        auto out = result("decomposition", 0);
        out["skipped"] = "needs exact mode";
        return out;
    }
    std::vector<std::uint32_t> inS, inT;
    for (auto p : primes_up_to(3000)) {
        auto const v = sb.decide(p, Family::S).verdict;
        if (v == Verdict::In)
            inS.push_back(p);
        else if (v == Verdict::Out)
            inT.push_back(p);
    }
    std::size_t violations = 0, trials = 0;
    std::mt19937_64 rng(cfg.rhoSeed);
    Json samples = Json::array();
    for (std::size_t trial = 0; trial < cfg.decompositions && !inS.empty() && !inT.empty(); ++trial, ++trials) {
        Rational x = (rng() & 1) ? 1 : -1;
        for (int k = 0; k < 4; ++k) {
            auto const &pool = (rng() & 1) ? inS : inT;
            Rational const p(pool[rng() % pool.size()]);
            x *= (rng() & 1) ? p : 1 / p;
        }
        x.canonicalize();
        auto const d = sb.decompose(x);
        bool bad = !d.ok || d.s * d.t != x || d.s <= 0;
        if (d.ok) {
            for (auto const &[p, v] : d.primes) {
                bool const inSpart = valuation(d.s.get_num(), p) + valuation(d.s.get_den(), p) > 0;
                bad = bad || inSpart != (v == Verdict::In);
            }
            auto const again = sb.decompose(d.s), other = sb.decompose(d.t), neg = sb.decompose(-x);
            bad = bad || again.s != d.s || again.t != 1 || other.s != 1 || other.t != d.t || neg.s != d.s ||
                  neg.t != -d.t;
        }
        violations += bad;
        if (trial < 5)
            samples.push_back(to_json(d));
    }
    auto out = result("decomposition", violations);
    out["trials"] = trials;
    out["samples"] = samples;
    return out;
}

Json report_all(RunConfig const &cfg)
{
    SetBuilder sb(cfg.curve(), cfg.Q, cfg.sets);
    Json checks = Json::object();
    auto put = [&](Json j) {
        std::string const anchor = j["anchor"].get<std::string>();
        checks[anchor] = std::move(j);
    };
    put(check_eds_fixtures(cfg));
    put(check_divisibility_law(cfg));
    put(check_rank_law(cfg));
    put(check_descent_map(cfg));
    put(check_ord_chain(cfg));
    put(check_ord_addition(cfg));
    put(check_primitive_lift(cfg));
    put(check_two_divisors(cfg));
    put(check_hypotheses(cfg));
    put(check_heights(cfg));
    put(check_growth(cfg));
    put(check_prime_zeta(cfg));
    put(check_set_construction(cfg, sb));
    put(check_integral_points(cfg, sb));
    put(check_model(cfg, sb));
    put(check_decomposition(cfg, sb));
    std::size_t violations = 0, unknown = 0;
    for (auto const &[k, v] : checks.items()) {
        violations += v["violations"].get<std::size_t>();
        unknown += v["unknown"].get<std::size_t>();
    }
    return {{"specVersion", kSchemaVersion},
            {"config", to_json(cfg)},
            {"checks", checks},
            {"violations", violations},
            {"unknown", unknown},
            {"pass", violations == 0}};
}

std::string eds_table(RunConfig const &cfg, std::size_t maxN, bool includeB)
{
    EdsSequence const seq(cfg.curve(), cfg.Q, maxN);
    EdsCsvOptions opts;
    opts.includeB = includeB;
    opts.factorUpTo = std::min<std::size_t>(maxN, 40);
    opts.factor = cfg.certificate_options();
    return eds_csv(seq, maxN, opts);
}

} // namespace edsd
