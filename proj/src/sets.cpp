#include "edsd/sets.hpp"

#include <algorithm>

#include "edsd/modp.hpp"

namespace edsd {

namespace {

std::uint64_t next_prime_after(std::uint64_t n)
{
    do
        ++n;
    while (!is_prime_u64(n));
    return n;
}

Real to_real(Rational const &v)
{
    return Real(v.get_num_mpz_t()) / Real(v.get_den_mpz_t());
}

Verdict either(Verdict a, Verdict b)
{
    if (a == Verdict::In || b == Verdict::In)
        return Verdict::In;
    if (a == Verdict::Out && b == Verdict::Out)
        return Verdict::Out;
    return Verdict::Unknown;
}

Verdict negate(Verdict v)
{
    if (v == Verdict::Unknown)
        return v;
    return v == Verdict::In ? Verdict::Out : Verdict::In;
}

std::string label(IndexSetU const &V, IndexSetU const *U)
{
    return &V == U ? "U" : "U'";
}

} // namespace

Rational ToleranceSchedule::tolerance(std::size_t i) const
{
    if (i == 0)
        throw std::invalid_argument("tolerance index starts at 1");
    if (kind == Schedule::Relaxed)
        return c;
    Rational t = c / Rational(static_cast<unsigned long>(i));
    t.canonicalize();
    return t;
}

std::string ToleranceSchedule::name() const
{
    switch (kind) {
    case Schedule::Paper: return "paper";
    case Schedule::Relaxed: return "relaxed";
    case Schedule::Custom: return "custom";
    }
    return "?";
}

SearchExhausted::SearchExhausted(std::size_t index, std::uint64_t bound)
    : std::runtime_error("no admissible prime <= " + std::to_string(bound) + " for index " + std::to_string(index)),
      index(index), bound(bound)
{
}

IndexSetU::IndexSetU(std::shared_ptr<RealEmbedding const> emb, IndexRules rules, ToleranceSchedule schedule,
                     std::uint64_t searchBound, IndexSetU *excluded)
    : emb_(std::move(emb)), rules_(std::move(rules)), schedule_(schedule), searchBound_(searchBound),
      excluded_(excluded)
{
}

bool IndexSetU::admissible(std::uint64_t l, std::uint64_t scanLimit)
{
    if (l <= rules_.floor || l == rules_.q)
        return false;
    if (rules_.inL && rules_.inL(l))
        return false;
    if (excluded_) {
        auto const inOther = excluded_->contains(l, scanLimit);
        if (!inOther)
            throw std::logic_error("excluded index set could not be scanned");
        if (*inOther)
            return false;
    }
    return true;
}

void IndexSetU::step(std::uint64_t scanLimit)
{
    std::uint64_t const l = next_prime_after(scanned_);
    if (l > scanLimit)
        throw std::logic_error("index scan beyond limit");
    if (admissible(l, scanLimit)) {
        std::size_t const i = entries_.size() + 1;
        auto const approx = approx_y_of_multiple(*emb_, l);
        if (!approx.unbounded) {
            ScopedPrecision guard(emb_->precision);
            Rational const tol = schedule_.tolerance(i);
            Real const gap = abs(approx.y - Real(static_cast<unsigned long>(i)));
            if (abs(gap - to_real(tol)) <= approx.errorBound)
                throw std::runtime_error("tolerance test for l = " + std::to_string(l) + " within error bound");
            bool const hit = gap < to_real(tol);
            bool verified = false;
            if (l <= 50) {
                auto const P = scalar_mul(emb_->curve, emb_->point, static_cast<long>(l));
                Rational diff = P.y() - Rational(static_cast<unsigned long>(i));
                if ((abs(diff) < tol) != hit)
                    throw std::logic_error("approximate and exact tolerance tests disagree at l = " +
                                           std::to_string(l));
                verified = true;
            }
            if (hit)
                entries_.push_back({i, l, approx.y, verified});
        }
    }
    scanned_ = l;
}

void IndexSetU::ensure_count(std::size_t count)
{
    while (entries_.size() < count) {
        if (next_prime_after(scanned_) > searchBound_)
            throw SearchExhausted(entries_.size() + 1, searchBound_);
        step(searchBound_);
    }
}

std::optional<bool> IndexSetU::contains(std::uint64_t l, std::uint64_t scanLimit)
{
    if (l > scanned_) {
        if (l > scanLimit)
            return std::nullopt;
        while (scanned_ < l)
            step(std::max(scanLimit, l));
    }
    return std::any_of(entries_.begin(), entries_.end(), [&](UEntry const &e) { return e.l == l; });
}

std::string to_string(SetMode m)
{
    return m == SetMode::Exact ? "exact" : "complementary";
}

std::string to_string(Family f)
{
    switch (f) {
    case Family::S: return "S";
    case Family::T: return "T";
    case Family::S1: return "S1";
    case Family::S2: return "S2";
    case Family::T1: return "T1";
    case Family::T2: return "T2";
    }
    return "?";
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::In: return "In";
    case Verdict::Out: return "Out";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

Family parse_family(std::string const &s)
{
    for (auto f : {Family::S, Family::T, Family::S1, Family::S2, Family::T1, Family::T2})
        if (to_string(f) == s)
            return f;
    throw std::invalid_argument("unknown family: " + s);
}

SetMode parse_mode(std::string const &s)
{
    if (s == "exact")
        return SetMode::Exact;
    if (s == "complementary")
        return SetMode::Complementary;
    throw std::invalid_argument("unknown mode: " + s);
}

bool Fragment::contains(Integer const &p) const
{
    return std::binary_search(members.begin(), members.end(), FragmentEntry{p, 0, {}, 0},
                              [](FragmentEntry const &a, FragmentEntry const &b) { return a.prime < b.prime; });
}

bool VennReport::ok() const
{
    return S1capS2.empty() && T2capT1.empty() && T2capS2.empty() && notGood.empty();
}

SetBuilder::SetBuilder(CurveSpec curve, RatPoint Q, SetConfig config)
    : config_(std::move(config)), seq_(curve, Q, config_.termBound),
      constants_(curve_constants(seq_, config_.termBound, config_.termBound)),
      emb_(std::make_shared<RealEmbedding const>(real_embedding(curve, Q, config_.precision)))
{
    IndexRules rules{constants_.b, config_.q, [this](std::uint64_t l) { return in_L(l); }};
    U_ = std::make_unique<IndexSetU>(emb_, rules, config_.schedule, config_.searchBound);
    U_->ensure_count(config_.count);
    if (config_.mode == SetMode::Exact) {
        Uprime_ = std::make_unique<IndexSetU>(emb_, rules, config_.schedule, config_.searchBound, U_.get());
        Uprime_->ensure_count(config_.count);
    }
}

// Beyond the computed terms L is taken to be empty.
bool SetBuilder::in_L(std::uint64_t l) const
{
    return l >= 1 && l <= seq_.size() && seq_.B(l) == 1;
}

std::optional<std::uint64_t> SetBuilder::rank(Integer const &p)
{
    auto it = rankCache_.find(p);
    if (it != rankCache_.end())
        return it->second;
    std::optional<std::uint64_t> r;
    if (fits_u64(p) && p < (Integer(1) << 32))
        r = point_order_mod_p(seq_.curve(), seq_.point(), to_u64(p));
    else if (auto const n = rank_of_apparition(seq_, p))
        r = *n;
    rankCache_[p] = r;
    return r;
}

std::optional<int> SetBuilder::position(std::size_t n, Integer const &p, std::string &blocking)
{
    if (n > seq_.size()) {
        blocking = "B_" + std::to_string(n) + " beyond term bound " + std::to_string(seq_.size());
        return std::nullopt;
    }
    auto key = std::make_pair(n, p);
    if (auto it = positionCache_.find(key); it != positionCache_.end()) {
        if (!it->second)
            blocking = "certificate budget exhausted on B_" + std::to_string(n) + "*";
        return it->second;
    }
    Integer R = good_part(seq_.curve(), seq_.primitive_part(n));
    if (R % p != 0)
        throw std::logic_error("p does not divide the primitive part at its rank");
    strip(R, p);
    for (auto sp : small_primes()) {
        if (p <= sp)
            break;
        if (mpz_divisible_ui_p(R.get_mpz_t(), sp))
            strip(R, Integer(sp));
    }
    Budget budget(config_.certificateBudget);
    std::optional<int> pos;
    if (R == 1) {
        pos = 1;
    } else if (p <= small_primes().back()) {
        // every prime left in R exceeds p
        if (auto const prime = is_prime_budgeted(R, budget)) {
            if (*prime)
                pos = 2;
            else if (!mpz_perfect_power_p(R.get_mpz_t()))
                pos = 3;
            else
                pos = perfect_prime_power(R) ? 2 : 3;
        }
    } else {
        auto const rep = factor(R, budget, config_.factor);
        std::size_t above = 0;
        for (auto const &f : rep.knownFactors)
            above += f.prime > p;
        if (rep.status == FactorStatus::Complete || above >= 2)
            pos = above == 0 ? 1 : above == 1 ? 2 : 3;
    }
    if (!pos)
        blocking = "certificate budget exhausted on B_" + std::to_string(n) + "*";
    spent_ += budget.spent();
    positionCache_[key] = pos;
    return pos;
}

Verdict SetBuilder::index_member(IndexSetU &V, std::uint64_t l, Witness &w, std::string &blocking)
{
    auto const in = V.contains(l, config_.scanLimit);
    if (!in) {
        blocking = "index scan for " + std::to_string(l) + " beyond limit";
        return Verdict::Unknown;
    }
    w.steps.push_back(std::to_string(l) + (*in ? " in " : " not in ") + label(V, U_.get()));
    return *in ? Verdict::In : Verdict::Out;
}

std::optional<std::string> SetBuilder::clause_for(std::uint64_t n, IndexSetU &V, Witness &w,
                                                  std::string &blocking, bool &unknown)
{
    unknown = false;
    auto const fac = factor_u64(n);
    unsigned omega = 0;
    for (auto const &[l, e] : fac)
        omega += e;
    std::string const name = label(V, U_.get());
    if (omega == 1) {
        if (in_L(n)) {
            w.clause = "n_p in L";
            return std::nullopt;
        }
        auto const m = index_member(V, n, w, blocking);
        unknown = m == Verdict::Unknown;
        if (m != Verdict::Out) {
            if (m == Verdict::In)
                w.clause = "n_p in " + name;
            return std::nullopt;
        }
        return "l prime not in " + name;
    }
    if (omega == 2) {
        std::uint64_t const a = fac.back().first, b = fac.front().first;
        auto const ma = index_member(V, a, w, blocking);
        auto const mb = a == b ? ma : index_member(V, b, w, blocking);
        if (ma == Verdict::Unknown || mb == Verdict::Unknown) {
            unknown = true;
            return std::nullopt;
        }
        if (ma == Verdict::In && mb == Verdict::In)
            return "{l_i l_j}, both in " + name;
        if ((in_L(a) && mb == Verdict::In) || (in_L(b) && ma == Verdict::In))
            return "{l l_i}, l in L, l_i in " + name;
    }
    w.clause = "n_p matches no clause";
    return std::nullopt;
}

Verdict SetBuilder::clauses(Integer const &p, std::uint64_t n, IndexSetU &V, int primePos, int productPos,
                            Witness &w, std::string &blocking)
{
    bool unknown = false;
    auto const clause = clause_for(n, V, w, blocking, unknown);
    if (unknown)
        return Verdict::Unknown;
    if (!clause)
        return Verdict::Out;
    bool const primeIndex = clause->front() == 'l';
    int const want = primeIndex ? primePos : productPos;
    auto const pos = position(n, p, blocking);
    if (!pos)
        return Verdict::Unknown;
    w.clause = (want == 1 ? "p_" : "p'_") + (primeIndex ? "l, " + *clause : *clause);
    w.steps.push_back("p is " + std::string(*pos == 1 ? "the largest" : *pos == 2 ? "the second largest"
                                                                                 : "below the second largest") +
                      " good primitive prime of B_" + std::to_string(n));
    return *pos == want ? Verdict::In : Verdict::Out;
}

Verdict SetBuilder::decide_raw(Integer const &p, Family family, Witness &w, std::string &blocking)
{
    bool const exact = config_.mode == SetMode::Exact;
    if (seq_.curve().is_bad(p)) {
        w.clause = "bad reduction";
        switch (family) {
        case Family::S: return exact ? Verdict::Out : Verdict::In;
        case Family::T: return Verdict::In;
        default: return Verdict::Out;
        }
    }
    auto sub = [&](Family f) {
        auto const v = decide_raw(p, f, w, blocking);
        w.steps.push_back(to_string(f) + ": " + to_string(v));
        return v;
    };
    if (family == Family::S)
        return exact ? either(sub(Family::S1), sub(Family::T2)) : negate(sub(Family::S2));
    if (family == Family::T)
        return exact ? negate(sub(Family::S)) : negate(sub(Family::T2));

    if (!w.rank) {
        auto const r = rank(p);
        if (!r) {
            blocking = "rank of apparition beyond term bound";
            return Verdict::Unknown;
        }
        w.rank = *r;
        w.rankFactors = factor_u64(*r);
    }
    std::uint64_t const n = *w.rank;
    switch (family) {
    case Family::S1: return index_member(*U_, n, w, blocking);
    case Family::T1: return index_member(exact ? *Uprime_ : *U_, n, w, blocking);
    case Family::S2: return clauses(p, n, *U_, 1, 1, w, blocking);
    case Family::T2: return exact ? clauses(p, n, *Uprime_, 2, 1, w, blocking) : clauses(p, n, *U_, 2, 2, w, blocking);
    default: break;
    }
    throw std::logic_error("unreachable family");
}

MembershipVerdict SetBuilder::decide(Integer const &p, Family family)
{
    if (p < 2 || !is_prime(p))
        throw std::invalid_argument("decide needs a prime, got " + to_string(p));
    MembershipVerdict out;
    out.prime = p;
    out.family = family;
    std::uint64_t const before = spent_;
    out.verdict = decide_raw(p, family, out.witness, out.blocking);
    out.budgetSpent = spent_ - before;
    if (out.verdict != Verdict::Unknown)
        out.blocking.clear();
    return out;
}

Fragment SetBuilder::term_fragment(std::string name, IndexSetU &V)
{
    Fragment frag;
    frag.name = std::move(name);
    auto const &all = V.entries();
    for (std::size_t idx = 0; idx < std::min(all.size(), config_.count); ++idx) {
        auto const &e = all[idx];
        Integer const B = e.l <= seq_.size() ? seq_.B(e.l)
                                             : denominators(scalar_mul(seq_.curve(), seq_.point(),
                                                                       static_cast<long>(e.l)))
                                                   .B;
        // rho steps on huge terms are priced per 1024 bits
        std::uint64_t const blocks = mpz_sizeinbase(B.get_mpz_t(), 2) / 1024 + 1;
        Budget budget(std::max<std::uint64_t>(config_.certificateBudget / blocks, 1000));
        auto const rep = factor(B, budget, config_.factor);
        for (auto const &f : rep.knownFactors) {
            if (seq_.curve().is_bad(f.prime))
                throw std::logic_error("bad prime divides B_l for an index prime");
            frag.members.push_back({f.prime, e.l, "prime divisor of B_l, l in " + label(V, U_.get()), f.exponent});
        }
        if (rep.status != FactorStatus::Complete)
            frag.partialIndices.push_back(e.l);
    }
    std::sort(frag.members.begin(), frag.members.end(),
              [](FragmentEntry const &a, FragmentEntry const &b) { return a.prime < b.prime; });
    return frag;
}

Fragment SetBuilder::clause_fragment(std::string name, IndexSetU &V, bool secondForPrime, bool secondForProduct)
{
    Fragment frag;
    frag.name = std::move(name);
    std::size_t const bound = std::min(config_.fragmentBound, seq_.size());
    std::string const vname = label(V, U_.get());
    auto add = [&](std::size_t n, bool second, std::string clause) {
        auto it = primitiveCache_.find(n);
        if (it == primitiveCache_.end())
        {
            FactorOptions opts = config_.factor;
            opts.budget = config_.certificateBudget;
            it = primitiveCache_.emplace(n, primitive_primes(seq_, n, opts)).first;
        }
        auto const &pp = it->second;
        if (!pp.resolved) {
            frag.unknown.push_back({n, "B_" + std::to_string(n) + "* not fully factored"});
            return;
        }
        auto const &chosen = second ? pp.secondLargestGood : pp.largestGood;
        if (!chosen)
            return;
        unsigned e = 0;
        for (auto const &f : pp.factors)
            if (f.prime == *chosen)
                e = f.exponent;
        frag.members.push_back({*chosen, n, std::move(clause), e});
    };
    std::string const tag = secondForPrime ? "p'_l" : "p_l";
    std::string const ptag = secondForProduct ? "p'_" : "p_";
    for (auto l : primes_up_to(static_cast<std::uint32_t>(bound))) {
        if (in_L(l) || *V.contains(l, config_.scanLimit))
            continue;
        add(l, secondForPrime, tag + ", l prime not in " + vname);
    }
    auto const &entries = V.entries();
    for (std::size_t i = 0; i < std::min(entries.size(), config_.count); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            std::uint64_t const n = entries[i].l * entries[j].l;
            if (n <= bound)
                add(n, secondForProduct, ptag + "{l_i l_j}, both in " + vname);
        }
        for (auto l : primes_up_to(static_cast<std::uint32_t>(bound)))
            if (in_L(l) && l * entries[i].l <= bound)
                add(l * entries[i].l, secondForProduct, ptag + "{l l_i}, l in L, l_i in " + vname);
    }
    std::sort(frag.members.begin(), frag.members.end(),
              [](FragmentEntry const &a, FragmentEntry const &b) { return a.prime < b.prime; });
    return frag;
}

Fragment SetBuilder::build_S1()
{
    return term_fragment("S1", *U_);
}

Fragment SetBuilder::build_T1()
{
    if (config_.mode == SetMode::Exact)
        return term_fragment("T1", *Uprime_);
    auto frag = build_S1();
    frag.name = "T1";
    return frag;
}

Fragment SetBuilder::build_S2()
{
    return clause_fragment("S2", *U_, false, false);
}

Fragment SetBuilder::build_T2()
{
    if (config_.mode == SetMode::Exact)
        return clause_fragment("T2", *Uprime_, true, false);
    return clause_fragment("T2", *U_, true, true);
}

PrimeSetFamily SetBuilder::assemble()
{
    PrimeSetFamily fam;
    fam.mode = config_.mode;
    fam.S1 = build_S1();
    fam.S2 = build_S2();
    fam.T1 = build_T1();
    fam.T2 = build_T2();
    auto meet = [](Fragment const &a, Fragment const &b) {
        std::vector<Integer> out;
        for (auto const &e : a.members)
            if (b.contains(e.prime) && (out.empty() || out.back() != e.prime))
                out.push_back(e.prime);
        return out;
    };
    fam.venn.S1capS2 = meet(fam.S1, fam.S2);
    fam.venn.T2capT1 = meet(fam.T2, fam.T1);
    fam.venn.T2capS2 = meet(fam.T2, fam.S2);
    fam.venn.T2capS1 = meet(fam.T2, fam.S1);
    if (config_.mode == SetMode::Exact)
        fam.venn.T1capS1 = meet(fam.T1, fam.S1);
    for (auto const *f : {&fam.S1, &fam.S2, &fam.T1, &fam.T2})
        for (auto const &e : f->members)
            if (seq_.curve().is_bad(e.prime))
                fam.venn.notGood.push_back(e.prime);
    return fam;
}

EzsReport SetBuilder::check_EZS(std::size_t N)
{
    if (N > seq_.size())
        throw std::out_of_range("check_EZS beyond term bound");
    bool const exact = config_.mode == SetMode::Exact;
    EzsReport report;
    for (std::size_t n = 1; n <= N; ++n) {
        EzsRow row;
        row.n = n;
        row.inU = *U_->contains(n, config_.scanLimit);
        Integer const &B = seq_.B(n);
        auto try_witness = [&](Integer const &p) {
            if (decide(p, Family::S).verdict != Verdict::Out)
                return false;
            row.witness = p;
            row.decided = true;
            return true;
        };
        for (auto const &p : seq_.curve().bad_primes())
            if (B % p == 0 && try_witness(p)) {
                row.reason = "bad prime divides B_n";
                break;
            }
        if (!row.decided && row.inU) {
            // every prime of B_n has rank n: B_1 = 1 and n is prime
            row.decided = row.inZS = true;
            row.reason = "every prime of B_n has rank n in U";
        }
        // primes of B_d* all have rank d; for d outside U at most one of them
        // can lie in S (exact mode), exactly the clause prime lies outside S
        // (complementary mode)
        for (std::size_t d = 2; d <= n && !row.decided; ++d) {
            if (n % d != 0 || *U_->contains(d, config_.scanLimit))
                continue;
            Integer const G = good_part(seq_.curve(), seq_.primitive_part(d));
            if (G == 1)
                continue;
            Budget budget(config_.certificateBudget);
            auto const rep = factor(G, budget, config_.factor);
            for (auto const &f : rep.knownFactors)
                if (try_witness(f.prime)) {
                    row.reason = "prime of B_" + std::to_string(d) + "* outside S";
                    break;
                }
            if (row.decided)
                break;
            Witness w;
            std::string blocking;
            bool unknown = false;
            auto const clause = clause_for(d, exact ? *Uprime_ : *U_, w, blocking, unknown);
            if (unknown)
                continue;
            std::string const tag = "B_" + std::to_string(d) + "*";
            if (exact && !clause) {
                row.decided = true;
                row.reason = "no prime of " + tag + " can lie in S";
            } else if (exact) {
                Budget cb(config_.certificateBudget);
                if (classify_value(G, cb).kind == PrimitiveClass::AtLeastTwoPrimes) {
                    row.decided = true;
                    row.reason = tag + " has two good primes, at most one lies in S";
                }
            } else if (clause) {
                row.decided = true;
                row.reason = "largest good prime of " + tag + " lies in S2";
            }
        }
        if (!row.decided && B == 1) {
            row.decided = row.inZS = true;
            row.reason = "B_n = 1, nQ integral";
        }
        if (!row.decided && exact) {
            row.reason = "no witness within budget";
        } else if (!row.decided) {
            // complementary mode: every prime of B_n avoids S2
            row.decided = row.inZS = true;
            row.reason = "no prime of B_n lies in S2";
        }
        if (!row.decided || row.inZS != row.inU)
            report.exceptions.push_back(n);
        report.rows.push_back(std::move(row));
    }
    return report;
}

Decomposition SetBuilder::decompose(Rational const &x)
{
    if (config_.mode != SetMode::Exact)
        throw std::invalid_argument("decomposition needs exactly complementary sets");
    if (x == 0)
        throw std::invalid_argument("cannot decompose zero");
    Decomposition out;
    out.x = x;
    out.s = 1;
    Rational s = 1;
    for (int side = 0; side < 2; ++side) {
        Integer const v = side == 0 ? Integer(abs(x.get_num())) : x.get_den();
        if (v == 1)
            continue;
        auto const rep = factor(v, config_.factor);
        if (rep.status != FactorStatus::Complete) {
            out.blocking = rep.cofactor;
            return out;
        }
        for (auto const &f : rep.knownFactors) {
            auto const verdict = decide(f.prime, Family::S).verdict;
            out.primes.push_back({f.prime, verdict});
            if (verdict == Verdict::Unknown) {
                out.blocking = f.prime;
                return out;
            }
            if (verdict == Verdict::In) {
                Integer pe;
                mpz_pow_ui(pe.get_mpz_t(), f.prime.get_mpz_t(), f.exponent);
                s *= side == 0 ? Rational(pe) : Rational(1) / Rational(pe);
            }
        }
    }
    out.s = s;
    out.t = x / s;
    out.ok = true;
    return out;
}

namespace {

Real const &y_of(IndexSetU const &U, std::size_t i)
{
    if (i == 0 || i > U.entries().size())
        throw std::invalid_argument("index " + std::to_string(i) + " outside the built index set");
    return U.entries()[i - 1].y;
}

} // namespace

bool model_add(IndexSetU const &U, std::size_t i, std::size_t j, std::size_t k)
{
    auto const &sc = U.schedule();
    Real const yi = y_of(U, i), yj = y_of(U, j), yk = y_of(U, k);
    if (sc.tolerance(i) + sc.tolerance(j) + sc.tolerance(k) > Rational(3, 10))
        throw std::invalid_argument("schedule too loose for the 3/10 rounding argument");
    ScopedPrecision guard(U.embedding().precision);
    return abs(yi + yj - yk) <= Real(3) / 10;
}

bool model_square(IndexSetU const &U, std::size_t i, std::size_t s)
{
    auto const &sc = U.schedule();
    Real const yi = y_of(U, i), ys = y_of(U, s);
    Rational const ti = sc.tolerance(i);
    Rational const dev = ti * (2 * Rational(static_cast<unsigned long>(i)) + ti) + sc.tolerance(s);
    if (dev >= Rational(1, 2))
        throw std::invalid_argument("schedule too loose for the squaring predicate");
    ScopedPrecision guard(U.embedding().precision);
    return abs(yi * yi - ys) < Real(1) / 2;
}

std::optional<bool> model_mul(IndexSetU const &U, std::size_t i, std::size_t j, std::size_t k)
{
    std::size_t const count = U.entries().size();
    if ((i + j) * (i + j) > count)
        return std::nullopt;
    y_of(U, k);
    auto find = [&](auto pred) -> std::optional<std::size_t> {
        for (std::size_t x = 1; x <= count; ++x)
            if (pred(x))
                return x;
        return std::nullopt;
    };
    auto const a = find([&](std::size_t x) { return model_add(U, i, j, x); });
    auto const c = find([&](std::size_t x) { return model_square(U, i, x); });
    auto const d = find([&](std::size_t x) { return model_square(U, j, x); });
    if (!a || !c || !d)
        return false;
    auto const b = find([&](std::size_t x) { return model_square(U, *a, x); });
    auto const m = find([&](std::size_t x) { return model_add(U, k, k, x); });
    if (!b || !m)
        return false;
    // m + c + d = b
    for (std::size_t e = 1; e <= count; ++e)
        if (model_add(U, *m, *c, e) && model_add(U, e, *d, *b))
            return true;
    return false;
}

ModelReport model_check(IndexSetU const &U)
{
    ModelReport r;
    std::size_t const count = U.entries().size();
    ScopedPrecision guard(U.embedding().precision);
    for (std::size_t i = 1; i <= count; ++i)
        for (std::size_t j = 1; j <= count; ++j)
            for (std::size_t k = 1; k <= count; ++k) {
                ModelAddRow row{i, j, k, model_add(U, i, j, k), 0};
                Real const dev = abs((y_of(U, i) + y_of(U, j) - y_of(U, k)) -
                                     Real(static_cast<long>(i + j) - static_cast<long>(k)));
                row.deviation = dev.convert_to<double>();
                r.maxDeviation = std::max(r.maxDeviation, row.deviation);
                if (dev > Real(3) / 10)
                    ++r.deviationViolations;
                if (row.predicate != (i + j == k))
                    ++r.disagreements;
                r.rows.push_back(row);
                if (auto const mul = model_mul(U, i, j, k)) {
                    ++r.mulChecked;
                    if (*mul != (i * j == k))
                        ++r.mulDisagreements;
                }
            }
    return r;
}

} // namespace edsd
