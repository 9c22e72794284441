#include <doctest.h>

#include <random>

#include "edsd/modp.hpp"
#include "edsd/sets.hpp"

using namespace edsd;

namespace {

CurveSpec curveE() { return CurveSpec({0, 0, 0, 0, -4}); }
RatPoint pointQ() { return RatPoint(Rational(2), Rational(2)); }

SetBuilder &exact_builder()
{
    static SetBuilder sb(curveE(), pointQ(), SetConfig{});
    return sb;
}

SetBuilder &complementary_builder()
{
    static SetBuilder sb = [] {
        SetConfig cfg;
        cfg.mode = SetMode::Complementary;
        return SetBuilder(curveE(), pointQ(), cfg);
    }();
    return sb;
}

std::vector<std::uint64_t> primes_of(IndexSetU const &U, std::size_t count)
{
    std::vector<std::uint64_t> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back(U.entries().at(i).l);
    return out;
}

IndexSetU bare_index_set(ToleranceSchedule sc, std::uint64_t bound)
{
    auto emb = std::make_shared<RealEmbedding const>(real_embedding(curveE(), pointQ()));
    return IndexSetU(emb, IndexRules{4, 3, [](std::uint64_t l) { return l == 2; }}, sc, bound);
}

} // namespace

TEST_CASE("tolerance schedules")
{
    CHECK(ToleranceSchedule::paper().tolerance(3) == Rational(1, 30));
    CHECK(ToleranceSchedule::relaxed().tolerance(7) == Rational(1, 2));
    CHECK(ToleranceSchedule::custom(Rational(1, 4)).tolerance(2) == Rational(1, 8));
    CHECK(ToleranceSchedule::paper().name() == "paper");
    CHECK_THROWS(ToleranceSchedule::paper().tolerance(0));
}

TEST_CASE("index sets of the example")
{
    auto &sb = exact_builder();
    CHECK(primes_of(sb.U(), 5) == std::vector<std::uint64_t>{61, 173, 199, 251, 277});
    CHECK(primes_of(*sb.Uprime(), 5) == std::vector<std::uint64_t>{181, 431, 569, 853, 1051});
    for (IndexSetU const *V : {static_cast<IndexSetU const *>(&sb.U()), static_cast<IndexSetU const *>(sb.Uprime())}) {
        std::uint64_t prev = 0;
        for (auto const &e : V->entries()) {
            CHECK(e.l > prev);
            CHECK(e.l > sb.constants().b);
            CHECK(e.l != 3);
            CHECK_FALSE(sb.in_L(e.l));
            ScopedPrecision guard(50);
            CHECK(abs(e.y - Real(static_cast<unsigned long>(e.i))) < Real(0.5));
            prev = e.l;
        }
    }
    for (auto const &e : sb.Uprime()->entries())
        CHECK_FALSE(*sb.U().contains(e.l, 100000));
    CHECK(*sb.U().contains(173, 1000));
    CHECK_FALSE(*sb.U().contains(181, 1000));
    CHECK_FALSE(sb.U().contains(2000000, 1000000).has_value());
}

TEST_CASE("1/(10i) schedule and exhaustion")
{
    auto U = bare_index_set(ToleranceSchedule::paper(), 100000);
    U.ensure_count(2);
    CHECK(primes_of(U, 2) == std::vector<std::uint64_t>{293, 2521});

    auto tight = bare_index_set(ToleranceSchedule::paper(), 200);
    try {
        tight.ensure_count(1);
        FAIL("expected SearchExhausted");
    } catch (SearchExhausted const &e) {
        CHECK(e.index == 1);
        CHECK(e.bound == 200);
    }

    // a loose constant admits small primes, which get checked exactly
    auto loose = bare_index_set(ToleranceSchedule::relaxed(Rational(1000)), 1000);
    loose.ensure_count(2);
    CHECK(loose.entries()[0].l == 5);
    CHECK(loose.entries()[0].exactVerified);
}

TEST_CASE("membership decisions")
{
    auto &sb = exact_builder();
    auto const v5 = sb.decide(5, Family::S2);
    REQUIRE(v5.witness.rank);
    CHECK(*v5.witness.rank == 6);
    CHECK(v5.verdict == Verdict::Out);
    CHECK(v5.witness.clause == "n_p matches no clause");

    auto const v11 = sb.decide(11, Family::S2);
    CHECK(*v11.witness.rank == 4);
    CHECK(v11.verdict == Verdict::Out);

    for (int p : {2, 3})
        for (auto f : {Family::S1, Family::S2, Family::T1, Family::T2})
            CHECK(sb.decide(p, f).verdict == Verdict::Out);

    auto const v61 = sb.decide(61, Family::S2);
    CHECK(v61.verdict == Verdict::In);
    CHECK(*v61.witness.rank == 5);
    CHECK(sb.decide(61, Family::T2).verdict == Verdict::Out);
    CHECK(sb.decide(61, Family::S).verdict == Verdict::Out);
    CHECK(sb.decide(61, Family::T).verdict == Verdict::In);

    // B_7 = 13 * 41 * 83
    auto const v41 = sb.decide(41, Family::T2);
    CHECK(*v41.witness.rank == 7);
    CHECK(v41.verdict == Verdict::In);
    CHECK(sb.decide(41, Family::S).verdict == Verdict::In);

    CHECK_THROWS_AS(sb.decide(15, Family::S), std::invalid_argument);
}

TEST_CASE("S1 verdicts agree with divisibility of index terms")
{
    auto &sb = exact_builder();
    for (auto p : primes_up_to(3000)) {
        if (p <= 3)
            continue;
        auto const v = sb.decide(p, Family::S1);
        REQUIRE(v.verdict != Verdict::Unknown);
        ReducedCurve const R(sb.sequence().curve(), p);
        auto const Qp = reduce_point(sb.sequence().curve(), sb.sequence().point(), p);
        bool divides = false;
        for (auto const &e : sb.U().entries())
            if (e.l < 4000 && R.mul(Qp, e.l).infinity)
                divides = true;
        CAPTURE(p);
        CHECK((v.verdict == Verdict::In) == divides);
    }
}

TEST_CASE("fragments and Venn relations")
{
    auto &sb = exact_builder();
    auto const fam = sb.assemble();
    CHECK(fam.venn.ok());
    CHECK(fam.venn.S1capS2.empty());
    CHECK(fam.venn.T2capT1.empty());
    CHECK(fam.venn.T2capS2.empty());
    CHECK(fam.venn.T1capS1.empty());

    // p_l for primes l <= 40 outside U; 2 is in L and contributes nothing
    std::vector<Integer> s2;
    for (auto const &e : fam.S2.members)
        s2.push_back(e.prime);
    CHECK(std::find(s2.begin(), s2.end(), Integer(61)) != s2.end());
    CHECK(std::find(s2.begin(), s2.end(), Integer(83)) != s2.end());
    for (auto const &e : fam.S2.members)
        CHECK(e.index != 2);

    for (auto const *f : {&fam.S1, &fam.S2, &fam.T1, &fam.T2})
        for (auto const &e : f->members) {
            CHECK_FALSE(sb.sequence().curve().is_bad(e.prime));
            CHECK(sb.decide(e.prime, parse_family(f->name)).verdict == Verdict::In);
        }
    for (auto const &e : fam.S1.members)
        CHECK(*sb.rank(e.prime) == e.index);

    std::vector<Integer> s1;
    for (auto const &e : fam.S1.members)
        s1.push_back(e.prime);
    std::vector<Integer> const expectedS1{853, 5869, 6247, 9817, 9871, 11633, 16619};
    for (auto const &p : expectedS1)
        CHECK(std::find(s1.begin(), s1.end(), p) != s1.end());
}

TEST_CASE("exactly complementary on small primes")
{
    auto &sb = exact_builder();
    std::size_t resolved = 0;
    for (auto p : primes_up_to(2000)) {
        auto const s = sb.decide(p, Family::S).verdict;
        auto const t = sb.decide(p, Family::T).verdict;
        if (s == Verdict::Unknown)
            continue;
        ++resolved;
        CHECK(s != t);
    }
    CHECK(resolved > 250);
}

TEST_CASE("complementary mode")
{
    auto &sb = complementary_builder();
    CHECK(sb.Uprime() == nullptr);
    auto const fam = sb.assemble();
    CHECK(fam.venn.ok());
    CHECK(fam.T1.members.size() == fam.S1.members.size());
    for (auto p : primes_up_to(1500)) {
        auto const s2 = sb.decide(p, Family::S2).verdict;
        auto const t2 = sb.decide(p, Family::T2).verdict;
        CHECK_FALSE((s2 == Verdict::In && t2 == Verdict::In));
        auto const s = sb.decide(p, Family::S).verdict;
        auto const t = sb.decide(p, Family::T).verdict;
        CHECK_FALSE((s == Verdict::Out && t == Verdict::Out));
    }
    CHECK(sb.decide(2, Family::S).verdict == Verdict::In);
    CHECK_THROWS_AS(sb.decompose(Rational(2)), std::invalid_argument);
}

TEST_CASE("integral points over S")
{
    auto &sb = exact_builder();
    auto const rep = sb.check_EZS(40);
    CHECK(rep.exceptions == std::vector<std::size_t>{1, 2});
    REQUIRE(rep.rows.size() == 40);
    for (auto const &row : rep.rows) {
        CAPTURE(row.n);
        CHECK(row.decided);
        CHECK_FALSE(row.inU); // l_1 = 61
    }
    CHECK(rep.rows[0].reason == "B_n = 1, nQ integral");
    CHECK(*rep.rows[4].witness == 61);
    CHECK(*rep.rows[3].witness == 2);
    CHECK_FALSE(rep.rows[22].witness); // B_23 decided by counting
}

TEST_CASE("decomposition")
{
    auto &sb = exact_builder();
    auto const one = sb.decompose(Rational(1));
    CHECK(one.ok);
    CHECK(one.s == 1);
    CHECK(one.t == 1);
    auto const minus = sb.decompose(Rational(-1));
    CHECK(minus.s == 1);
    CHECK(minus.t == -1);
    CHECK_THROWS(sb.decompose(Rational(0)));

    std::vector<std::uint32_t> inS, inT;
    for (auto p : primes_up_to(3000)) {
        auto const v = sb.decide(p, Family::S).verdict;
        if (v == Verdict::In)
            inS.push_back(p);
        else if (v == Verdict::Out)
            inT.push_back(p);
    }
    REQUIRE(!inS.empty());
    REQUIRE(!inT.empty());
    auto const pair = sb.decompose(Rational(inS[0] * inT[0]));
    CHECK(pair.s == inS[0]);
    CHECK(pair.t == inT[0]);

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        Rational x = (rng() & 1) ? 1 : -1;
        for (int k = 0; k < 4; ++k) {
            auto const &pool = (rng() & 1) ? inS : inT;
            Rational const p(pool[rng() % pool.size()]);
            x *= (rng() & 1) ? p : 1 / p;
        }
        x.canonicalize();
        auto const d = sb.decompose(x);
        REQUIRE(d.ok);
        CHECK(d.s * d.t == x);
        CHECK(d.s > 0);
        for (auto const &[p, v] : d.primes) {
            bool const inSpart = valuation(d.s.get_num(), p) + valuation(d.s.get_den(), p) > 0;
            CHECK(inSpart == (v == Verdict::In));
        }
        auto const again = sb.decompose(d.s);
        CHECK(again.s == d.s);
        CHECK(again.t == 1);
        auto const neg = sb.decompose(-x);
        CHECK(neg.s == d.s);
        CHECK(neg.t == -d.t);
    }
}

TEST_CASE("model arithmetic")
{
    auto U = bare_index_set(ToleranceSchedule::paper(), 100000);
    U.ensure_count(5);
    CHECK(model_add(U, 1, 1, 2));
    CHECK_FALSE(model_add(U, 1, 2, 4));
    CHECK(model_square(U, 2, 4));
    CHECK_FALSE(model_square(U, 2, 3));
    CHECK(*model_mul(U, 1, 1, 1));
    CHECK_FALSE(*model_mul(U, 1, 1, 2));
    CHECK_FALSE(model_mul(U, 1, 2, 2).has_value());
    CHECK_THROWS_AS(model_add(U, 1, 1, 6), std::invalid_argument);

    auto const r = model_check(U);
    CHECK(r.rows.size() == 125);
    CHECK(r.disagreements == 0);
    CHECK(r.deviationViolations == 0);
    CHECK(r.maxDeviation <= 0.3);
    CHECK(r.mulChecked > 0);
    CHECK(r.mulDisagreements == 0);

    auto relaxed = bare_index_set(ToleranceSchedule::relaxed(), 100000);
    relaxed.ensure_count(3);
    CHECK_THROWS_AS(model_add(relaxed, 1, 1, 2), std::invalid_argument);
}
