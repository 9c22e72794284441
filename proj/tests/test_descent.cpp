#include <random>

#include "doctest.h"
#include "edsd/descent.hpp"

using namespace edsd;

namespace {

RatPoint const Q(Rational(2), Rational(2));

DescentPair const &example()
{
    static DescentPair const pair(IsogenyParams{}, Q);
    return pair;
}

struct Sequences {
    EdsSequence B, b;
};

Sequences const &sequences()
{
    static Sequences const s{EdsSequence(example().E(), Q, 30), companion_eds(example(), 90)};
    return s;
}

RatPoint pt(long x, long y)
{
    return RatPoint(Rational(x), Rational(y));
}

} // namespace

TEST_CASE("example pair")
{
    auto const &pair = example();
    CHECK(pair.E() == CurveSpec::short_form(0, -4));
    CHECK(pair.Eprime() == CurveSpec::short_form(0, 108));
    CHECK(pair.signMatch() == -1);
    CHECK(target_coefficient(108, 3) == -4);
    CHECK_THROWS_AS(target_coefficient(108, 2), std::invalid_argument);
}

TEST_CASE("sigma")
{
    auto const &pair = example();
    CHECK(sigma(pair, pt(6, 18)) == pt(2, -2));
    CHECK(sigma(pair, RatPoint::identity()).is_identity());
    CHECK(sigma(pair, pt(-3, 9)) == pt(5, 11));
    CHECK(pt(5, 11) == scalar_mul(pair.E(), Q, -2));
    CHECK_THROWS_AS(sigma(Integer(108), Integer(3), RatPoint(Rational(0), Rational(1))), std::domain_error);
}

TEST_CASE("verify_descent")
{
    auto const &E = example().E();
    CHECK(verify_descent(108, 3, E, pt(6, 18), Q) == -1);
    CHECK(verify_descent(108, 3, E, pt(6, -18), Q) == 1);
    CHECK_THROWS_AS(verify_descent(108, 3, E, pt(6, 17), Q), NoDescentError);
    CHECK_THROWS_AS(verify_descent(108, 3, E, pt(-3, 9), Q), NoDescentError);
    IsogenyParams bad;
    bad.Qprime = pt(6, 17);
    CHECK_THROWS_AS(DescentPair(bad, Q), std::invalid_argument);
    IsogenyParams wrongDegree;
    wrongDegree.q = 5;
    CHECK_THROWS_AS(DescentPair(wrongDegree, Q), std::invalid_argument);
}

TEST_CASE("sigma is a homomorphism on small multiples")
{
    auto const &pair = example();
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> k(-9, 9);
    int checked = 0;
    while (checked < 50) {
        long const m1 = k(rng), m2 = k(rng);
        RatPoint const P1 = scalar_mul(pair.Eprime(), pair.Qprime(), m1);
        RatPoint const P2 = scalar_mul(pair.Eprime(), pair.Qprime(), m2);
        RatPoint const sum = add(pair.Eprime(), P1, P2);
        RatPoint const image = sigma(pair, sum);
        CHECK(on_curve(pair.E(), image));
        CHECK(image == add(pair.E(), sigma(pair, P1), sigma(pair, P2)));
        CHECK(image == scalar_mul(pair.E(), Q, -(m1 + m2)));
        ++checked;
    }
}

TEST_CASE("companion sequence")
{
    auto const &b = sequences().b;
    std::vector<long> const expected{1, 1, 1, 2, 1, 5, 41, 92, 159, 389, 9041, 17270};
    for (std::size_t n = 1; n <= expected.size(); ++n)
        CHECK(b.B(n) == expected[n - 1]);
    CHECK(b.multiple(2) == pt(-3, 9));
    CHECK(b.multiple(3) == pt(-2, -10));
}

TEST_CASE("ord chain")
{
    auto const &[B, b] = sequences();
    auto const report = check_divdiv(example(), B, b, 30, FactorOptions{200'000, 1, 1u << 16});
    CHECK(report.ok());
    auto find = [&](std::size_t n, long p) {
        for (auto const &r : report.records)
            if (r.n == n && r.p == p)
                return r;
        FAIL("record missing");
        return DivDivRecord{};
    };
    auto const r11 = find(4, 11);
    CHECK(r11.ordSmall == 0);
    CHECK(r11.ordMid == 1);
    CHECK(r11.ordLarge == 1);
    auto const r5 = find(6, 5);
    CHECK(r5.ordSmall == 1);
    CHECK(r5.ordMid == 1);
    CHECK(r5.ordLarge == 1);
    for (auto const &r : report.records)
        CHECK_FALSE(example().E().is_bad(r.p));
}

TEST_CASE("ord addition law")
{
    auto const &b = sequences().b;
    auto const r = check_ordord(example(), b, Integer(5), 6);
    CHECK(r.holds);
    CHECK(r.ordBn == 1);
    CHECK(r.ordBqn == 1);
    CHECK(r.ordQ == 0);
    CHECK_THROWS_AS(check_ordord(example(), b, Integer(3), 6), std::invalid_argument);
    CHECK_THROWS_AS(check_ordord(example(), b, Integer(7), 6), std::invalid_argument);
    CHECK_THROWS_AS(check_ordord(example(), b, Integer(2), 4), std::invalid_argument);
    auto const range = check_ordord_range(example(), b, 30, FactorOptions{200'000, 1, 1u << 16});
    CHECK(range.ok());
    CHECK(range.results.size() > 20);
}

TEST_CASE("primitive lift")
{
    auto const &[B, b] = sequences();
    auto const report = primitive_lift_check(example(), B, b, 30, FactorOptions{200'000, 1, 1u << 16});
    CHECK(report.ok());
    CHECK(std::find(report.skipped.begin(), report.skipped.end(), 6) != report.skipped.end());
    for (auto const &rec : report.records) {
        if (rec.n == 2 || rec.n == 4) // b_2 = 1, b_4 = 2 is bad
            CHECK(rec.primes.empty());
        if (rec.n == 7)
            CHECK(rec.primes == std::vector<Integer>{41});
    }
}

TEST_CASE("two primitive divisors table")
{
    auto const &B = sequences().B;
    auto const report = two_primitive_divisors_report(example(), B, {2, 3, 4, 5, 7}, 10'000'000);
    CHECK(report.skipped == std::vector<std::size_t>{3});
    REQUIRE(report.rows.size() == 4);
    CHECK(report.rows[0].all.kind == PrimitiveClass::Zero);
    CHECK(report.rows[1].all.kind == PrimitiveClass::AtLeastTwoPrimes);
    CHECK(report.rows[1].good.kind == PrimitiveClass::ExactlyOnePrime);
    CHECK(report.rows[2].all.kind == PrimitiveClass::ExactlyOnePrime);
    CHECK(report.rows[3].all.kind == PrimitiveClass::AtLeastTwoPrimes);
    CHECK(report.counts.at(PrimitiveClass::AtLeastTwoPrimes) == 2);
}

TEST_CASE("hypotheses of the example")
{
    auto const h = check_hypotheses(example(), sequences().B);
    CHECK(h.torsionTrivial);
    CHECK(h.realComponents == 1);
    CHECK(h.signMatch == -1);
    CHECK(h.Bq == 3);
    CHECK(h.sameBadPrimes);
    CHECK(h.holds());
}
