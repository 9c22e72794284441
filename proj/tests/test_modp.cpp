#include "doctest.h"
#include "edsd/factor.hpp"
#include "edsd/modp.hpp"

using namespace edsd;

namespace {

CurveSpec const E = CurveSpec::short_form(0, -4);
CurveSpec const Eprime = CurveSpec::short_form(0, 108);
CurveSpec const E37a({Integer(0), Integer(0), Integer(1), Integer(-1), Integer(0)});
RatPoint const Q(Rational(2), Rational(2));
RatPoint const Qprime(Rational(6), Rational(18));

// Brute-force count over all (x, y) pairs.
std::uint64_t brute_count(CurveSpec const &C, std::uint64_t p)
{
    ReducedCurve const R(C, p);
    std::uint64_t n = 1;
    for (std::uint64_t x = 0; x < p; ++x)
        for (std::uint64_t y = 0; y < p; ++y)
            n += R.on_curve(ModPoint::affine(x, y)) ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("reduce_point")
{
    CHECK(reduce_point(E, Q, 5) == ModPoint::affine(2, 2));
    RatPoint const threeQ(parse_rational("106/9"), parse_rational("1090/27"));
    CHECK_THROWS_AS(reduce_point(E, threeQ, 3), BadReduction);
    CHECK(reduce_point(E, threeQ, 5) == ModPoint::affine(4, 0));
    RatPoint const fourQ(parse_rational("785/484"), parse_rational("-5497/10648"));
    CHECK(reduce_point(E, fourQ, 11).infinity);
    CHECK(reduce_point(E, RatPoint::identity(), 7).infinity);
}

TEST_CASE("group_order_mod_p examples")
{
    CHECK(group_order_mod_p(E, 5) == 6);
    CHECK(group_order_mod_p(Eprime, 5) == 6);
    CHECK_THROWS_AS(group_order_mod_p(E, 3), BadReduction);
    CHECK_THROWS_AS(group_order_mod_p(E, 9), std::invalid_argument);
}

TEST_CASE("exhaustive count matches brute force and the Hasse bound")
{
    for (auto p : primes_up_to(200)) {
        for (auto const *C : {&E, &Eprime, &E37a}) {
            if (C->is_bad(Integer(p)))
                continue;
            auto const n = group_order_mod_p(*C, p);
            CHECK(n == brute_count(*C, p));
            double const dev = static_cast<double>(n) - (p + 1.0);
            CHECK(dev * dev <= 4.0 * p);
        }
    }
}

TEST_CASE("BSGS agrees with exhaustive counting")
{
    for (auto p : primes_up_to(40000)) {
        if (p < 5 || p % 97 != 1)
            continue;
        for (auto const *C : {&E, &Eprime, &E37a}) {
            if (C->is_bad(Integer(p)))
                continue;
            CHECK(group_order_bsgs(*C, p) == count_points_exhaustive(*C, p));
        }
    }
    // above the exhaustive threshold the default path is BSGS
    std::uint64_t const big = 1'000'000'007;
    auto const n = group_order_mod_p(E, big);
    double const dev = static_cast<double>(n) - (big + 1.0);
    CHECK(dev * dev <= 4.0 * big);
    ReducedCurve const R(E, big);
    CHECK(R.mul(reduce_point(E, Q, big), n).infinity);
}

TEST_CASE("point_order_mod_p")
{
    CHECK(point_order_mod_p(E, Q, 5) == 6);
    CHECK(point_order_mod_p(Eprime, Qprime, 5) == 6);
    CHECK(point_order_mod_p(E, Q, 11) == 4);
    CHECK_THROWS_AS(point_order_mod_p(E, Q, 2), BadReduction);
    for (auto p : primes_up_to(500)) {
        if (p <= 3)
            continue;
        auto const np = point_order_mod_p(E, Q, p);
        CHECK(group_order_mod_p(E, p) % np == 0);
        ReducedCurve const R(E, p);
        CHECK(R.mul(reduce_point(E, Q, p), np).infinity);
    }
}

TEST_CASE("reduction is a homomorphism")
{
    auto const m = multiples(E, Q, 30);
    for (auto p : primes_up_to(100)) {
        if (p <= 3)
            continue;
        ReducedCurve const R(E, p);
        ModPoint const q = reduce_point(E, Q, p);
        for (std::size_t k = 1; k <= 30; ++k) {
            CHECK(reduce_point(E, m[k - 1], p) == R.mul(q, k));
            CHECK(R.on_curve(R.mul(q, k)));
        }
    }
}
