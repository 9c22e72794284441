#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

#include "edsd/bigint.hpp"

namespace edsd {

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over Z.
class CurveSpec {
public:
    // Coefficients in the order a1, a2, a3, a4, a6. Throws std::invalid_argument
    // if the discriminant vanishes or it cannot be fully factored.
    explicit CurveSpec(std::array<Integer, 5> const &coefficients);

    static CurveSpec short_form(Integer const &a4, Integer const &a6);

    Integer const &a1() const { return a_[0]; }
    Integer const &a2() const { return a_[1]; }
    Integer const &a3() const { return a_[2]; }
    Integer const &a4() const { return a_[3]; }
    Integer const &a6() const { return a_[4]; }
    std::array<Integer, 5> const &coefficients() const { return a_; }

    Integer const &b2() const { return b2_; }
    Integer const &b4() const { return b4_; }
    Integer const &b6() const { return b6_; }
    Integer const &c4() const { return c4_; }
    Integer const &c6() const { return c6_; }
    Integer const &discriminant() const { return disc_; }

    // Prime divisors of the discriminant, ascending.
    std::vector<Integer> const &bad_primes() const { return badPrimes_; }
    bool is_bad(Integer const &p) const;
    bool is_short() const { return a_[0] == 0 && a_[1] == 0 && a_[2] == 0; }

    bool operator==(CurveSpec const &other) const { return a_ == other.a_; }

private:
    std::array<Integer, 5> a_;
    Integer b2_, b4_, b6_, b8_, c4_, c6_, disc_;
    std::vector<Integer> badPrimes_;
};

class RatPoint {
public:
    RatPoint() = default;
    RatPoint(Rational x, Rational y) : affine_(true), x_(std::move(x)), y_(std::move(y)) {}

    static RatPoint identity() { return {}; }

    bool is_identity() const { return !affine_; }
    Rational const &x() const;
    Rational const &y() const;

    bool operator==(RatPoint const &other) const
    {
        if (affine_ != other.affine_)
            return false;
        return !affine_ || (x_ == other.x_ && y_ == other.y_);
    }

private:
    bool affine_ = false;
    Rational x_, y_;
};

// nP = (A/B^2, C/B^3), B > 0, gcd(B, AC) = 1. Identity has no such form.
struct Denominators {
    Integer A, B, C;
};

bool on_curve(CurveSpec const &curve, RatPoint const &P);

RatPoint neg(CurveSpec const &curve, RatPoint const &P);
RatPoint add(CurveSpec const &curve, RatPoint const &P, RatPoint const &R);
RatPoint dbl(CurveSpec const &curve, RatPoint const &P);

// Double-and-add; n may be zero or negative.
RatPoint scalar_mul(CurveSpec const &curve, RatPoint const &P, long n);

// P, 2P, ..., NP by repeated addition.
std::vector<RatPoint> multiples(CurveSpec const &curve, RatPoint const &P, std::size_t N);

// Throws std::domain_error for the identity or if the denominators are not
// a square / cube of the same integer.
Denominators denominators(RatPoint const &P);

// Lutz-Nagell scan on the integral model y^2 = x^3 - 27c4 x - 54c6.
bool torsion_trivial(CurveSpec const &curve);

// Integral points of finite order (other than the identity) on the scanned
// model; exposed for tests.
std::vector<std::pair<Integer, Integer>> lutz_nagell_torsion(Integer const &A, Integer const &B);

// Integer roots of x^3 + A x + c, ascending.
std::vector<Integer> integer_roots_depressed_cubic(Integer const &A, Integer const &c);

int real_components(CurveSpec const &curve);

} // namespace edsd
