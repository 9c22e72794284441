#pragma once

#include <cstdint>
#include <stdexcept>

#include "edsd/curve.hpp"

namespace edsd {

class BadReduction : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ModPoint {
    bool infinity = true;
    std::uint64_t x = 0, y = 0;

    static ModPoint identity() { return {}; }
    static ModPoint affine(std::uint64_t x, std::uint64_t y) { return {false, x, y}; }
    bool operator==(ModPoint const &) const = default;
};

// The reduction of a curve modulo a prime of good reduction.
class ReducedCurve {
public:
    // Throws BadReduction if p divides the discriminant; p must be prime.
    ReducedCurve(CurveSpec const &curve, std::uint64_t p);

    std::uint64_t p() const { return p_; }

    bool on_curve(ModPoint const &P) const;
    ModPoint neg(ModPoint const &P) const;
    ModPoint add(ModPoint const &P, ModPoint const &R) const;
    ModPoint mul(ModPoint const &P, std::uint64_t n) const;

    std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inverse(std::uint64_t a) const;
    std::uint64_t reduce(Integer const &v) const;
    std::uint64_t reduce(Rational const &v) const; // denominator must be a unit

    // Order of P given any multiple m with mP = O.
    std::uint64_t order_from_multiple(ModPoint const &P, std::uint64_t m) const;

private:
    std::uint64_t p_;
    std::uint64_t a1_, a2_, a3_, a4_, a6_;
};

ModPoint reduce_point(CurveSpec const &curve, RatPoint const &P, std::uint64_t p);

// |E(F_p)|. Exhaustive count below exhaustiveLimit, baby-step giant-step in
// the Hasse interval above.
std::uint64_t group_order_mod_p(CurveSpec const &curve, std::uint64_t p,
                                std::uint64_t exhaustiveLimit = 1u << 16);

std::uint64_t count_points_exhaustive(CurveSpec const &curve, std::uint64_t p);
std::uint64_t group_order_bsgs(CurveSpec const &curve, std::uint64_t p);

// Least n >= 1 with n(Q mod p) = O.
std::uint64_t point_order_mod_p(CurveSpec const &curve, RatPoint const &Q, std::uint64_t p);

} // namespace edsd
