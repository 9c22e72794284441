#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edsd/curve.hpp"
#include "edsd/factor.hpp"

namespace edsd {

class TorsionPointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// nQ = (A/B^2, C/B^3) with B > 0 and gcd(B, AC) = 1.
struct EdsTerm {
    std::size_t n = 0;
    Integer A, B, C;
    Integer primitivePart; // maximal divisor of B coprime to every earlier B_m
};

// Terms B_1..B_N of the elliptic divisibility sequence of Q, with primitive
// parts. Immutable once built; extend() returns a longer copy.
class EdsSequence {
public:
    // Throws TorsionPointError if some nQ (n <= N) is the identity and
    // std::invalid_argument if Q is not on the curve.
    EdsSequence(CurveSpec curve, RatPoint Q, std::size_t N);

    CurveSpec const &curve() const { return curve_; }
    RatPoint const &point() const { return Q_; }
    std::size_t size() const { return terms_.size(); }

    EdsTerm const &term(std::size_t n) const;
    Integer const &B(std::size_t n) const { return term(n).B; }
    Integer const &primitive_part(std::size_t n) const { return term(n).primitivePart; }
    RatPoint multiple(std::size_t n) const;

    EdsSequence extended(std::size_t N) const;

private:
    void grow(std::size_t N);

    CurveSpec curve_;
    RatPoint Q_;
    RatPoint last_;
    std::vector<EdsTerm> terms_;
};

// Strip gcd(B_n, B_{n/p}) over primes p | n until coprime.
Integer primitive_part_by_stripping(EdsSequence const &seq, std::size_t n);

struct DivisibilityViolation {
    std::size_t n, m;
};
std::vector<DivisibilityViolation> check_divisibility(EdsSequence const &seq, std::size_t N);

// Least n <= seq.size() with l | B_n; BadReduction for bad l.
std::optional<std::size_t> rank_of_apparition(EdsSequence const &seq, Integer const &l);

enum class PrimitiveClass { Zero, ExactlyOnePrime, AtLeastTwoPrimes, Unknown };
std::string to_string(PrimitiveClass c);

struct Classification {
    PrimitiveClass kind = PrimitiveClass::Unknown;
    std::optional<PrimePower> single; // set for ExactlyOnePrime
};

// Classifies B_n* (or, with goodOnly, its part coprime to the bad primes)
// without full factorization.
Classification classify_value(Integer const &value, Budget &budget);
Classification classify_primitive(EdsSequence const &seq, std::size_t n, Budget &budget, bool goodOnly = false);

Integer good_part(CurveSpec const &curve, Integer const &value);

struct PrimitivePrimes {
    bool resolved = false; // false: factorization ran out of budget
    std::vector<PrimePower> factors;             // of B_n*, all primes
    std::optional<Integer> largestGood;          // p_n
    std::optional<Integer> secondLargestGood;    // p_n'
    std::optional<Integer> largestRaw;           // diagnostics, bad primes included
};

PrimitivePrimes primitive_primes(EdsSequence const &seq, std::size_t n, FactorOptions const &options);

struct CurveConstants {
    std::vector<Integer> L;                     // primes l <= primeBound with B_l = 1
    std::map<Integer, unsigned> a;              // a_l where l^{a_l} <= indexBound
    std::map<Integer, std::size_t> badIndex;    // b_p
    std::size_t b = 0;
    std::uint64_t primeBound = 0;
    std::size_t indexBound = 0;
    std::vector<std::pair<Integer, std::size_t>> violations; // (p, n): p | B_n disagrees with b_p | n

    bool in_L(Integer const &l) const;
};

CurveConstants curve_constants(EdsSequence const &seq, std::uint64_t primeBound, std::size_t indexBound);

struct BadPrimeGrowth {
    Integer prime;
    std::vector<unsigned> ord; // ord[n-1] = ord_p(B_n)
    unsigned maxOrd = 0;
    double maxSlope = 0;       // max over n >= 2 of ord_p(B_n) / log n
    std::vector<std::size_t> monotoneViolations; // n with ord(B_n) > ord(B_2n)
};

std::vector<BadPrimeGrowth> bad_prime_growth_report(EdsSequence const &seq, std::size_t N);

struct EdsCsvOptions {
    bool includeB = false;
    std::size_t factorUpTo = 40; // p_n columns only for n <= factorUpTo
    FactorOptions factor;
};

std::string eds_csv(EdsSequence const &seq, std::size_t N, EdsCsvOptions const &options);

} // namespace edsd
