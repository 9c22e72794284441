#pragma once

#include <optional>
#include <vector>

#include "edsd/eds.hpp"

namespace edsd {

class NoDescentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct IsogenyParams {
    Integer a = 108;      // E': y^2 = x^3 + a
    Integer u = 3;        // E:  y^2 = x^3 - 27a/u^6
    unsigned q = 3;
    RatPoint Qprime{Rational(6), Rational(18)};
};

// The 3-isogeny sigma: E' -> E of the j = 0 family, composed with the
// scaling (x, y) -> (x/u^2, y/u^3).
class DescentPair {
public:
    // Q is the distinguished point on E. Throws std::invalid_argument for
    // unsupported degree, non-integral target, or Q' / Q not on their curves;
    // NoDescentError if sigma(Q') is not +-Q.
    DescentPair(IsogenyParams const &params, RatPoint const &Q);

    CurveSpec const &Eprime() const { return Eprime_; }
    CurveSpec const &E() const { return E_; }
    unsigned q() const { return q_; }
    Integer const &a() const { return a_; }
    Integer const &u() const { return u_; }
    RatPoint const &Qprime() const { return Qprime_; }
    RatPoint const &Q() const { return Q_; }
    int signMatch() const { return signMatch_; }

private:
    Integer a_, u_;
    unsigned q_;
    CurveSpec Eprime_, E_;
    RatPoint Qprime_, Q_;
    int signMatch_ = 0;
};

// a'' = -27a/u^6; throws if not integral.
Integer target_coefficient(Integer const &a, Integer const &u);

// sigma(x, y) = ((x^3 + 4a)/(u^2 x^2), y (x^3 - 8a)/(u^3 x^3)); identity maps
// to identity; x = 0 is rejected with std::domain_error.
RatPoint sigma(Integer const &a, Integer const &u, RatPoint const &P);
RatPoint sigma(DescentPair const &pair, RatPoint const &P);

// +1 or -1 with sigma(Q') = sign * Q; NoDescentError otherwise.
int verify_descent(Integer const &a, Integer const &u, CurveSpec const &E, RatPoint const &Qprime, RatPoint const &Q);

EdsSequence companion_eds(DescentPair const &pair, std::size_t N);

struct DivDivRecord {
    std::size_t n = 0;
    Integer p;
    unsigned ordSmall = 0; // ord_p(b_n)
    unsigned ordMid = 0;   // ord_p(B_n)
    unsigned ordLarge = 0; // ord_p(b_{qn})
    bool holds = true;
};

struct DivDivReport {
    std::size_t N = 0;
    std::vector<DivDivRecord> records;          // per prime found by factoring
    std::vector<std::size_t> aggregateFailures; // n where a good-part divisibility fails
    std::vector<DivDivRecord> violations;
    bool ok() const { return violations.empty() && aggregateFailures.empty(); }
};

// ord_p(b_n) <= ord_p(B_n) <= ord_p(b_{qn}) for good p. Certified exactly for
// every p through good_part(b_n) | B_n and good_part(B_n) | b_{qn}; per-prime
// records for the primes the budgeted factorizations find.
DivDivReport check_divdiv(DescentPair const &pair, EdsSequence const &B, EdsSequence const &b, std::size_t N,
                          FactorOptions const &options);

struct OrdOrdResult {
    Integer l;
    std::size_t n = 0;
    unsigned ordBn = 0, ordBqn = 0, ordQ = 0;
    bool holds = false;
};

// ord_l(b_{qn}) = ord_l(b_n) + ord_l(q). Requires l > 2 prime, good, l | b_n.
OrdOrdResult check_ordord(DescentPair const &pair, EdsSequence const &b, Integer const &l, std::size_t n);

struct OrdOrdReport {
    std::size_t N = 0;
    std::vector<OrdOrdResult> results;
    std::vector<std::size_t> aggregateFailures;
    std::vector<OrdOrdResult> violations;
    bool ok() const { return violations.empty() && aggregateFailures.empty(); }
};

OrdOrdReport check_ordord_range(DescentPair const &pair, EdsSequence const &b, std::size_t N,
                                FactorOptions const &options);

struct LiftRecord {
    std::size_t n = 0;
    std::vector<Integer> primes;       // good primitive primes of b_n found
    std::vector<Integer> notLifted;    // found primes failing the lift
    bool exact = true;                 // good_part(b_n*) | B_n*
    bool factorComplete = true;
};

struct LiftReport {
    std::vector<LiftRecord> records;
    std::vector<std::size_t> skipped; // gcd(n, q) != 1
    bool ok() const;
};

LiftReport primitive_lift_check(DescentPair const &pair, EdsSequence const &B, EdsSequence const &b, std::size_t N,
                                FactorOptions const &options);

struct TwoDivisorRow {
    std::size_t n = 0;
    Classification all;  // distinct primes of B_n*
    Classification good; // bad primes removed
};

struct TwoDivisorReport {
    std::vector<TwoDivisorRow> rows;
    std::vector<std::size_t> skipped;
    std::map<PrimitiveClass, std::size_t> counts;
    std::map<PrimitiveClass, std::size_t> goodCounts;
};

TwoDivisorReport two_primitive_divisors_report(DescentPair const &pair, EdsSequence const &B,
                                               std::vector<std::size_t> const &indices, std::uint64_t budget);

struct HypothesisReport {
    bool torsionTrivial = false;
    bool rankOneGeneratorTrusted = true; // configuration assertion, not checked
    int realComponents = 0;
    int signMatch = 0;
    Integer Bq;
    bool sameBadPrimes = false;
    bool holds() const { return torsionTrivial && realComponents == 1 && signMatch != 0 && Bq > 1 && sameBadPrimes; }
};

HypothesisReport check_hypotheses(DescentPair const &pair, EdsSequence const &B);

} // namespace edsd
