#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/mpfr.hpp>

#include "edsd/eds.hpp"

namespace edsd {

using Real = boost::multiprecision::mpfr_float;

// Sets the MPFR working precision (decimal digits) for the current thread and
// restores the previous value on destruction.
class ScopedPrecision {
public:
    explicit ScopedPrecision(unsigned digits);
    ~ScopedPrecision();
    ScopedPrecision(ScopedPrecision const &) = delete;
    ScopedPrecision &operator=(ScopedPrecision const &) = delete;

private:
    unsigned previous_;
};

Real agm(Real a, Real b);
// Complete integral of the first kind, parameter m = k^2.
Real complete_elliptic_k(Real const &m);
// Incomplete integral F(phi | m), any real phi, by descending Landen steps.
Real incomplete_elliptic_f(Real const &phi, Real const &m);
// Jacobi amplitude: am(F(phi | m) | m) = phi.
Real jacobi_amplitude(Real const &u, Real const &m);

// Real locus of a curve with negative discriminant as R/Z via the normalized
// elliptic logarithm. theta(P) = u(x)/Omega on the half with 2y + a1 x + a3 >= 0
// and 1 - u(x)/Omega on the other, u(x) = int_x^inf dt / sqrt(f(t)).
struct RealEmbedding {
    CurveSpec curve;
    RatPoint point;
    unsigned precision = 50;
    Real e1;     // real root of 4x^3 + b2 x^2 + 2 b4 x + b6
    Real A;      // |e1 - e2|
    Real m;      // parameter k^2
    Real period; // Omega
    Real theta;  // of the distinguished point, in [0, 1)
};

class TwoComponentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Throws TwoComponentError for curves with two real components.
RealEmbedding real_embedding(CurveSpec const &curve, RatPoint const &Q, unsigned precision = 50);

Real elliptic_log_normalized(RealEmbedding const &emb, RatPoint const &P);

struct RealPoint {
    bool unbounded = false; // position within tolerance of the identity
    Real x, y;
};

// Inverse of the parametrization at position t in [0, 1).
RealPoint point_at(RealEmbedding const &emb, Real t);

struct ApproxY {
    bool unbounded = false;
    Real position; // frac(n theta)
    Real x, y;
    Real errorBound;
};

ApproxY approx_y_of_multiple(RealEmbedding const &emb, std::uint64_t n);

enum class HeightMethod { LogBRegression, NaiveDoubling };
std::string to_string(HeightMethod m);

struct HeightEstimate {
    double value = 0;
    HeightMethod method = HeightMethod::LogBRegression;
    std::size_t rangeLo = 0, rangeHi = 0;
    double intercept = 0;
    double residual = 0; // RMS of (log B_n - fit) / log B_n
};

// Least squares log B_n = h n^2 + c over n in [lo, hi].
HeightEstimate estimate_height(EdsSequence const &seq, std::size_t lo, std::size_t hi);

// log max(|num x|, den x) / (2 * 4^k) for 2^k Q, k = doublings.
HeightEstimate estimate_height_doubling(CurveSpec const &curve, RatPoint const &Q, unsigned doublings = 7);

struct HeightRatio {
    double ratio = 0;
    double expected = 0;
    double tolerance = 0.1;
    double hE = 0, hEprime = 0;
    bool pass = false;
};

HeightRatio check_height_isogeny_ratio(HeightEstimate const &onE, HeightEstimate const &onEprime, double q,
                                       double tolerance = 0.1);

struct GrowthRow {
    std::size_t n = 0;
    double logB = 0, logBstar = 0, ratio = 0;
};

struct GrowthReport {
    std::vector<GrowthRow> rows;
    std::size_t windowLo = 0, windowHi = 0;
    double minRatio = 0;
    std::size_t argMin = 0;
    double bound = 0.547;
    bool pass = false;
};

// Rows for n in [lo, hi] (n = 1 excluded); verdict over [windowLo, windowHi].
GrowthReport check_primitive_growth(EdsSequence const &seq, double h, std::size_t lo, std::size_t hi,
                                    std::size_t windowLo, std::size_t windowHi, double bound = 0.547);

// sum of 1/p^2 over primes p <= bound.
double prime_zeta2_partial(std::uint32_t bound);

std::string to_decimal(Real const &v, int digits = 20);

} // namespace edsd
