#include "edsd/analytic.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "edsd/factor.hpp"

namespace edsd {

namespace {

unsigned bits_for(unsigned digits)
{
    return static_cast<unsigned>(std::ceil(digits * 3.3219280948873623)) + 16;
}

Real pi()
{
    return boost::multiprecision::mpfr_float(boost::math::constants::pi<Real>());
}

Real to_real(Integer const &v)
{
    return Real(v.get_mpz_t());
}

Real to_real(Rational const &v)
{
    return Real(v.get_num_mpz_t()) / Real(v.get_den_mpz_t());
}

Real epsilon_for(unsigned digits)
{
    return pow(Real(10), -static_cast<int>(digits));
}

Real cubic(RealEmbedding const &emb, Real const &x)
{
    auto const &c = emb.curve;
    return ((4 * x + to_real(c.b2())) * x + 2 * to_real(c.b4())) * x + to_real(c.b6());
}

Real cubic_derivative(CurveSpec const &c, Real const &x)
{
    return (12 * x + 2 * to_real(c.b2())) * x + 2 * to_real(c.b4());
}

} // namespace

ScopedPrecision::ScopedPrecision(unsigned digits) : previous_(Real::default_precision())
{
    Real::default_precision(digits + 5);
}

ScopedPrecision::~ScopedPrecision()
{
    Real::default_precision(previous_);
}

Real agm(Real a, Real b)
{
    Real const eps = epsilon_for(Real::default_precision());
    for (int i = 0; i < 200 && abs(a - b) > eps * abs(a); ++i) {
        Real const next = (a + b) / 2;
        b = sqrt(a * b);
        a = next;
    }
    return a;
}

Real complete_elliptic_k(Real const &m)
{
    return pi() / (2 * agm(Real(1), sqrt(1 - m)));
}

Real incomplete_elliptic_f(Real const &phi, Real const &m)
{
    Real const eps = epsilon_for(Real::default_precision());
    Real a = 1, b = sqrt(1 - m), angle = phi;
    Real const twoPi = 2 * pi();
    Real scale = 1;
    for (int i = 0; i < 200 && abs(a - b) > eps; ++i) {
        // tan(delta) = (b/a) tan(angle), delta in the branch nearest angle
        Real delta = atan2(b * sin(angle), a * cos(angle));
        delta += twoPi * round((angle - delta) / twoPi);
        angle += delta;
        Real const next = (a + b) / 2;
        b = sqrt(a * b);
        a = next;
        scale *= 2;
    }
    return angle / (scale * a);
}

Real jacobi_amplitude(Real const &u, Real const &m)
{
    Real const eps = epsilon_for(Real::default_precision());
    std::vector<Real> as{Real(1)}, cs{sqrt(m)};
    Real b = sqrt(1 - m);
    while (abs(cs.back()) > eps && as.size() < 200) {
        Real const a = as.back();
        as.push_back((a + b) / 2);
        cs.push_back((a - b) / 2);
        b = sqrt(a * b);
    }
    std::size_t const N = as.size() - 1;
    Real phi = pow(Real(2), static_cast<int>(N)) * as[N] * u;
    for (std::size_t n = N; n > 0; --n)
        phi = (phi + asin(cs[n] / as[n] * sin(phi))) / 2;
    return phi;
}

RealEmbedding real_embedding(CurveSpec const &curve, RatPoint const &Q, unsigned precision)
{
    if (real_components(curve) != 1)
        throw TwoComponentError("real embedding needs a curve with one real component");
    ScopedPrecision guard(precision);
    RealEmbedding emb{curve, Q, precision, {}, {}, {}, {}, {}};

    // bracket and bisect the unique real root, then polish with Newton
    Real lo = -1, hi = 1;
    while (cubic(emb, lo) > 0)
        lo *= 2;
    while (cubic(emb, hi) < 0)
        hi *= 2;
    for (int i = 0; i < 80; ++i) {
        Real const mid = (lo + hi) / 2;
        (cubic(emb, mid) < 0 ? lo : hi) = mid;
    }
    Real root = (lo + hi) / 2;
    for (int i = 0; i < 12; ++i)
        root -= cubic(emb, root) / cubic_derivative(curve, root);
    emb.e1 = root;

    // f(x) = 4 (x - e1)(x^2 + p x + r)
    Real const b2 = to_real(curve.b2()), b4 = to_real(curve.b4());
    Real const p = root + b2 / 4;
    Real const r = root * root + b2 * root / 4 + b4 / 2;
    Real const alpha = -p / 2;
    emb.A = sqrt(root * root + p * root + r);
    emb.m = (emb.A + alpha - root) / (2 * emb.A);
    emb.period = 2 * complete_elliptic_k(emb.m) / sqrt(emb.A);
    emb.theta = elliptic_log_normalized(emb, Q);
    return emb;
}

Real elliptic_log_normalized(RealEmbedding const &emb, RatPoint const &P)
{
    ScopedPrecision guard(emb.precision);
    if (P.is_identity())
        return Real(0);
    auto const &c = emb.curve;
    Real const x = to_real(P.x());
    Real const Y = 2 * to_real(P.y()) + to_real(c.a1()) * x + to_real(c.a3());
    Real const d = x - emb.e1;
    Real const phi = acos((d - emb.A) / (d + emb.A));
    Real const u = incomplete_elliptic_f(phi, emb.m) / (2 * sqrt(emb.A));
    Real t = u / emb.period;
    if (Y < 0)
        t = 1 - t;
    if (t >= 1)
        t -= 1;
    return t;
}

RealPoint point_at(RealEmbedding const &emb, Real t)
{
    ScopedPrecision guard(emb.precision);
    t -= floor(t);
    RealPoint out;
    bool const upper = t <= Real(0.5);
    Real const s = upper ? t : 1 - t;
    if (s < pow(Real(10), -static_cast<int>(emb.precision / 3))) {
        out.unbounded = true;
        return out;
    }
    Real const u = s * emb.period;
    Real const phi = jacobi_amplitude(2 * sqrt(emb.A) * u, emb.m);
    Real const c = cos(phi);
    out.x = emb.e1 + emb.A * (1 + c) / (1 - c);
    Real f = cubic(emb, out.x);
    if (f < 0)
        f = 0;
    Real Y = sqrt(f);
    if (!upper)
        Y = -Y;
    auto const &curve = emb.curve;
    out.y = (Y - to_real(curve.a1()) * out.x - to_real(curve.a3())) / 2;
    return out;
}

ApproxY approx_y_of_multiple(RealEmbedding const &emb, std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("approx_y_of_multiple needs n >= 1");
    ScopedPrecision guard(emb.precision);
    ApproxY out;
    Real pos = emb.theta * Real(n);
    pos -= floor(pos);
    out.position = pos;
    auto const pt = point_at(emb, pos);
    if (pt.unbounded) {
        out.unbounded = true;
        return out;
    }
    out.x = pt.x;
    out.y = pt.y;
    // dz = dx / Y; dy/dz = (f'(x)/2 - a1 Y) / 2
    auto const &c = emb.curve;
    Real const Y = 2 * pt.y + to_real(c.a1()) * pt.x + to_real(c.a3());
    Real const dydz = abs((cubic_derivative(c, pt.x) / 2 - to_real(c.a1()) * Y) / 2);
    Real const eps = pow(Real(10), -static_cast<int>(emb.precision) + 5);
    out.errorBound = eps * (Real(n) * emb.period * dydz + 1 + abs(pt.y));
    return out;
}

std::string to_string(HeightMethod m)
{
    return m == HeightMethod::LogBRegression ? "LogBRegression" : "NaiveDoubling";
}

HeightEstimate estimate_height(EdsSequence const &seq, std::size_t lo, std::size_t hi)
{
    if (lo < 1 || hi <= lo || hi > seq.size())
        throw std::out_of_range("estimate_height: bad range");
    std::vector<double> xs, ys;
    for (std::size_t n = lo; n <= hi; ++n) {
        if (seq.B(n) == 1)
            continue;
        xs.push_back(static_cast<double>(n) * static_cast<double>(n));
        ys.push_back(log_abs(seq.B(n)));
    }
    if (xs.size() < 2)
        throw std::domain_error("estimate_height: not enough nontrivial terms");
    double const k = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double const mx = sx / k, my = sy / k;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    HeightEstimate est;
    est.method = HeightMethod::LogBRegression;
    est.rangeLo = lo;
    est.rangeHi = hi;
    est.value = sxy / sxx;
    est.intercept = my - est.value * mx;
    double rss = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double const rel = (ys[i] - (est.value * xs[i] + est.intercept)) / ys[i];
        rss += rel * rel;
    }
    est.residual = std::sqrt(rss / k);
    return est;
}

HeightEstimate estimate_height_doubling(CurveSpec const &curve, RatPoint const &Q, unsigned doublings)
{
    RatPoint P = Q;
    double previous = 0, current = 0;
    for (unsigned k = 1; k <= doublings; ++k) {
        P = dbl(curve, P);
        if (P.is_identity())
            throw TorsionPointError("point is torsion");
        Integer const num = abs(P.x().get_num());
        Integer const &den = P.x().get_den();
        double const naive = log_abs(num > den ? num : den);
        previous = current;
        current = naive / (2.0 * std::ldexp(1.0, 2 * static_cast<int>(k)));
    }
    HeightEstimate est;
    est.method = HeightMethod::NaiveDoubling;
    est.rangeLo = std::size_t{1} << 1;
    est.rangeHi = std::size_t{1} << doublings;
    est.value = current;
    est.residual = std::fabs(current - previous);
    return est;
}

HeightRatio check_height_isogeny_ratio(HeightEstimate const &onE, HeightEstimate const &onEprime, double q,
                                       double tolerance)
{
    HeightRatio r;
    r.hE = onE.value;
    r.hEprime = onEprime.value;
    r.expected = q;
    r.tolerance = tolerance;
    r.ratio = onE.value / onEprime.value;
    r.pass = std::fabs(r.ratio - q) <= tolerance;
    return r;
}

GrowthReport check_primitive_growth(EdsSequence const &seq, double h, std::size_t lo, std::size_t hi,
                                    std::size_t windowLo, std::size_t windowHi, double bound)
{
    if (hi > seq.size())
        throw std::out_of_range("check_primitive_growth: range beyond computed terms");
    GrowthReport report;
    report.windowLo = windowLo;
    report.windowHi = windowHi;
    report.bound = bound;
    report.minRatio = INFINITY;
    for (std::size_t n = std::max<std::size_t>(lo, 2); n <= hi; ++n) {
        GrowthRow row;
        row.n = n;
        row.logB = seq.B(n) == 0 ? 0 : log_abs(seq.B(n));
        row.logBstar = log_abs(seq.primitive_part(n));
        row.ratio = row.logBstar / (h * static_cast<double>(n) * static_cast<double>(n));
        if (n >= windowLo && n <= windowHi && row.ratio < report.minRatio) {
            report.minRatio = row.ratio;
            report.argMin = n;
        }
        report.rows.push_back(row);
    }
    report.pass = report.argMin != 0 && report.minRatio >= bound;
    return report;
}

double prime_zeta2_partial(std::uint32_t bound)
{
    if (bound < 2)
        throw std::invalid_argument("prime_zeta2_partial needs bound >= 2");
    auto const primes = primes_up_to(bound);
    long double sum = 0;
    for (auto it = primes.rbegin(); it != primes.rend(); ++it) {
        long double const p = *it;
        sum += 1.0L / (p * p);
    }
    return static_cast<double>(sum);
}

std::string to_decimal(Real const &v, int digits)
{
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

} // namespace edsd
