#include "edsd/curve.hpp"

#include <algorithm>

#include "edsd/factor.hpp"

namespace edsd {

CurveSpec::CurveSpec(std::array<Integer, 5> const &coefficients) : a_(coefficients)
{
    auto const &[a1, a2, a3, a4, a6] = a_;
    b2_ = a1 * a1 + 4 * a2;
    b4_ = 2 * a4 + a1 * a3;
    b6_ = a3 * a3 + 4 * a6;
    b8_ = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    c4_ = b2_ * b2_ - 24 * b4_;
    c6_ = -b2_ * b2_ * b2_ + 36 * b2_ * b4_ - 216 * b6_;
    disc_ = -b2_ * b2_ * b8_ - 8 * b4_ * b4_ * b4_ - 27 * b6_ * b6_ + 9 * b2_ * b4_ * b6_;
    if (disc_ == 0)
        throw std::invalid_argument("singular curve: discriminant is zero");
    auto const report = factor(abs(disc_), FactorOptions{Budget::unlimited, 1, 1u << 16});
    if (!report.complete())
        throw std::invalid_argument("discriminant could not be factored");
    for (auto const &pp : report.knownFactors)
        badPrimes_.push_back(pp.prime);
}

CurveSpec CurveSpec::short_form(Integer const &a4, Integer const &a6)
{
    return CurveSpec({Integer(0), Integer(0), Integer(0), a4, a6});
}

bool CurveSpec::is_bad(Integer const &p) const
{
    return std::binary_search(badPrimes_.begin(), badPrimes_.end(), p);
}

Rational const &RatPoint::x() const
{
    if (!affine_)
        throw std::logic_error("identity has no coordinates");
    return x_;
}

Rational const &RatPoint::y() const
{
    if (!affine_)
        throw std::logic_error("identity has no coordinates");
    return y_;
}

bool on_curve(CurveSpec const &curve, RatPoint const &P)
{
    if (P.is_identity())
        return true;
    Rational const &x = P.x(), &y = P.y();
    Rational lhs = y * y + curve.a1() * x * y + curve.a3() * y;
    Rational rhs = ((x + curve.a2()) * x + curve.a4()) * x + curve.a6();
    return lhs == rhs;
}

RatPoint neg(CurveSpec const &curve, RatPoint const &P)
{
    if (P.is_identity())
        return P;
    Rational y = -P.y() - curve.a1() * P.x() - curve.a3();
    return RatPoint(P.x(), y);
}

RatPoint add(CurveSpec const &curve, RatPoint const &P, RatPoint const &R)
{
    if (P.is_identity())
        return R;
    if (R.is_identity())
        return P;
    Rational const &x1 = P.x(), &y1 = P.y(), &x2 = R.x(), &y2 = R.y();
    Rational lambda, nu;
    if (x1 == x2) {
        Rational const denom = y1 + y2 + curve.a1() * x2 + curve.a3();
        if (denom == 0)
            return RatPoint::identity();
        Rational const t = 2 * y1 + curve.a1() * x1 + curve.a3();
        lambda = (3 * x1 * x1 + 2 * curve.a2() * x1 + curve.a4() - curve.a1() * y1) / t;
        nu = (-x1 * x1 * x1 + curve.a4() * x1 + 2 * curve.a6() - curve.a3() * y1) / t;
    } else {
        Rational const dx = x2 - x1;
        lambda = (y2 - y1) / dx;
        nu = (y1 * x2 - y2 * x1) / dx;
    }
    Rational x3 = lambda * lambda + curve.a1() * lambda - curve.a2() - x1 - x2;
    Rational y3 = -(lambda + curve.a1()) * x3 - nu - curve.a3();
    return RatPoint(std::move(x3), std::move(y3));
}

RatPoint dbl(CurveSpec const &curve, RatPoint const &P)
{
    return add(curve, P, P);
}

RatPoint scalar_mul(CurveSpec const &curve, RatPoint const &P, long n)
{
    RatPoint base = n < 0 ? neg(curve, P) : P;
    unsigned long k = n < 0 ? -static_cast<unsigned long>(n) : static_cast<unsigned long>(n);
    RatPoint acc;
    while (k) {
        if (k & 1)
            acc = add(curve, acc, base);
        k >>= 1;
        if (k)
            base = dbl(curve, base);
    }
    return acc;
}

std::vector<RatPoint> multiples(CurveSpec const &curve, RatPoint const &P, std::size_t N)
{
    std::vector<RatPoint> out;
    out.reserve(N);
    RatPoint acc;
    for (std::size_t n = 1; n <= N; ++n) {
        acc = add(curve, acc, P);
        out.push_back(acc);
    }
    return out;
}

Denominators denominators(RatPoint const &P)
{
    if (P.is_identity())
        throw std::domain_error("identity has no denominators");
    Integer B;
    if (!mpz_perfect_square_p(P.x().get_den_mpz_t()))
        throw std::domain_error("x denominator is not a square");
    mpz_sqrt(B.get_mpz_t(), P.x().get_den_mpz_t());
    if (B * B * B != P.y().get_den())
        throw std::domain_error("y denominator is not the cube of the x denominator root");
    return {P.x().get_num(), B, P.y().get_num()};
}

std::vector<Integer> integer_roots_depressed_cubic(Integer const &A, Integer const &c)
{
    auto g = [&](Integer const &x) -> Integer { return (x * x + A) * x + c; };
    Integer const absA = abs(A), absC = abs(c);
    Integer const R = 1 + (absA > absC ? absA : absC);
    // t: least t >= 0 with 3t^2 + A > 0; g is monotone on each of the pieces.
    Integer t = 0;
    if (A < 0) {
        Integer q = (-A + 2) / 3;
        t = sqrt(q);
        while (3 * t * t + A <= 0)
            ++t;
        while (t > 0 && 3 * (t - 1) * (t - 1) + A > 0)
            --t;
    }
    std::vector<Integer> roots;
    auto search = [&](Integer lo, Integer hi, bool increasing) {
        if (lo > hi)
            return;
        auto side = [&](Integer const &x) {
            int s = sgn(g(x));
            return increasing ? s : -s;
        };
        if (side(lo) > 0 || side(hi) < 0)
            return;
        // least x in [lo, hi] with sgn(x) >= 0
        while (lo < hi) {
            Integer mid = lo + (hi - lo) / 2;
            if (side(mid) >= 0)
                hi = mid;
            else
                lo = mid + 1;
        }
        if (g(lo) == 0)
            roots.push_back(lo);
    };
    search(-R, -t, true);
    search(-t + 1, t - 1, false);
    search(t, R, true);
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

std::vector<std::pair<Integer, Integer>> lutz_nagell_torsion(Integer const &A, Integer const &B)
{
    CurveSpec const model = CurveSpec::short_form(A, B);
    Integer const D = abs(4 * A * A * A + 27 * B * B);
    auto const report = factor(D, FactorOptions{Budget::unlimited, 1, 1u << 16});

    // y = 0 or y^2 | D: enumerate y over square divisors.
    std::vector<Integer> ys{Integer(1)};
    for (auto const &pp : report.knownFactors) {
        std::vector<Integer> next;
        for (auto const &y : ys) {
            Integer pk = 1;
            for (unsigned k = 0; 2 * k <= pp.exponent; ++k) {
                next.push_back(y * pk);
                pk *= pp.prime;
            }
        }
        ys = std::move(next);
    }
    ys.push_back(0);

    std::vector<std::pair<Integer, Integer>> torsion;
    for (auto const &y : ys) {
        for (auto const &x : integer_roots_depressed_cubic(A, B - y * y)) {
            for (int sign : {1, -1}) {
                if (y == 0 && sign < 0)
                    continue;
                RatPoint const P(Rational(x), Rational(sign * y));
                // Mazur: torsion orders are at most 12.
                RatPoint M = P;
                bool finite = false;
                for (int k = 2; k <= 12 && !finite; ++k) {
                    M = add(model, M, P);
                    if (M.is_identity())
                        finite = true;
                    else if (M.x().get_den() != 1 || M.y().get_den() != 1)
                        break;
                }
                if (finite)
                    torsion.emplace_back(x, sign * y);
            }
        }
    }
    std::sort(torsion.begin(), torsion.end());
    return torsion;
}

bool torsion_trivial(CurveSpec const &curve)
{
    return lutz_nagell_torsion(-27 * curve.c4(), -54 * curve.c6()).empty();
}

int real_components(CurveSpec const &curve)
{
    return curve.discriminant() < 0 ? 1 : 2;
}

} // namespace edsd
