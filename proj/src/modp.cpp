#include "edsd/modp.hpp"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "edsd/factor.hpp"

namespace edsd {

namespace {

using u128 = unsigned __int128;

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = static_cast<std::uint64_t>(static_cast<u128>(r) * b % m);
        b = static_cast<std::uint64_t>(static_cast<u128>(b) * b % m);
        e >>= 1;
    }
    return r;
}

// Tonelli-Shanks; a must be a nonzero square mod odd prime p.
std::uint64_t sqrt_mod(std::uint64_t a, std::uint64_t p)
{
    if (p % 4 == 3)
        return powmod(a, (p + 1) / 4, p);
    std::uint64_t q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    auto mul = [p](std::uint64_t x, std::uint64_t y) { return static_cast<std::uint64_t>(static_cast<u128>(x) * y % p); };
    std::uint64_t m = s, c = powmod(z, q, p), t = powmod(a, q, p), r = powmod(a, (q + 1) / 2, p);
    while (t != 1) {
        std::uint64_t i = 0, t2 = t;
        while (t2 != 1) {
            t2 = mul(t2, t2);
            ++i;
        }
        std::uint64_t b = c;
        for (std::uint64_t j = 0; j + i + 1 < m; ++j)
            b = mul(b, b);
        m = i;
        c = mul(b, b);
        t = mul(t, c);
        r = mul(r, b);
    }
    return r;
}

std::uint64_t isqrt_u64(std::uint64_t n)
{
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (static_cast<u128>(r) * r > n)
        --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

} // namespace

ReducedCurve::ReducedCurve(CurveSpec const &curve, std::uint64_t p) : p_(p)
{
    if (p < 2 || !is_prime_u64(p))
        throw std::invalid_argument("modulus is not a prime");
    if (curve.is_bad(from_u64(p)))
        throw BadReduction("prime " + std::to_string(p) + " is of bad reduction");
    a1_ = reduce(curve.a1());
    a2_ = reduce(curve.a2());
    a3_ = reduce(curve.a3());
    a4_ = reduce(curve.a4());
    a6_ = reduce(curve.a6());
}

std::uint64_t ReducedCurve::mulmod(std::uint64_t a, std::uint64_t b) const
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p_);
}

std::uint64_t ReducedCurve::inverse(std::uint64_t a) const
{
    if (a % p_ == 0)
        throw std::domain_error("inverse of zero");
    return powmod(a, p_ - 2, p_);
}

std::uint64_t ReducedCurve::reduce(Integer const &v) const
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), from_u64(p_).get_mpz_t());
    return to_u64(r);
}

std::uint64_t ReducedCurve::reduce(Rational const &v) const
{
    return mulmod(reduce(v.get_num()), inverse(reduce(v.get_den())));
}

bool ReducedCurve::on_curve(ModPoint const &P) const
{
    if (P.infinity)
        return true;
    auto const add = [this](std::uint64_t a, std::uint64_t b) { return (a + b) % p_; };
    std::uint64_t lhs = add(add(mulmod(P.y, P.y), mulmod(mulmod(a1_, P.x), P.y)), mulmod(a3_, P.y));
    std::uint64_t rhs = add(mulmod(add(mulmod(add(P.x, a2_), P.x), a4_), P.x), a6_);
    return lhs == rhs;
}

ModPoint ReducedCurve::neg(ModPoint const &P) const
{
    if (P.infinity)
        return P;
    std::uint64_t t = (mulmod(a1_, P.x) + a3_ + P.y) % p_;
    return ModPoint::affine(P.x, (p_ - t) % p_);
}

ModPoint ReducedCurve::add(ModPoint const &P, ModPoint const &R) const
{
    if (P.infinity)
        return R;
    if (R.infinity)
        return P;
    auto const sub = [this](std::uint64_t a, std::uint64_t b) { return (a + p_ - b) % p_; };
    auto const plus = [this](std::uint64_t a, std::uint64_t b) { return (a + b) % p_; };
    std::uint64_t lambda, nu;
    if (P.x == R.x) {
        std::uint64_t const s = plus(plus(P.y, R.y), plus(mulmod(a1_, R.x), a3_));
        if (s == 0)
            return ModPoint::identity();
        std::uint64_t const t = inverse(plus(plus(mulmod(2, P.y), mulmod(a1_, P.x)), a3_));
        std::uint64_t const x2 = mulmod(P.x, P.x);
        std::uint64_t num = plus(plus(mulmod(3, x2), mulmod(mulmod(2, a2_), P.x)), a4_);
        num = sub(num, mulmod(a1_, P.y));
        lambda = mulmod(num, t);
        std::uint64_t numNu = sub(plus(plus(mulmod(a4_, P.x), mulmod(2, a6_)), 0), mulmod(x2, P.x));
        numNu = sub(numNu, mulmod(a3_, P.y));
        nu = mulmod(numNu, t);
    } else {
        std::uint64_t const inv = inverse(sub(R.x, P.x));
        lambda = mulmod(sub(R.y, P.y), inv);
        nu = mulmod(sub(mulmod(P.y, R.x), mulmod(R.y, P.x)), inv);
    }
    std::uint64_t x3 = sub(sub(sub(plus(mulmod(lambda, lambda), mulmod(a1_, lambda)), a2_), P.x), R.x);
    std::uint64_t y3 = sub(sub(sub(0, mulmod(plus(lambda, a1_), x3)), nu), a3_);
    return ModPoint::affine(x3, y3);
}

ModPoint ReducedCurve::mul(ModPoint const &P, std::uint64_t n) const
{
    ModPoint acc, base = P;
    while (n) {
        if (n & 1)
            acc = add(acc, base);
        n >>= 1;
        if (n)
            base = add(base, base);
    }
    return acc;
}

std::uint64_t ReducedCurve::order_from_multiple(ModPoint const &P, std::uint64_t m) const
{
    if (!mul(P, m).infinity)
        throw std::logic_error("order_from_multiple: m is not a multiple of the order");
    std::uint64_t order = m;
    for (auto const &[r, e] : factor_u64(m)) {
        for (unsigned i = 0; i < e && order % r == 0; ++i) {
            if (!mul(P, order / r).infinity)
                break;
            order /= r;
        }
    }
    return order;
}

ModPoint reduce_point(CurveSpec const &curve, RatPoint const &P, std::uint64_t p)
{
    ReducedCurve const E(curve, p);
    if (P.is_identity())
        return ModPoint::identity();
    if (mpz_divisible_ui_p(P.x().get_den_mpz_t(), p))
        return ModPoint::identity();
    return ModPoint::affine(E.reduce(P.x()), E.reduce(P.y()));
}

std::uint64_t count_points_exhaustive(CurveSpec const &curve, std::uint64_t p)
{
    ReducedCurve const E(curve, p);
    if (p == 2) {
        std::uint64_t n = 1;
        for (std::uint64_t x = 0; x < 2; ++x)
            for (std::uint64_t y = 0; y < 2; ++y)
                n += E.on_curve(ModPoint::affine(x, y)) ? 1 : 0;
        return n;
    }
    // Complete the square: (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    std::vector<signed char> chi(p, -1);
    chi[0] = 0;
    for (std::uint64_t y = 1; y <= p / 2; ++y)
        chi[E.mulmod(y, y)] = 1;
    std::uint64_t const b2 = E.reduce(curve.b2()), b4 = E.reduce(curve.b4()), b6 = E.reduce(curve.b6());
    std::int64_t total = 1 + static_cast<std::int64_t>(p);
    for (std::uint64_t x = 0; x < p; ++x) {
        std::uint64_t v = (E.mulmod(4, x) + b2) % p;
        v = (E.mulmod(v, x) + E.mulmod(2, b4)) % p;
        v = (E.mulmod(v, x) + b6) % p;
        total += chi[v];
    }
    return static_cast<std::uint64_t>(total);
}

std::uint64_t group_order_bsgs(CurveSpec const &curve, std::uint64_t p)
{
    ReducedCurve const E(curve, p);
    if (p < 5)
        return count_points_exhaustive(curve, p);
    std::uint64_t const s = isqrt_u64(4 * p) + 1; // > 2 sqrt(p)
    std::uint64_t const lo = p + 1 > s ? p + 1 - s : 1;
    std::uint64_t const hi = p + 1 + s;
    std::uint64_t const W = isqrt_u64(hi - lo + 1) + 1;

    std::uint64_t const b2 = E.reduce(curve.b2()), b4 = E.reduce(curve.b4()), b6 = E.reduce(curve.b6());
    std::uint64_t const a1 = E.reduce(curve.a1()), a3 = E.reduce(curve.a3());
    std::uint64_t const inv2 = E.inverse(2);

    std::uint64_t L = 1;
    std::uint64_t x = 0;
    for (int tries = 0; tries < 64; ++tries) {
        // next point with x-coordinate >= x
        ModPoint P;
        for (; x < p; ++x) {
            std::uint64_t v = (E.mulmod(4, x) + b2) % p;
            v = (E.mulmod(v, x) + E.mulmod(2, b4)) % p;
            v = (E.mulmod(v, x) + b6) % p;
            if (v != 0 && powmod(v, (p - 1) / 2, p) != 1)
                continue;
            std::uint64_t const r = v == 0 ? 0 : sqrt_mod(v, p);
            std::uint64_t const t = (E.mulmod(a1, x) + a3) % p;
            P = ModPoint::affine(x, E.mulmod((r + p - t) % p, inv2));
            ++x;
            break;
        }
        if (P.infinity)
            break;

        std::unordered_map<std::uint64_t, std::uint64_t> baby;
        ModPoint jP;
        for (std::uint64_t j = 0; j <= W; ++j) {
            baby.emplace(jP.infinity ? UINT64_MAX : jP.x, j);
            jP = E.add(jP, P);
        }
        ModPoint const step = E.mul(P, W);
        ModPoint G = E.mul(P, lo);
        std::uint64_t m = 0;
        for (std::uint64_t i = 0; lo + i * W <= hi + W && m == 0; ++i, G = E.add(G, step)) {
            auto const it = baby.find(G.infinity ? UINT64_MAX : G.x);
            if (it == baby.end())
                continue;
            std::uint64_t const base = lo + i * W;
            for (std::uint64_t cand : {base + it->second, base >= it->second ? base - it->second : 0}) {
                if (cand > 0 && E.mul(P, cand).infinity) {
                    m = cand;
                    break;
                }
            }
        }
        if (m == 0)
            throw std::logic_error("BSGS found no multiple in the Hasse interval");
        std::uint64_t const ord = E.order_from_multiple(P, m);
        L = std::lcm(L, ord);
        std::uint64_t const first = (lo + L - 1) / L * L;
        if (first + L > hi)
            return first;
    }
    // Group exponent too small to pin the order; fall back to counting.
    if (p < (1ull << 28))
        return count_points_exhaustive(curve, p);
    throw std::runtime_error("group order ambiguous for p = " + std::to_string(p));
}

std::uint64_t group_order_mod_p(CurveSpec const &curve, std::uint64_t p, std::uint64_t exhaustiveLimit)
{
    if (p < exhaustiveLimit)
        return count_points_exhaustive(curve, p);
    return group_order_bsgs(curve, p);
}

std::uint64_t point_order_mod_p(CurveSpec const &curve, RatPoint const &Q, std::uint64_t p)
{
    ReducedCurve const E(curve, p);
    ModPoint const P = reduce_point(curve, Q, p);
    return E.order_from_multiple(P, group_order_mod_p(curve, p));
}

} // namespace edsd
