#include "edsd/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace edsd {

namespace {

constexpr std::uint32_t kSharedSieveLimit = 1u << 20;

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

std::vector<std::uint32_t> sieve(std::uint32_t limit)
{
    std::vector<std::uint32_t> out;
    if (limit < 2)
        return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i])
            continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i)
            composite[j] = true;
    }
    return out;
}

// Brent's cycle variant of Pollard rho, gcds batched over 64 steps.
std::optional<Integer> rho_brent(Integer const &n, std::uint64_t seed, Budget &budget)
{
    if (mpz_even_p(n.get_mpz_t()))
        return Integer(2);
    for (std::uint64_t attempt = 0;; ++attempt) {
        Integer const c = Integer(static_cast<unsigned long>((seed + attempt) % 1000003 + 1));
        Integer y = Integer(static_cast<unsigned long>((seed * 7919 + attempt) % 1000033 + 2)) % n;
        Integer x, ys, q = 1, g = 1;
        std::uint64_t r = 1;
        constexpr std::uint64_t m = 64;
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i)
                y = (y * y + c) % n;
            std::uint64_t k = 0;
            do {
                ys = y;
                std::uint64_t const steps = std::min(m, r - k);
                if (!budget.charge(steps))
                    return std::nullopt;
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                if (!budget.charge(1))
                    return std::nullopt;
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

} // namespace

std::span<std::uint32_t const> small_primes()
{
    static std::vector<std::uint32_t> const table = sieve(kSharedSieveLimit);
    return table;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit)
{
    if (limit <= kSharedSieveLimit) {
        auto const all = small_primes();
        auto const end = std::upper_bound(all.begin(), all.end(), limit);
        return {all.begin(), end};
    }
    return sieve(limit);
}

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0)
            return n == p;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool witness = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness)
            return false;
    }
    return true;
}

bool is_prime(Integer const &n)
{
    if (n < 2)
        return false;
    if (fits_u64(n))
        return is_prime_u64(to_u64(n));
    // GMP >= 6.2: trial division, BPSW, then (reps - 24) Miller-Rabin rounds.
    return mpz_probab_prime_p(n.get_mpz_t(), 24) != 0;
}

std::optional<bool> is_prime_budgeted(Integer const &n, Budget &budget)
{
    if (!budget.charge(mpz_sizeinbase(n.get_mpz_t(), 2)))
        return std::nullopt;
    return is_prime(n);
}

std::optional<PrimePower> perfect_prime_power(Integer const &n)
{
    if (n < 2)
        throw std::domain_error("perfect_prime_power requires n >= 2");
    Integer base = n;
    unsigned exponent = 1;
    bool reduced = true;
    while (reduced) {
        reduced = false;
        auto const bits = mpz_sizeinbase(base.get_mpz_t(), 2);
        for (auto k : small_primes()) {
            if (k > bits)
                break;
            Integer root;
            if (mpz_root(root.get_mpz_t(), base.get_mpz_t(), k) != 0) {
                base = root;
                exponent *= k;
                reduced = true;
                break;
            }
        }
    }
    if (!is_prime(base))
        return std::nullopt;
    return PrimePower{base, exponent};
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n)
{
    auto const report = factor(from_u64(n), FactorOptions{Budget::unlimited, 1, 1u << 16});
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (auto const &pp : report.knownFactors)
        out.emplace_back(to_u64(pp.prime), pp.exponent);
    return out;
}

FactorReport factor(Integer const &n, FactorOptions const &options)
{
    Budget budget(options.budget);
    return factor(n, budget, options);
}

FactorReport factor(Integer const &n, Budget &budget, FactorOptions const &options)
{
    if (n < 1)
        throw std::domain_error("factor requires n >= 1");
    FactorReport report;
    report.input = n;
    std::uint64_t const before = budget.spent();
    std::map<Integer, unsigned> found;
    Integer rest = n;

    for (auto p : small_primes()) {
        if (p > options.trialBound || rest == 1)
            break;
        if (Integer(p) * p > rest) {
            if (rest > 1 && rest <= options.trialBound) {
                found[rest] += 1;
                rest = 1;
            }
            break;
        }
        if (!budget.charge(1))
            break;
        if (mpz_divisible_ui_p(rest.get_mpz_t(), p))
            found[Integer(p)] += strip(rest, Integer(p));
    }

    // Pending composites with multiplicity.
    std::vector<std::pair<Integer, unsigned>> work;
    Integer cofactor = 1;
    if (rest > 1)
        work.emplace_back(rest, 1);
    std::uint64_t rhoAttempt = 0;
    while (!work.empty()) {
        auto [value, mult] = work.back();
        work.pop_back();
        if (value == 1)
            continue;
        auto const prime = is_prime_budgeted(value, budget);
        if (!prime) {
            for (unsigned i = 0; i < mult; ++i)
                cofactor *= value;
            continue;
        }
        if (*prime) {
            found[value] += mult;
            continue;
        }
        if (auto const pp = perfect_prime_power(value)) {
            found[pp->prime] += mult * pp->exponent;
            continue;
        }
        auto const d = rho_brent(value, options.rhoSeed + rhoAttempt++, budget);
        if (!d) {
            for (unsigned i = 0; i < mult; ++i)
                cofactor *= value;
            continue;
        }
        Integer const other = value / *d;
        Integer const g = gcd(*d, other);
        if (g > 1 && g < value) {
            // split on the common part so multiplicities stay exact
            Integer a = *d, b = other;
            unsigned ea = strip(a, g), eb = strip(b, g);
            work.emplace_back(g, mult * (ea + eb));
            work.emplace_back(a, mult);
            work.emplace_back(b, mult);
        } else {
            work.emplace_back(*d, mult);
            work.emplace_back(other, mult);
        }
    }

    for (auto const &[p, e] : found)
        report.knownFactors.push_back(PrimePower{p, e});
    report.cofactor = cofactor;
    report.status = cofactor == 1 ? FactorStatus::Complete : FactorStatus::PartialBudgetExceeded;
    report.spent = budget.spent() - before;
    return report;
}

} // namespace edsd
