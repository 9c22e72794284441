#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "edsd/bigint.hpp"

namespace edsd {

struct PrimePower {
    Integer prime;
    unsigned exponent = 0;

    bool operator==(PrimePower const &) const = default;
};

enum class FactorStatus { Complete, PartialBudgetExceeded };

// input == prod(prime^exponent) * cofactor; every listed prime passes
// is_prime(); status is Complete iff cofactor == 1.
struct FactorReport {
    Integer input;
    std::vector<PrimePower> knownFactors; // ascending by prime
    Integer cofactor = 1;
    FactorStatus status = FactorStatus::Complete;
    std::uint64_t spent = 0;

    bool complete() const { return status == FactorStatus::Complete; }
    std::size_t distinct_primes() const { return knownFactors.size(); }
};

// Work units: one per trial division, one per rho iteration, and bit-length
// per probable-prime test.
class Budget {
public:
    static constexpr std::uint64_t unlimited = UINT64_MAX;

    explicit Budget(std::uint64_t units = 10'000'000) : remaining_(units), initial_(units) {}

    bool charge(std::uint64_t units)
    {
        if (remaining_ == unlimited)
            return true;
        if (units > remaining_) {
            remaining_ = 0;
            return false;
        }
        remaining_ -= units;
        return true;
    }
    bool exhausted() const { return remaining_ == 0; }
    std::uint64_t remaining() const { return remaining_; }
    std::uint64_t spent() const { return remaining_ == unlimited ? 0 : initial_ - remaining_; }

private:
    std::uint64_t remaining_;
    std::uint64_t initial_;
};

struct FactorOptions {
    std::uint64_t budget = 10'000'000;
    std::uint64_t rhoSeed = 1;
    std::uint32_t trialBound = 1u << 16;
};

// Deterministic below 2^64 (Miller-Rabin with a fixed base set); BPSW above,
// which is probabilistic in principle but has no known counterexample.
bool is_prime(Integer const &n);
bool is_prime_u64(std::uint64_t n);

// Same as is_prime but charges bit-length units; nullopt if the budget
// cannot cover the test.
std::optional<bool> is_prime_budgeted(Integer const &n, Budget &budget);

FactorReport factor(Integer const &n, FactorOptions const &options = {});
FactorReport factor(Integer const &n, Budget &budget, FactorOptions const &options);

std::vector<std::pair<std::uint64_t, unsigned>> factor_u64(std::uint64_t n);

// (l, k) with n == l^k and l prime, else nullopt. Requires n >= 2.
std::optional<PrimePower> perfect_prime_power(Integer const &n);

// Primes <= limit, ascending. Results below the shared sieve size come from
// an immutable table built on first use.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);
std::span<std::uint32_t const> small_primes();

} // namespace edsd
