#include "edsd/eds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "edsd/modp.hpp"

namespace edsd {

EdsSequence::EdsSequence(CurveSpec curve, RatPoint Q, std::size_t N) : curve_(std::move(curve)), Q_(std::move(Q))
{
    if (!on_curve(curve_, Q_))
        throw std::invalid_argument("point is not on the curve");
    if (Q_.is_identity())
        throw TorsionPointError("the identity generates no sequence");
    grow(N);
}

EdsTerm const &EdsSequence::term(std::size_t n) const
{
    if (n == 0 || n > terms_.size())
        throw std::out_of_range("EDS index " + std::to_string(n) + " outside 1.." + std::to_string(terms_.size()));
    return terms_[n - 1];
}

RatPoint EdsSequence::multiple(std::size_t n) const
{
    auto const &t = term(n);
    Rational x(t.A, t.B * t.B), y(t.C, t.B * t.B * t.B);
    return RatPoint(x, y);
}

EdsSequence EdsSequence::extended(std::size_t N) const
{
    EdsSequence copy = *this;
    copy.grow(N);
    return copy;
}

void EdsSequence::grow(std::size_t N)
{
    terms_.reserve(N);
    while (terms_.size() < N) {
        last_ = add(curve_, last_, Q_);
        std::size_t const n = terms_.size() + 1;
        if (last_.is_identity())
            throw TorsionPointError("point has finite order " + std::to_string(n));
        auto d = denominators(last_);
        terms_.push_back(EdsTerm{n, std::move(d.A), std::move(d.B), std::move(d.C), Integer(1)});
        terms_.back().primitivePart = primitive_part_by_stripping(*this, n);
    }
}

Integer primitive_part_by_stripping(EdsSequence const &seq, std::size_t n)
{
    Integer value = seq.B(n);
    std::size_t m = n;
    for (std::size_t p = 2; p <= m; ++p) {
        if (m % p != 0)
            continue;
        while (m % p == 0)
            m /= p;
        value = coprime_part(value, seq.B(n / p));
    }
    return value;
}

std::vector<DivisibilityViolation> check_divisibility(EdsSequence const &seq, std::size_t N)
{
    std::vector<DivisibilityViolation> out;
    N = std::min(N, seq.size());
    for (std::size_t n = 1; n <= N; ++n)
        for (std::size_t m = 2 * n; m <= N; m += n)
            if (!mpz_divisible_p(seq.B(m).get_mpz_t(), seq.B(n).get_mpz_t()))
                out.push_back({n, m});
    return out;
}

std::optional<std::size_t> rank_of_apparition(EdsSequence const &seq, Integer const &l)
{
    if (seq.curve().is_bad(l))
        throw BadReduction("prime " + l.get_str() + " is of bad reduction");
    for (std::size_t n = 1; n <= seq.size(); ++n)
        if (mpz_divisible_p(seq.B(n).get_mpz_t(), l.get_mpz_t()))
            return n;
    return std::nullopt;
}

std::string to_string(PrimitiveClass c)
{
    switch (c) {
    case PrimitiveClass::Zero:
        return "Zero";
    case PrimitiveClass::ExactlyOnePrime:
        return "ExactlyOnePrime";
    case PrimitiveClass::AtLeastTwoPrimes:
        return "AtLeastTwoPrimes";
    case PrimitiveClass::Unknown:
        return "Unknown";
    }
    return "Unknown";
}

Integer good_part(CurveSpec const &curve, Integer const &value)
{
    Integer v = value;
    for (auto const &p : curve.bad_primes())
        strip(v, p);
    return v;
}

Classification classify_value(Integer const &value, Budget &budget)
{
    if (value == 1)
        return {PrimitiveClass::Zero, std::nullopt};
    auto const prime = is_prime_budgeted(value, budget);
    if (!prime)
        return {};
    if (*prime)
        return {PrimitiveClass::ExactlyOnePrime, PrimePower{value, 1}};
    if (!mpz_perfect_power_p(value.get_mpz_t()))
        return {PrimitiveClass::AtLeastTwoPrimes, std::nullopt};
    if (!budget.charge(mpz_sizeinbase(value.get_mpz_t(), 2)))
        return {};
    if (auto const pp = perfect_prime_power(value))
        return {PrimitiveClass::ExactlyOnePrime, *pp};
    return {PrimitiveClass::AtLeastTwoPrimes, std::nullopt};
}

Classification classify_primitive(EdsSequence const &seq, std::size_t n, Budget &budget, bool goodOnly)
{
    Integer const &raw = seq.primitive_part(n);
    return classify_value(goodOnly ? good_part(seq.curve(), raw) : raw, budget);
}

PrimitivePrimes primitive_primes(EdsSequence const &seq, std::size_t n, FactorOptions const &options)
{
    PrimitivePrimes out;
    auto const report = factor(seq.primitive_part(n), options);
    out.factors = report.knownFactors;
    out.resolved = report.complete();
    if (!out.resolved)
        return out;
    std::vector<Integer> good;
    for (auto const &pp : report.knownFactors)
        if (!seq.curve().is_bad(pp.prime))
            good.push_back(pp.prime);
    if (!report.knownFactors.empty())
        out.largestRaw = report.knownFactors.back().prime;
    if (!good.empty())
        out.largestGood = good.back();
    if (good.size() >= 2)
        out.secondLargestGood = good[good.size() - 2];
    return out;
}

bool CurveConstants::in_L(Integer const &l) const
{
    return std::binary_search(L.begin(), L.end(), l);
}

CurveConstants curve_constants(EdsSequence const &seq, std::uint64_t primeBound, std::size_t indexBound)
{
    if (indexBound > seq.size())
        throw std::out_of_range("curve_constants: index bound exceeds computed terms");
    CurveConstants out;
    out.primeBound = primeBound;
    out.indexBound = indexBound;
    for (auto l : primes_up_to(static_cast<std::uint32_t>(std::min<std::uint64_t>(primeBound, UINT32_MAX)))) {
        if (l > indexBound)
            break;
        if (seq.B(l) == 1)
            out.L.emplace_back(l);
        std::size_t power = l;
        for (unsigned a = 1; power <= indexBound; ++a, power *= l) {
            if (seq.B(power) > 1) {
                out.a[Integer(l)] = a;
                break;
            }
        }
    }
    for (auto const &p : seq.curve().bad_primes()) {
        std::size_t first = 0;
        for (std::size_t n = 1; n <= indexBound && first == 0; ++n)
            if (mpz_divisible_p(seq.B(n).get_mpz_t(), p.get_mpz_t()))
                first = n;
        if (first == 0)
            continue;
        out.badIndex[p] = first;
        out.b = std::max(out.b, first);
        for (std::size_t n = 1; n <= indexBound; ++n) {
            bool const divides = mpz_divisible_p(seq.B(n).get_mpz_t(), p.get_mpz_t()) != 0;
            if (divides != (n % first == 0))
                out.violations.emplace_back(p, n);
        }
    }
    return out;
}

std::vector<BadPrimeGrowth> bad_prime_growth_report(EdsSequence const &seq, std::size_t N)
{
    N = std::min(N, seq.size());
    std::vector<BadPrimeGrowth> out;
    for (auto const &p : seq.curve().bad_primes()) {
        BadPrimeGrowth g;
        g.prime = p;
        for (std::size_t n = 1; n <= N; ++n) {
            unsigned const v = valuation(seq.B(n), p);
            g.ord.push_back(v);
            g.maxOrd = std::max(g.maxOrd, v);
            if (n >= 2)
                g.maxSlope = std::max(g.maxSlope, v / std::log(static_cast<double>(n)));
        }
        for (std::size_t n = 1; 2 * n <= N; ++n)
            if (g.ord[n - 1] > g.ord[2 * n - 1])
                g.monotoneViolations.push_back(n);
        out.push_back(std::move(g));
    }
    return out;
}

std::string eds_csv(EdsSequence const &seq, std::size_t N, EdsCsvOptions const &options)
{
    std::ostringstream os;
    os << "n,digits_B";
    if (options.includeB)
        os << ",B";
    os << ",digits_Bstar,primitive_class,p_n,p_n_prime\n";
    N = std::min(N, seq.size());
    for (std::size_t n = 1; n <= N; ++n) {
        Budget budget(options.factor.budget);
        auto const cls = classify_primitive(seq, n, budget);
        os << n << ',' << decimal_digits(seq.B(n));
        if (options.includeB)
            os << ',' << seq.B(n).get_str();
        os << ',' << decimal_digits(seq.primitive_part(n)) << ',' << to_string(cls.kind) << ',';
        if (n <= options.factorUpTo) {
            auto const pp = primitive_primes(seq, n, options.factor);
            if (!pp.resolved)
                os << "unknown,unknown";
            else
                os << (pp.largestGood ? pp.largestGood->get_str() : "") << ','
                   << (pp.secondLargestGood ? pp.secondLargestGood->get_str() : "");
        } else {
            os << "unknown,unknown";
        }
        os << '\n';
    }
    return os.str();
}

} // namespace edsd
