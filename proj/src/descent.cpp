#include "edsd/descent.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace edsd {

namespace {

Integer pow_int(Integer const &base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// Good primes of v found by a budgeted factorization.
std::vector<Integer> good_primes_found(CurveSpec const &curve, Integer const &v, FactorOptions const &options)
{
    std::vector<Integer> out;
    if (v == 1)
        return out;
    for (auto const &pp : factor(good_part(curve, v), options).knownFactors)
        out.push_back(pp.prime);
    return out;
}

} // namespace

Integer target_coefficient(Integer const &a, Integer const &u)
{
    if (a == 0)
        throw std::invalid_argument("a = 0 gives a singular curve");
    if (u == 0)
        throw std::invalid_argument("u must be nonzero");
    Integer const num = -27 * a;
    Integer const den = pow_int(u, 6);
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
        throw std::invalid_argument("u^6 does not divide 27a");
    return num / den;
}

DescentPair::DescentPair(IsogenyParams const &params, RatPoint const &Q)
    : a_(params.a), u_(params.u), q_(params.q), Eprime_(CurveSpec::short_form(0, params.a)),
      E_(CurveSpec::short_form(0, target_coefficient(params.a, params.u))), Qprime_(params.Qprime), Q_(Q)
{
    if (q_ != 3)
        throw std::invalid_argument("only the degree-3 isogeny of the j = 0 family is implemented");
    if (!on_curve(Eprime_, Qprime_))
        throw std::invalid_argument("Q' is not on E'");
    if (!on_curve(E_, Q_))
        throw std::invalid_argument("Q is not on E");
    if (Eprime_.bad_primes() != E_.bad_primes())
        throw std::invalid_argument("E and E' have different bad primes");
    signMatch_ = verify_descent(a_, u_, E_, Qprime_, Q_);
}

RatPoint sigma(Integer const &a, Integer const &u, RatPoint const &P)
{
    if (P.is_identity())
        return P;
    Rational const &x = P.x(), &y = P.y();
    if (x == 0)
        throw std::domain_error("sigma is not defined by the formula at x = 0");
    Rational const x3 = x * x * x;
    Rational const u2 = Rational(u * u), u3 = Rational(u * u * u);
    Rational X = (x3 + 4 * a) / (u2 * x * x);
    Rational Y = y * (x3 - 8 * a) / (u3 * x3);
    return RatPoint(std::move(X), std::move(Y));
}

RatPoint sigma(DescentPair const &pair, RatPoint const &P)
{
    return sigma(pair.a(), pair.u(), P);
}

int verify_descent(Integer const &a, Integer const &u, CurveSpec const &E, RatPoint const &Qprime, RatPoint const &Q)
{
    CurveSpec const Eprime = CurveSpec::short_form(0, a);
    if (!on_curve(Eprime, Qprime))
        throw NoDescentError("Q' is not on E'");
    RatPoint const image = sigma(a, u, Qprime);
    if (image == Q)
        return 1;
    if (image == neg(E, Q))
        return -1;
    throw NoDescentError("sigma(Q') is neither Q nor -Q");
}

EdsSequence companion_eds(DescentPair const &pair, std::size_t N)
{
    return EdsSequence(pair.Eprime(), pair.Qprime(), N);
}

DivDivReport check_divdiv(DescentPair const &pair, EdsSequence const &B, EdsSequence const &b, std::size_t N,
                          FactorOptions const &options)
{
    unsigned const q = pair.q();
    if (B.size() < N || b.size() < q * N)
        throw std::out_of_range("check_divdiv needs B to N and b to qN");
    CurveSpec const &E = pair.E();
    DivDivReport report;
    report.N = N;
    // primes found in primitive parts, reused for every multiple
    std::vector<std::vector<Integer>> foundB(N + 1), foundb(q * N + 1);
    for (std::size_t m = 1; m <= N; ++m)
        foundB[m] = good_primes_found(E, B.primitive_part(m), options);
    for (std::size_t m = 1; m <= q * N; ++m)
        foundb[m] = good_primes_found(E, b.primitive_part(m), options);

    for (std::size_t n = 1; n <= N; ++n) {
        Integer const &bn = b.B(n), &Bn = B.B(n), &bqn = b.B(q * n);
        if (!mpz_divisible_p(Bn.get_mpz_t(), good_part(E, bn).get_mpz_t()) ||
            !mpz_divisible_p(bqn.get_mpz_t(), good_part(E, Bn).get_mpz_t()))
            report.aggregateFailures.push_back(n);

        std::set<Integer> primes;
        for (std::size_t m = 1; m <= n; ++m)
            if (n % m == 0)
                primes.insert(foundB[m].begin(), foundB[m].end());
        for (std::size_t m = 1; m <= q * n; ++m)
            if ((q * n) % m == 0)
                primes.insert(foundb[m].begin(), foundb[m].end());
        for (auto const &p : primes) {
            DivDivRecord r{n, p, valuation(bn, p), valuation(Bn, p), valuation(bqn, p), true};
            r.holds = r.ordSmall <= r.ordMid && r.ordMid <= r.ordLarge;
            if (!r.holds)
                report.violations.push_back(r);
            report.records.push_back(std::move(r));
        }
    }
    return report;
}

OrdOrdResult check_ordord(DescentPair const &pair, EdsSequence const &b, Integer const &l, std::size_t n)
{
    unsigned const q = pair.q();
    if (l <= 2 || !is_prime(l))
        throw std::invalid_argument("check_ordord requires a prime l > 2");
    if (pair.Eprime().is_bad(l))
        throw std::invalid_argument("check_ordord requires a good prime");
    if (b.size() < q * n)
        throw std::out_of_range("check_ordord needs b to qn");
    if (!mpz_divisible_p(b.B(n).get_mpz_t(), l.get_mpz_t()))
        throw std::invalid_argument("check_ordord requires l | b_n");
    OrdOrdResult r;
    r.l = l;
    r.n = n;
    r.ordBn = valuation(b.B(n), l);
    r.ordBqn = valuation(b.B(q * n), l);
    r.ordQ = mpz_divisible_p(Integer(q).get_mpz_t(), l.get_mpz_t()) ? valuation(Integer(q), l) : 0;
    r.holds = r.ordBqn == r.ordBn + r.ordQ;
    return r;
}

OrdOrdReport check_ordord_range(DescentPair const &pair, EdsSequence const &b, std::size_t N,
                                FactorOptions const &options)
{
    unsigned const q = pair.q();
    if (b.size() < q * N)
        throw std::out_of_range("check_ordord_range needs b to qN");
    CurveSpec const &C = pair.Eprime();
    OrdOrdReport report;
    report.N = N;
    std::vector<std::vector<Integer>> found(N + 1);
    for (std::size_t m = 1; m <= N; ++m)
        found[m] = good_primes_found(C, b.primitive_part(m), options);
    for (std::size_t n = 1; n <= N; ++n) {
        Integer const &bn = b.B(n);
        Integer const ratio = b.B(q * n) / bn;
        Integer const g = gcd(ratio, good_part(C, bn));
        if (coprime_part(g, Integer(2 * q)) != 1)
            report.aggregateFailures.push_back(n);
        std::set<Integer> primes;
        for (std::size_t m = 1; m <= n; ++m)
            if (n % m == 0)
                primes.insert(found[m].begin(), found[m].end());
        for (auto const &l : primes) {
            if (l <= 2)
                continue;
            auto r = check_ordord(pair, b, l, n);
            if (!r.holds)
                report.violations.push_back(r);
            report.results.push_back(std::move(r));
        }
    }
    return report;
}

bool LiftReport::ok() const
{
    return std::all_of(records.begin(), records.end(),
                       [](LiftRecord const &r) { return r.exact && r.notLifted.empty(); });
}

LiftReport primitive_lift_check(DescentPair const &pair, EdsSequence const &B, EdsSequence const &b, std::size_t N,
                                FactorOptions const &options)
{
    if (B.size() < N || b.size() < N)
        throw std::out_of_range("primitive_lift_check needs both sequences to N");
    CurveSpec const &E = pair.E();
    LiftReport report;
    for (std::size_t n = 1; n <= N; ++n) {
        if (std::gcd(n, static_cast<std::size_t>(pair.q())) != 1) {
            report.skipped.push_back(n);
            continue;
        }
        LiftRecord rec;
        rec.n = n;
        Integer const goodStar = good_part(E, b.primitive_part(n));
        rec.exact = mpz_divisible_p(B.primitive_part(n).get_mpz_t(), goodStar.get_mpz_t()) != 0;
        if (goodStar > 1) {
            auto const r = factor(goodStar, options);
            rec.factorComplete = r.complete();
            for (auto const &pp : r.knownFactors) {
                rec.primes.push_back(pp.prime);
                bool lifted = mpz_divisible_p(B.B(n).get_mpz_t(), pp.prime.get_mpz_t()) != 0;
                for (std::size_t m = 1; m < n && lifted; ++m)
                    if (mpz_divisible_p(B.B(m).get_mpz_t(), pp.prime.get_mpz_t()))
                        lifted = false;
                if (!lifted)
                    rec.notLifted.push_back(pp.prime);
            }
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

TwoDivisorReport two_primitive_divisors_report(DescentPair const &pair, EdsSequence const &B,
                                               std::vector<std::size_t> const &indices, std::uint64_t budget)
{
    TwoDivisorReport report;
    for (auto n : indices) {
        if (std::gcd(n, static_cast<std::size_t>(pair.q())) != 1) {
            report.skipped.push_back(n);
            continue;
        }
        Budget allBudget(budget), goodBudget(budget);
        TwoDivisorRow row{n, classify_primitive(B, n, allBudget, false), classify_primitive(B, n, goodBudget, true)};
        ++report.counts[row.all.kind];
        ++report.goodCounts[row.good.kind];
        report.rows.push_back(std::move(row));
    }
    return report;
}

HypothesisReport check_hypotheses(DescentPair const &pair, EdsSequence const &B)
{
    HypothesisReport h;
    h.torsionTrivial = torsion_trivial(pair.E());
    h.realComponents = real_components(pair.E());
    h.signMatch = pair.signMatch();
    h.Bq = B.B(pair.q());
    h.sameBadPrimes = pair.E().bad_primes() == pair.Eprime().bad_primes();
    return h;
}

} // namespace edsd
