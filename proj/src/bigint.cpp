#include "edsd/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace edsd {

Rational parse_rational(std::string_view text)
{
    auto const slash = text.find('/');
    auto const numText = std::string(text.substr(0, slash));
    auto const denText = slash == std::string_view::npos ? std::string("1") : std::string(text.substr(slash + 1));
    auto valid = [](std::string const &s) {
        if (s.empty())
            return false;
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size())
            return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                return false;
        return true;
    };
    if (!valid(numText) || !valid(denText))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    Integer num(numText[0] == '+' ? numText.substr(1) : numText, 10);
    Integer den(denText[0] == '+' ? denText.substr(1) : denText, 10);
    if (den == 0)
        throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::string format_rational(Rational const &value)
{
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(Integer const &value)
{
    return value.get_str();
}

unsigned valuation(Integer const &n, Integer const &p)
{
    if (n == 0)
        throw std::domain_error("valuation of zero");
    if (p < 2)
        throw std::domain_error("valuation base must be >= 2");
    Integer m = n;
    return strip(m, p);
}

unsigned valuation(Integer const &n, std::uint64_t p)
{
    return valuation(n, from_u64(p));
}

double log_abs(Integer const &n)
{
    if (n == 0)
        throw std::domain_error("log of zero");
    long exp = 0;
    double const mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

std::size_t decimal_digits(Integer const &n)
{
    if (n == 0)
        return 1;
    // mpz_sizeinbase may overshoot by one; correct it exactly.
    std::size_t d = mpz_sizeinbase(n.get_mpz_t(), 10);
    Integer a = abs(n);
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, d - 1);
    return a < p ? d - 1 : d;
}

bool fits_u64(Integer const &n)
{
    return n >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64;
}

std::uint64_t to_u64(Integer const &n)
{
    if (!fits_u64(n))
        throw std::overflow_error("integer does not fit in 64 bits");
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, -1, sizeof v, 0, 0, n.get_mpz_t());
    return v;
}

Integer from_u64(std::uint64_t v)
{
    Integer r;
    mpz_import(r.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
    return r;
}

unsigned strip(Integer &n, Integer const &p)
{
    if (n == 0)
        return 0;
    return static_cast<unsigned>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

Integer coprime_part(Integer n, Integer const &m)
{
    Integer g = gcd(n, m);
    while (g > 1) {
        n /= g;
        g = gcd(n, g);
    }
    return n;
}

} // namespace edsd
