#include <qrec/big_rational.hpp>

#include <cctype>
#include <string>
#include <utility>

#include <qrec/errors.hpp>

namespace qrec {

BigRational::BigRational(long num, long den) : BigRational(mpz_class(num), mpz_class(den)) {}

BigRational::BigRational(const mpz_class &num, const mpz_class &den)
{
    if (den == 0) {
        throw domain_error("rational with zero denominator");
    }
    m_value = mpq_class(num, den);
    m_value.canonicalize();
}

BigRational::BigRational(mpq_class v) : m_value(std::move(v))
{
    if (m_value.get_den() == 0) {
        throw domain_error("rational with zero denominator");
    }
    m_value.canonicalize();
}

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole)
{
    std::size_t pos = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        pos = 1;
    }
    if (pos == s.size()) {
        throw domain_error("malformed rational '" + std::string(whole) + "'");
    }
    for (std::size_t i = pos; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) {
            throw domain_error("malformed rational '" + std::string(whole) + "'");
        }
    }
    std::string digits(s[0] == '+' ? s.substr(1) : s);
    return mpz_class(digits, 10);
}

} // namespace

BigRational BigRational::parse(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return BigRational(parse_integer(text, text), mpz_class(1));
    }
    const auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) {
        throw domain_error("malformed rational '" + std::string(text) + "'");
    }
    return BigRational(parse_integer(text.substr(0, slash), text), parse_integer(den_text, text));
}

std::size_t BigRational::bit_size() const
{
    return mpz_sizeinbase(m_value.get_num_mpz_t(), 2) + mpz_sizeinbase(m_value.get_den_mpz_t(), 2);
}

std::string BigRational::to_string() const
{
    return m_value.get_str(10);
}

BigRational &BigRational::operator+=(const BigRational &o)
{
    m_value += o.m_value;
    return *this;
}

BigRational &BigRational::operator-=(const BigRational &o)
{
    m_value -= o.m_value;
    return *this;
}

BigRational &BigRational::operator*=(const BigRational &o)
{
    m_value *= o.m_value;
    return *this;
}

BigRational &BigRational::operator/=(const BigRational &o)
{
    if (o.is_zero()) {
        throw domain_error("rational division by zero");
    }
    m_value /= o.m_value;
    return *this;
}

BigRational pow(const BigRational &base, unsigned exponent)
{
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.get().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.get().get_den_mpz_t(), exponent);
    return BigRational(num, den);
}

BigRational abs(const BigRational &q)
{
    return q.sign() < 0 ? -q : q;
}

BigRational binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) {
        return BigRational(0);
    }
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return BigRational(out, mpz_class(1));
}

} // namespace qrec
