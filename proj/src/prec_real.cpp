#include <qrec/prec_real.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <qrec/errors.hpp>

namespace qrec {

namespace {

constexpr double bits_per_digit = 3.3219280948873623;

} // namespace

int PrecReal::bits_for(int digits)
{
    if (digits < 1) {
        throw domain_error("precision must be at least one decimal digit");
    }
    return static_cast<int>(std::ceil(digits * bits_per_digit)) + 4;
}

PrecReal::PrecReal(int digits) : m_digits(digits)
{
    mpfr_init2(m_value, bits_for(digits));
    mpfr_set_zero(m_value, 1);
}

PrecReal::PrecReal(long value, int digits) : PrecReal(digits)
{
    mpfr_set_si(m_value, value, MPFR_RNDN);
}

PrecReal::PrecReal(const BigRational &value, int digits) : PrecReal(digits)
{
    mpfr_set_q(m_value, value.get().get_mpq_t(), MPFR_RNDN);
}

PrecReal::PrecReal(std::string_view decimal, int digits) : PrecReal(digits)
{
    const std::string text(decimal);
    if (mpfr_set_str(m_value, text.c_str(), 10, MPFR_RNDN) != 0) {
        throw domain_error("malformed decimal '" + text + "'");
    }
}

PrecReal::PrecReal(const PrecReal &other) : m_digits(other.m_digits)
{
    mpfr_init2(m_value, mpfr_get_prec(other.m_value));
    mpfr_set(m_value, other.m_value, MPFR_RNDN);
}

PrecReal::PrecReal(PrecReal &&other) noexcept : m_digits(other.m_digits)
{
    // Leave the source valid but tiny so its destructor stays cheap.
    mpfr_init2(m_value, MPFR_PREC_MIN);
    mpfr_swap(m_value, other.m_value);
}

PrecReal &PrecReal::operator=(const PrecReal &other)
{
    if (this != &other) {
        m_digits = other.m_digits;
        mpfr_set_prec(m_value, mpfr_get_prec(other.m_value));
        mpfr_set(m_value, other.m_value, MPFR_RNDN);
    }
    return *this;
}

PrecReal &PrecReal::operator=(PrecReal &&other) noexcept
{
    std::swap(m_digits, other.m_digits);
    mpfr_swap(m_value, other.m_value);
    return *this;
}

PrecReal::~PrecReal()
{
    mpfr_clear(m_value);
}

PrecReal PrecReal::with_digits(int digits) const
{
    PrecReal out(digits);
    mpfr_set(out.m_value, m_value, MPFR_RNDN);
    return out;
}

std::string PrecReal::to_fixed(int decimals, Rounding mode) const
{
    if (decimals < 0) {
        throw domain_error("negative decimal count");
    }
    char *buf = nullptr;
    const int n = mode == Rounding::toward_zero ? mpfr_asprintf(&buf, "%.*RZf", decimals, m_value)
                                                : mpfr_asprintf(&buf, "%.*RNf", decimals, m_value);
    if (n < 0) {
        throw std::runtime_error("mpfr_asprintf failed");
    }
    std::string out(buf);
    mpfr_free_str(buf);
    // A value truncated to zero keeps no sign.
    if (out.starts_with('-') && out.find_first_not_of("-0.") == std::string::npos) {
        out.erase(0, 1);
    }
    return out;
}

std::string PrecReal::to_sci(int significant) const
{
    char *buf = nullptr;
    if (mpfr_asprintf(&buf, "%.*RNe", std::max(significant - 1, 0), m_value) < 0) {
        throw std::runtime_error("mpfr_asprintf failed");
    }
    std::string out(buf);
    mpfr_free_str(buf);
    return out;
}

PrecReal PrecReal::operator-() const
{
    PrecReal out(*this);
    mpfr_neg(out.m_value, out.m_value, MPFR_RNDN);
    return out;
}

namespace {

// Result precision for a binary operation.
int joint(const PrecReal &a, const PrecReal &b)
{
    return std::min(a.digits(), b.digits());
}

template <typename Op>
PrecReal binary(const PrecReal &a, const PrecReal &b, Op op)
{
    PrecReal out(joint(a, b));
    op(out.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return out;
}

// Rounds `self` down to the joint precision when mixing with a coarser operand.
void narrow_to(PrecReal &self, const PrecReal &o)
{
    if (o.digits() < self.digits()) {
        self = self.with_digits(o.digits());
    }
}

} // namespace

PrecReal &PrecReal::operator+=(const PrecReal &o)
{
    narrow_to(*this, o);
    mpfr_add(m_value, m_value, o.m_value, MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator-=(const PrecReal &o)
{
    narrow_to(*this, o);
    mpfr_sub(m_value, m_value, o.m_value, MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator*=(const PrecReal &o)
{
    narrow_to(*this, o);
    mpfr_mul(m_value, m_value, o.m_value, MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator/=(const PrecReal &o)
{
    if (o.is_zero()) {
        throw domain_error("real division by zero");
    }
    narrow_to(*this, o);
    mpfr_div(m_value, m_value, o.m_value, MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator+=(long o)
{
    mpfr_add_si(m_value, m_value, o, MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator-=(long o)
{
    mpfr_sub_si(m_value, m_value, o, MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator*=(long o)
{
    mpfr_mul_si(m_value, m_value, o, MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator/=(long o)
{
    if (o == 0) {
        throw domain_error("real division by zero");
    }
    mpfr_div_si(m_value, m_value, o, MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator*=(const BigRational &o)
{
    mpfr_mul_q(m_value, m_value, o.get().get_mpq_t(), MPFR_RNDN);
    return *this;
}

PrecReal &PrecReal::operator+=(const BigRational &o)
{
    mpfr_add_q(m_value, m_value, o.get().get_mpq_t(), MPFR_RNDN);
    return *this;
}

PrecReal operator+(const PrecReal &a, const PrecReal &b)
{
    return binary(a, b, mpfr_add);
}

PrecReal operator-(const PrecReal &a, const PrecReal &b)
{
    return binary(a, b, mpfr_sub);
}

PrecReal operator*(const PrecReal &a, const PrecReal &b)
{
    return binary(a, b, mpfr_mul);
}

PrecReal operator/(const PrecReal &a, const PrecReal &b)
{
    if (b.is_zero()) {
        throw domain_error("real division by zero");
    }
    return binary(a, b, mpfr_div);
}

namespace {

int compare_at_lower(const PrecReal &a, const PrecReal &b)
{
    if (a.digits() == b.digits()) {
        return mpfr_cmp(a.raw(), b.raw());
    }
    if (a.digits() < b.digits()) {
        return mpfr_cmp(a.raw(), b.with_digits(a.digits()).raw());
    }
    return mpfr_cmp(a.with_digits(b.digits()).raw(), b.raw());
}

std::partial_ordering to_ordering(int c)
{
    return c < 0 ? std::partial_ordering::less : c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent;
}

} // namespace

bool operator==(const PrecReal &a, const PrecReal &b)
{
    if (mpfr_nan_p(a.raw()) || mpfr_nan_p(b.raw())) {
        return false;
    }
    return compare_at_lower(a, b) == 0;
}

std::partial_ordering operator<=>(const PrecReal &a, const PrecReal &b)
{
    if (mpfr_nan_p(a.raw()) || mpfr_nan_p(b.raw())) {
        return std::partial_ordering::unordered;
    }
    return to_ordering(compare_at_lower(a, b));
}

std::partial_ordering operator<=>(const PrecReal &a, long b)
{
    if (mpfr_nan_p(a.raw())) {
        return std::partial_ordering::unordered;
    }
    return to_ordering(mpfr_cmp_si(a.raw(), b));
}

std::ostream &operator<<(std::ostream &os, const PrecReal &x)
{
    return os << x.to_sci(x.digits());
}

PrecReal abs(const PrecReal &x)
{
    PrecReal out(x);
    mpfr_abs(out.raw(), out.raw(), MPFR_RNDN);
    return out;
}

PrecReal log(const PrecReal &x)
{
    if (x.sign() <= 0) {
        throw domain_error("logarithm of a non-positive value");
    }
    PrecReal out(x.digits());
    mpfr_log(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

PrecReal exp(const PrecReal &x)
{
    PrecReal out(x.digits());
    mpfr_exp(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

PrecReal pow(const PrecReal &x, long exponent)
{
    PrecReal out(x.digits());
    mpfr_pow_si(out.raw(), x.raw(), exponent, MPFR_RNDN);
    return out;
}

PrecReal sqrt(const PrecReal &x)
{
    if (x.sign() < 0) {
        throw domain_error("square root of a negative value");
    }
    PrecReal out(x.digits());
    mpfr_sqrt(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

PrecReal pow10(long e, int digits)
{
    PrecReal out(digits);
    mpfr_set_si(out.raw(), 10, MPFR_RNDN);
    mpfr_pow_si(out.raw(), out.raw(), e, MPFR_RNDN);
    return out;
}

double log10_abs(const PrecReal &x)
{
    if (x.is_zero()) {
        return -std::numeric_limits<double>::infinity();
    }
    PrecReal t(abs(x).with_digits(20));
    mpfr_log10(t.raw(), t.raw(), MPFR_RNDN);
    return t.to_double();
}

} // namespace qrec
