#include <qrec/recurrence.hpp>

#include <algorithm>
#include <string>

#include <qrec/errors.hpp>

namespace qrec {

std::string_view to_string(Regime regime)
{
    switch (regime) {
        case Regime::subcritical:
            return "subcritical";
        case Regime::critical:
            return "critical";
        case Regime::supercritical:
            return "supercritical";
    }
    return "unknown";
}

Params classify(const BigRational &p)
{
    if (p <= BigRational(0) || p >= BigRational(1)) {
        throw domain_error("p = " + p.to_string() + " is outside (0, 1)");
    }
    const BigRational half(1, 2);
    Params out{p, Regime::critical, BigRational(1), BigRational(1)};
    if (p < half) {
        out.regime = Regime::subcritical;
    } else if (p > half) {
        out.regime = Regime::supercritical;
        out.r = (BigRational(1) - p) / p;
    }
    out.q = BigRational(2) * out.r * p;
    return out;
}

std::vector<ExactSample> iterate_exact(const Params &params, int n, int cap)
{
    if (n < 0) {
        throw domain_error("negative step count");
    }
    if (n > cap) {
        throw cap_exceeded("exact iteration to " + std::to_string(n) + " steps exceeds the cap of " + std::to_string(cap)
                           + " (iterate sizes double every step); use the fixed-precision iteration instead");
    }
    const BigRational one_minus_p = BigRational(1) - params.p;
    std::vector<ExactSample> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    BigRational a(0);
    out.push_back({0, a, params.r - a});
    for (int k = 1; k <= n; ++k) {
        a = one_minus_p + params.p * a * a;
        out.push_back({k, a, params.r - a});
    }
    return out;
}

ResidualStepper::ResidualStepper(const Params &params, int digits)
    : m_p(params.p), m_r(params.r, digits), m_two_r(params.r * BigRational(2), digits), m_b(params.r, digits),
      m_scratch(digits)
{
}

void ResidualStepper::advance()
{
    // b <- p * b * (2r - b)
    mpfr_sub(m_scratch.raw(), m_two_r.raw(), m_b.raw(), MPFR_RNDN);
    mpfr_mul(m_b.raw(), m_b.raw(), m_scratch.raw(), MPFR_RNDN);
    m_b *= m_p;
    ++m_k;
}

void ResidualStepper::advance_to(long n)
{
    while (m_k < n) {
        advance();
    }
}

RealOrbit iterate_real(const Params &params, long n, int digits, std::span<const long> sample_at)
{
    if (n < 0) {
        throw domain_error("negative step count");
    }
    std::vector<long> wanted(sample_at.begin(), sample_at.end());
    std::sort(wanted.begin(), wanted.end());
    wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());

    ResidualStepper step(params, digits);
    RealOrbit out{{0, PrecReal(digits), PrecReal(digits)}, {}};
    auto next = wanted.begin();
    for (;;) {
        while (next != wanted.end() && *next < step.k()) {
            ++next;
        }
        if (next != wanted.end() && *next == step.k()) {
            out.samples.push_back({step.k(), step.a(), step.b()});
            ++next;
        }
        if (step.k() >= n) {
            break;
        }
        step.advance();
    }
    out.last = {step.k(), step.a(), step.b()};
    return out;
}

std::vector<BigRational> logistic_iterate_exact(int n, int cap)
{
    if (n < 0) {
        throw domain_error("negative step count");
    }
    if (n > cap) {
        throw cap_exceeded("exact logistic iteration to " + std::to_string(n) + " steps exceeds the cap of "
                           + std::to_string(cap) + "; use the fixed-precision iteration instead");
    }
    std::vector<BigRational> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    BigRational alpha(1, 2);
    out.push_back(alpha);
    for (int k = 1; k <= n; ++k) {
        alpha = alpha * (BigRational(1) - alpha);
        out.push_back(alpha);
    }
    return out;
}

std::vector<PrecReal> logistic_iterate_real(int n, int digits)
{
    if (n < 0) {
        throw domain_error("negative step count");
    }
    std::vector<PrecReal> out;
    LogisticStepper step(digits);
    out.push_back(step.alpha());
    for (int k = 1; k <= n; ++k) {
        step.advance();
        out.push_back(step.alpha());
    }
    return out;
}

LogisticStepper::LogisticStepper(int digits) : m_alpha(BigRational(1, 2), digits), m_scratch(digits) {}

void LogisticStepper::advance()
{
    // alpha <- alpha - alpha^2
    mpfr_sqr(m_scratch.raw(), m_alpha.raw(), MPFR_RNDN);
    mpfr_sub(m_alpha.raw(), m_alpha.raw(), m_scratch.raw(), MPFR_RNDN);
    ++m_k;
}

} // namespace qrec
