#include <qrec/sums.hpp>

#include <algorithm>
#include <array>
#include <string>

#include <qrec/constants.hpp>
#include <qrec/critical.hpp>
#include <qrec/errors.hpp>

namespace qrec::sums {

using series::AsymSeries;
using series::CoefficientTable;

namespace {

constexpr int guard_digits = 20;

// B_2, B_4, ..., B_12
const std::array<BigRational, 6> &bernoulli_even()
{
    static const std::array<BigRational, 6> values{BigRational(1, 6),  BigRational(-1, 30), BigRational(1, 42),
                                                   BigRational(-1, 30), BigRational(5, 66),  BigRational(-691, 2730)};
    return values;
}

BigRational factorial(int n)
{
    BigRational out(1);
    for (int k = 2; k <= n; ++k) {
        out *= BigRational(k);
    }
    return out;
}

// d^(2l-1) f / dk^(2l-1) for l = 1..count.
std::vector<AsymSeries> odd_derivatives(const AsymSeries &f, int count)
{
    std::vector<AsymSeries> out;
    AsymSeries d = series::derivative(f);
    for (int l = 1; l <= count; ++l) {
        out.push_back(d);
        d = series::derivative(series::derivative(d));
    }
    return out;
}

enum class Kind { power, regularized, resummed };

struct Summand {
    Kind kind;
    int m;

    // Adds the k-th term to `acc`.
    void accumulate(const PrecReal &alpha, long k, PrecReal &acc, PrecReal &scratch) const
    {
        switch (kind) {
            case Kind::power:
                mpfr_pow_ui(scratch.raw(), alpha.raw(), static_cast<unsigned long>(m), MPFR_RNDN);
                break;
            case Kind::regularized:
                if (k == 0) {
                    mpfr_set(scratch.raw(), alpha.raw(), MPFR_RNDN);
                } else {
                    mpfr_set_si(scratch.raw(), k, MPFR_RNDN);
                    mpfr_ui_div(scratch.raw(), 1, scratch.raw(), MPFR_RNDN);
                    mpfr_sub(scratch.raw(), alpha.raw(), scratch.raw(), MPFR_RNDN);
                }
                break;
            case Kind::resummed:
                mpfr_ui_sub(scratch.raw(), 1, alpha.raw(), MPFR_RNDN);
                mpfr_div(scratch.raw(), alpha.raw(), scratch.raw(), MPFR_RNDN);
                mpfr_mul(scratch.raw(), scratch.raw(), alpha.raw(), MPFR_RNDN);
                break;
        }
        mpfr_add(acc.raw(), acc.raw(), scratch.raw(), MPFR_RNDN);
    }

    // Asymptotic form of the summand from alpha's series through `order`.
    AsymSeries asymptotic(const CoefficientTable &table, int order) const
    {
        switch (kind) {
            case Kind::power: {
                const int declared = order + m - 1;
                const AsymSeries alpha = detail::alpha_series(table, order, declared);
                AsymSeries out = alpha;
                for (int e = 2; e <= m; ++e) {
                    out = out * alpha;
                }
                return out;
            }
            case Kind::regularized: {
                AsymSeries out = detail::alpha_series(table, order, order);
                out.add(1, 0, CPoly(-1));
                return out;
            }
            case Kind::resummed: {
                const AsymSeries alpha = detail::alpha_series(table, order, order + 1);
                AsymSeries power = alpha * alpha;
                AsymSeries out = power;
                for (int e = 3; e <= order + 1; ++e) {
                    power = power * alpha;
                    out += power;
                }
                return out;
            }
        }
        return AsymSeries(order);
    }
};

SumResult run(const Summand &summand, int digits, const TailConfig &config)
{
    if (config.series_order < 2) {
        throw domain_error("tail series order must be at least 2");
    }
    const int precision = digits + guard_digits;
    const CoefficientTable table = series::solve_coefficients(config.series_order + 1);
    const AsymSeries coarse = summand.asymptotic(table, config.series_order);
    const AsymSeries fine = summand.asymptotic(table, config.series_order + 1);
    const PrecReal target = pow10(-(digits + 2), precision);
    const PrecReal C = config.C.with_digits(precision);

    LogisticStepper step(precision);
    PrecReal partial(0, precision);
    PrecReal scratch(precision);
    long N = std::max(config.initial_terms, 10L);
    for (;;) {
        while (step.k() <= N) {
            summand.accumulate(step.alpha(), step.k(), partial, scratch);
            step.advance();
        }
        const PrecReal tail_fine = detail::tail_sum(fine, N, C, precision);
        const PrecReal tail_coarse = detail::tail_sum(coarse, N, C, precision);
        PrecReal error = abs(tail_fine - tail_coarse) + detail::tail_remainder_estimate(fine, N, C, precision)
                         + PrecReal(N + 1, precision) * pow10(2 - precision, precision);
        if (error < target) {
            return {summand.m, partial + tail_fine, N + 1, tail_fine, error, digits};
        }
        if (N > config.max_terms / 10) {
            throw refusal("sum did not reach " + std::to_string(digits) + " digits within " + std::to_string(config.max_terms)
                          + " terms (error estimate " + error.to_sci() + ")");
        }
        N *= 10;
    }
}

} // namespace

namespace detail {

AsymSeries alpha_series(const CoefficientTable &table, int order, int series_order)
{
    AsymSeries out(series_order);
    for (const auto &[t, c] : table.entries) {
        if (t.i >= 1 && t.i <= order) {
            out.set(t.i, t.j, c * BigRational(-1, 2));
        }
    }
    return out;
}

PrecReal tail_sum(const AsymSeries &f, long N, const PrecReal &C, int digits, int bernoulli_terms)
{
    if (bernoulli_terms < 0 || bernoulli_terms > static_cast<int>(bernoulli_even().size()) - 1) {
        throw domain_error("unsupported number of Bernoulli corrections");
    }
    const PrecReal n(N, digits);
    PrecReal out = series::tail_integral(f).eval(n, C, digits);
    out -= f.eval(n, C, digits) / 2;
    const auto derivs = odd_derivatives(f, bernoulli_terms);
    for (int l = 1; l <= bernoulli_terms; ++l) {
        const BigRational weight = bernoulli_even()[l - 1] / factorial(2 * l);
        out -= derivs[l - 1].eval(n, C, digits) * weight;
    }
    return out;
}

PrecReal tail_remainder_estimate(const AsymSeries &f, long N, const PrecReal &C, int digits, int bernoulli_terms)
{
    const int l = bernoulli_terms + 1;
    const auto derivs = odd_derivatives(f, l);
    const BigRational weight = bernoulli_even()[l - 1] / factorial(2 * l);
    return abs(derivs[l - 1].eval(PrecReal(N, digits), C, digits) * weight);
}

} // namespace detail

TailConfig default_tail_config()
{
    return TailConfig{critical::estimate_C(100'000, 8, 50).C};
}

S2Witness s2_identity_check(int n, int cap)
{
    if (n < 0) {
        throw domain_error("negative step count");
    }
    if (n > cap) {
        throw cap_exceeded("s2 identity check at n = " + std::to_string(n) + " exceeds the exact-iteration cap of "
                           + std::to_string(cap));
    }
    const std::vector<BigRational> alpha = logistic_iterate_exact(n + 1, cap + 1);
    BigRational lhs(0);
    for (int k = 0; k <= n; ++k) {
        lhs += alpha[k] * alpha[k];
    }
    BigRational rhs = BigRational(1, 2) - alpha[n + 1];
    const bool holds = lhs == rhs;
    return {n, std::move(lhs), std::move(rhs), holds};
}

SumResult power_sum(int m, int digits, const TailConfig &config)
{
    if (m < 2) {
        throw domain_error("power sums need m >= 2 (m = 1 diverges; use the regularized sum)");
    }
    if (digits < 1 || digits > max_power_sum_digits) {
        throw refusal("power sums support 1.." + std::to_string(max_power_sum_digits) + " digits, requested "
                      + std::to_string(digits));
    }
    return run(Summand{Kind::power, m}, digits, config);
}

SumResult regularized_s1(int digits, const TailConfig &config)
{
    if (digits < 1 || digits > max_s1_digits) {
        throw refusal("the regularized sum supports 1.." + std::to_string(max_s1_digits) + " digits, requested "
                      + std::to_string(digits));
    }
    return run(Summand{Kind::regularized, 1}, digits, config);
}

SumResult resummed_power_sums(int digits, const TailConfig &config)
{
    if (digits < 1 || digits > max_power_sum_digits) {
        throw refusal("the resummed power sum supports 1.." + std::to_string(max_power_sum_digits)
                      + " digits, requested " + std::to_string(digits));
    }
    return run(Summand{Kind::resummed, 0}, digits, config);
}

BootstrapResult bootstrap_check(int digits, const TailConfig &config)
{
    if (digits < 1 || digits > 12) {
        throw refusal("the bootstrap check supports 1..12 digits, requested " + std::to_string(digits));
    }
    const int inner = std::min(digits + 2, max_s1_digits);
    const int precision = inner + guard_digits;
    SumResult s1 = regularized_s1(inner, config);
    SumResult higher = resummed_power_sums(inner, config);
    PrecReal gamma = euler_gamma(precision);
    PrecReal c = config.C.with_digits(precision) / 2;
    PrecReal assembled = gamma + s1.value + higher.value + 2;
    PrecReal residual = c - assembled;
    PrecReal budget = s1.error_estimate + higher.error_estimate;
    return {std::move(c), std::move(gamma), std::move(s1), std::move(higher), std::move(assembled),
            std::move(residual), std::move(budget), digits};
}

DivergenceDiagnostic harmonic_divergence_diagnostic(long N, int precision, const PrecReal &s1)
{
    if (N < 100) {
        throw domain_error("the divergence diagnostic needs N >= 100");
    }
    LogisticStepper step(precision);
    PrecReal partial(0, precision);
    while (step.k() <= N) {
        partial += step.alpha();
        step.advance();
    }
    PrecReal predicted = log(PrecReal(N, precision)) + euler_gamma(precision) + s1.with_digits(precision);
    return {N, std::move(partial), std::move(predicted)};
}

} // namespace qrec::sums
