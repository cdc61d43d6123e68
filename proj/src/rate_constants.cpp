#include <qrec/rate_constants.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <qrec/errors.hpp>

namespace qrec::rate {

namespace {

constexpr int guard_digits = 20;
constexpr int max_confirmation_rounds = 3;

Params checked_params(const BigRational &p)
{
    Params params = classify(p);
    if (params.regime == Regime::critical) {
        throw refusal("p = 1/2 is the critical regime: convergence is not exponential, use the critical-constant computation");
    }
    if (params.q > max_rate_base()) {
        throw refusal("rate base q = 2rp = " + params.q.to_string() + " exceeds " + max_rate_base().to_string()
                      + "; the product would need too many factors this close to p = 1/2");
    }
    return params;
}

PrecReal tail_bound_for(const BigRational &q, long factors, int digits)
{
    PrecReal qr(q, digits);
    return pow(qr, factors) / PrecReal(BigRational(1) - q, digits);
}

} // namespace

BigRational max_rate_base()
{
    return BigRational(999, 1000);
}

long factors_needed(const BigRational &q, int digits)
{
    const int work = digits + 10;
    const PrecReal target = pow10(-(digits + 2), work);
    const double estimate = (-(digits + 2) * std::log(10.0) + std::log1p(-q.to_double())) / std::log(q.to_double());
    long k = std::max(1L, static_cast<long>(std::floor(estimate)) - 2);
    while (k > 1 && tail_bound_for(q, k - 1, work) < target) {
        --k;
    }
    while (!(tail_bound_for(q, k, work) < target)) {
        ++k;
    }
    return k;
}

PrecReal partial_product(const Params &params, long factors, int working_digits)
{
    ResidualStepper step(params, working_digits);
    const PrecReal two_r(params.r * BigRational(2), working_digits);
    PrecReal log_sum(0, working_digits);
    PrecReal factor(working_digits);
    for (long j = 0; j < factors; ++j) {
        // ln(1 - b_j/(2r))
        mpfr_div(factor.raw(), step.b().raw(), two_r.raw(), MPFR_RNDN);
        mpfr_neg(factor.raw(), factor.raw(), MPFR_RNDN);
        mpfr_log1p(factor.raw(), factor.raw(), MPFR_RNDN);
        log_sum += factor;
        step.advance();
    }
    return PrecReal(params.r, working_digits) * exp(log_sum);
}

RateConstantResult rate_constant_at(const BigRational &p, int digits, int working_digits)
{
    if (digits < 1) {
        throw domain_error("digits must be positive");
    }
    const Params params = checked_params(p);
    const long factors = factors_needed(params.q, digits);
    return {p, partial_product(params, factors, working_digits), factors,
            tail_bound_for(params.q, factors, working_digits), digits};
}

RateConstantResult rate_constant(const BigRational &p, int digits)
{
    int working = digits + guard_digits;
    RateConstantResult first = rate_constant_at(p, digits, working);
    for (int round = 0; round < max_confirmation_rounds; ++round) {
        working += guard_digits;
        RateConstantResult second = rate_constant_at(p, digits, working);
        if (first.C.to_fixed(digits) == second.C.to_fixed(digits)) {
            return second;
        }
        first = std::move(second);
    }
    throw refusal("could not confirm " + std::to_string(digits) + " digits of C(" + p.to_string() + ")");
}

std::vector<BigRational> table1_parameters()
{
    return {BigRational(1, 5), BigRational(1, 4), BigRational(1, 3), BigRational(2, 5),
            BigRational(3, 5), BigRational(2, 3), BigRational(3, 4), BigRational(4, 5)};
}

std::vector<RateConstantResult> table1(int digits)
{
    std::vector<RateConstantResult> out;
    for (const auto &p : table1_parameters()) {
        out.push_back(rate_constant(p, digits));
    }
    return out;
}

std::vector<std::pair<long, PrecReal>> convergence_diagnostic(const BigRational &p, long kmax, int working_digits)
{
    const Params params = classify(p);
    if (params.regime == Regime::critical) {
        throw refusal("p = 1/2 has no geometric rate; the diagnostic needs p != 1/2");
    }
    ResidualStepper step(params, working_digits);
    const PrecReal q(params.q, working_digits);
    PrecReal q_power(1, working_digits);
    std::vector<std::pair<long, PrecReal>> out;
    for (long k = 0; k <= kmax; ++k) {
        out.emplace_back(k, step.b() / q_power);
        step.advance();
        q_power *= q;
    }
    return out;
}

} // namespace qrec::rate
