#include <qrec/critical.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include <qrec/errors.hpp>
#include <qrec/recurrence.hpp>

namespace qrec::critical {

namespace {

struct PolyValue {
    PrecReal value;
    PrecReal slope;
};

PolyValue horner(const std::vector<PrecReal> &coeffs, const PrecReal &x)
{
    PrecReal value(0, x.digits());
    PrecReal slope(0, x.digits());
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        slope *= x;
        slope += value;
        value *= x;
        value += *it;
    }
    return {value, slope};
}

} // namespace

CriticalEstimate estimate_C(long N, int order, int precision)
{
    return estimate_C(N, order, precision, series::solve_coefficients(std::max(order, 3)));
}

CriticalEstimate estimate_C(long N, int order, int precision, const series::CoefficientTable &table)
{
    if (N < 100) {
        throw refusal("iteration depth N = " + std::to_string(N) + " is below the minimum of 100");
    }
    if (order < 3) {
        throw refusal("series order " + std::to_string(order) + " is below the minimum of 3");
    }
    if (table.max_order < order) {
        throw domain_error("coefficient table of order " + std::to_string(table.max_order) + " cannot serve order "
                           + std::to_string(order));
    }
    const PrecReal n_real(N, precision);
    const PrecReal ln_n = log(n_real);
    PrecReal truncation = PrecReal(10, precision) * pow(ln_n, order) / pow(n_real, order + 1);
    PrecReal rounding = PrecReal(3 * N, precision) * pow10(2 - precision, precision);
    if (!(rounding < truncation)) {
        throw refusal("precision " + std::to_string(precision) + " is insufficient for depth N = " + std::to_string(N)
                      + " at order " + std::to_string(order) + ": rounding bound " + rounding.to_sci()
                      + " would exceed the series truncation bound " + truncation.to_sci());
    }

    ResidualStepper step(classify(BigRational(1, 2)), precision);
    step.advance_to(N);
    const PrecReal deficit = step.b(); // 1 - a_N

    // Solve sum_d coeffs[d] C^d = a_N - 1 = -deficit.
    const std::vector<PrecReal> coeffs = series::collapse_in_C(table, N, precision, order);
    PrecReal x = (PrecReal(2, precision) / deficit - n_real - ln_n) * 2;
    const PrecReal tolerance = pow10(3 - precision, precision);
    int steps = 0;
    PolyValue pv = horner(coeffs, x);
    for (;;) {
        if (steps >= max_newton_steps) {
            throw refusal("Newton iteration for C did not converge in " + std::to_string(max_newton_steps)
                          + " steps (last iterate " + x.to_sci(20) + ", residual " + (pv.value + deficit).to_sci() + ")");
        }
        if (pv.slope.is_zero()) {
            throw refusal("Newton iteration for C hit a zero derivative at " + x.to_sci(20));
        }
        const PrecReal delta = (pv.value + deficit) / pv.slope;
        x -= delta;
        ++steps;
        pv = horner(coeffs, x);
        if (abs(delta) <= tolerance * abs(x)) {
            break;
        }
    }
    if (!(x > PrecReal("3.5", precision) && x < PrecReal("3.6", precision))) {
        throw refusal("critical constant estimate " + x.to_sci(20) + " left the sanity window (3.5, 3.6); N = "
                      + std::to_string(N) + " is too shallow for order " + std::to_string(order));
    }
    PrecReal residual = abs(pv.value + deficit);
    PrecReal uncertainty = (truncation + rounding + residual) / abs(pv.slope);
    const double lg = log10_abs(uncertainty);
    const int reliable = std::clamp(static_cast<int>(std::floor(-lg)), 0, precision);
    return {x, N, order, precision, truncation, rounding, residual, uncertainty, reliable, steps};
}

LittleC little_c(const PrecReal &C)
{
    PrecReal c = C / 2;
    PrecReal e = exp(c - 1);
    return {c, e};
}

std::vector<ResidualPoint> residual_order_check(int order, std::span<const long> ks, int precision, const PrecReal &C)
{
    for (long k : ks) {
        if (k < 10) {
            throw domain_error("residual check needs k >= 10, got " + std::to_string(k));
        }
    }
    const series::CoefficientTable table = series::solve_coefficients(std::max(order, 2));
    const long deepest = ks.empty() ? 0 : *std::max_element(ks.begin(), ks.end());
    const RealOrbit orbit = iterate_real(classify(BigRational(1, 2)), deepest, precision, ks);
    std::vector<ResidualPoint> out;
    for (const auto &sample : orbit.samples) {
        const PrecReal predicted = series::eval_series(table, sample.k, C, precision, order);
        out.push_back({sample.k, abs(sample.a - predicted)});
    }
    return out;
}

double residual_slope(std::span<const ResidualPoint> points, int order)
{
    if (points.size() < 2) {
        throw domain_error("slope fit needs at least two points");
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto &pt : points) {
        const double lk = std::log(static_cast<double>(pt.k));
        const double x = lk;
        const double y = log10_abs(pt.residual) * std::log(10.0) - order * std::log(lk);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(points.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace qrec::critical
