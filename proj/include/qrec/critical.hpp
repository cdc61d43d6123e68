#pragma once

#include <span>
#include <utility>
#include <vector>

#include <qrec/asym_series.hpp>
#include <qrec/prec_real.hpp>

namespace qrec::critical {

// Estimate of the free constant C in a_k ~ 1 - 2/k + (2 ln k + C)/k^2 - ...
// at p = 1/2, obtained by solving eval_series(N, C) = a_N for C.
struct CriticalEstimate {
    PrecReal C;
    long N;
    int order;
    int precision;
    // First omitted series term, 10 ln(N)^order / N^(order+1), in units of a_N.
    PrecReal truncation_bound;
    // Accumulated rounding in a_N, 3 N 10^(2-precision).
    PrecReal rounding_bound;
    // |eval_series(N, C) - a_N| at the returned C.
    PrecReal newton_residual;
    // (truncation + rounding + residual) / |d series / dC|.
    PrecReal C_uncertainty;
    int reliable_digits;
    int newton_steps;
};

inline constexpr long default_depth = 1'000'000;
inline constexpr int default_order = 6;
inline constexpr int default_precision = 60;
inline constexpr int max_newton_steps = 50;

// Throws qrec::refusal for N < 100, order < 3, when rounding would dominate the
// series truncation, when Newton stalls, or when the result leaves (3.5, 3.6).
CriticalEstimate estimate_C(long N, int order, int precision);
CriticalEstimate estimate_C(long N, int order, int precision, const series::CoefficientTable &table);

struct LittleC {
    // c = C/2, the constant in alpha_k ~ 1/k - (ln k + c)/k^2 + ...
    PrecReal c;
    PrecReal exp_c_minus_1;
};

LittleC little_c(const PrecReal &C);

struct ResidualPoint {
    long k;
    PrecReal residual;
};

// |a_k - eval_series(k)| for each k (all >= 10), using one orbit pass.
std::vector<ResidualPoint> residual_order_check(int order, std::span<const long> ks, int precision, const PrecReal &C);

// Least-squares slope of log(residual / ln(k)^order) against log k. The first
// omitted term is proportional to ln(k)^order / k^(order+1), so the slope
// approaches -(order+1).
double residual_slope(std::span<const ResidualPoint> points, int order);

} // namespace qrec::critical
