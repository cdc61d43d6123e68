#pragma once

#include <string_view>

#include <qrec/prec_real.hpp>

namespace qrec {

// Euler-Mascheroni constant, embedded to 110 decimal places.
inline constexpr std::string_view euler_gamma_literal =
    "0.57721566490153286060651209008240243104215933593992359880576723488486772677766467093694706329174674951463144724";

// Highest working precision euler_gamma() can serve.
inline constexpr int euler_gamma_max_digits = 108;

// gamma at `digits` working precision; throws qrec::refusal above the
// embedded literal's reach.
PrecReal euler_gamma(int digits);

} // namespace qrec
