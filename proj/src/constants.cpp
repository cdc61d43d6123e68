#include <qrec/constants.hpp>

#include <string>

#include <qrec/errors.hpp>

namespace qrec {

PrecReal euler_gamma(int digits)
{
    if (digits > euler_gamma_max_digits) {
        throw refusal("Euler-Mascheroni constant is embedded to 110 places; precision " + std::to_string(digits)
                      + " exceeds the supported " + std::to_string(euler_gamma_max_digits));
    }
    return PrecReal(euler_gamma_literal, digits);
}

} // namespace qrec
