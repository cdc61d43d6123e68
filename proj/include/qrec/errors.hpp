#pragma once

#include <stdexcept>
#include <string>

namespace qrec {

// Input outside the mathematical domain (p not in (0,1), malformed rational, ...).
class domain_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Exact iteration requested beyond the configured step cap.
class cap_exceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

// A computation declines to run for the given parameters (near-critical q,
// insufficient precision, unsupported digit count, ...).
class refusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Coefficient matching produced an equation it cannot solve.
class derivation_error : public std::runtime_error {
public:
    derivation_error(int i, int j, const std::string &what)
        : std::runtime_error("coefficient c[" + std::to_string(i) + "][" + std::to_string(j) + "]: " + what),
          m_i(i), m_j(j)
    {
    }
    int i() const noexcept { return m_i; }
    int j() const noexcept { return m_j; }

private:
    int m_i;
    int m_j;
};

} // namespace qrec
