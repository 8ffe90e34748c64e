#pragma once

#include <stdexcept>
#include <string>

namespace rbfode {

// A requested operation is outside a component's declared capabilities
// (e.g. third derivatives of a kernel family that only supports two).
class capability_error : public std::logic_error {
public:
    explicit capability_error(const std::string& what) : std::logic_error(what) {}
};

// A matrix is singular to working precision (pivot below threshold).
class singular_matrix_error : public std::runtime_error {
public:
    explicit singular_matrix_error(const std::string& what) : std::runtime_error(what) {}
};

// An iterative numeric procedure failed to reach its tolerance
// (quadrature, step-size underflow, bracketing failure, ...).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// An initial-value integration escaped to infinity before reaching the
// requested endpoint; `direction` is the sign of the escaping component.
class divergence_error : public numeric_error {
public:
    divergence_error(const std::string& what, int direction)
        : numeric_error(what), direction_(direction) {}
    int direction() const noexcept { return direction_; }

private:
    int direction_;
};

// A root-bracketing precondition failed; carries the endpoint values so the
// caller can report them.
class bracketing_error : public numeric_error {
public:
    bracketing_error(const std::string& what, double f_lo, double f_hi)
        : numeric_error(what), f_lo_(f_lo), f_hi_(f_hi) {}
    double f_lo() const noexcept { return f_lo_; }
    double f_hi() const noexcept { return f_hi_; }

private:
    double f_lo_;
    double f_hi_;
};

}  // namespace rbfode
