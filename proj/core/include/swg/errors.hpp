#pragma once

#include <stdexcept>
#include <string>

namespace swg {

/// A Gram matrix failed to factorize; indicates a defective basis.
class SingularMatrixError : public std::runtime_error {
public:
    explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/// Time stepping produced non-finite or huge coefficients, which an explicit
/// scheme does under a Courant-number violation.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, int step)
        : std::runtime_error(what + " at step " + std::to_string(step)), step_(step) {}
    int step() const { return step_; }

private:
    int step_;
};

}  // namespace swg
