#ifndef SLMAT_TYPES_HPP
#define SLMAT_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace slmat {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;

/// Error codes used across the library. The CLI maps Validation
/// errors to exit code 1 and Numerical errors to exit code 2.
enum class ErrorKind { Validation, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& code() const { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

inline Error validation_error(const std::string& code, const std::string& what) {
    return Error(ErrorKind::Validation, code, what);
}

inline Error numerical_error(const std::string& code, const std::string& what) {
    return Error(ErrorKind::Numerical, code, what);
}

}  // namespace slmat

#endif
