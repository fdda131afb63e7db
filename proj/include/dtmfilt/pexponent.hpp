#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "dtmfilt/errors.hpp"

namespace dtmf {

/// Exponent of the radius functions: a finite real p >= 1 or infinity.
class PExponent {
public:
    /// Throws ParameterError unless p >= 1 (p = +inf is accepted).
    explicit PExponent(double p) : value_(p) {
        if (std::isnan(p) || p < 1.0) {
            throw ParameterError("p must be >= 1 or inf, got " + std::to_string(p));
        }
    }

    static PExponent infinity() { return PExponent(std::numeric_limits<double>::infinity()); }

    bool is_infinite() const noexcept { return std::isinf(value_); }
    double value() const noexcept { return value_; }

    /// kappa(p) = 1 - 1/p, equal to 1 for p = inf.
    double kappa() const noexcept { return is_infinite() ? 1.0 : 1.0 - 1.0 / value_; }

    /// 2^(1/p), equal to 1 for p = inf.
    double two_pow_inverse() const noexcept { return is_infinite() ? 1.0 : std::pow(2.0, 1.0 / value_); }

    /// Accepts a decimal number or the literal "inf".
    static PExponent parse(const std::string& text);

    std::string to_string() const;

    friend bool operator==(const PExponent&, const PExponent&) = default;

private:
    double value_;
};

}  // namespace dtmf
