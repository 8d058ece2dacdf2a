#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace dtwc {

// Arithmetic for sums of p-th powers, rooted once at the end. Above kLogSpaceExponent the sums
// are kept as logarithms so large exponents neither overflow nor underflow.
class PowerSpace {
public:
    static constexpr double kLogSpaceExponent = 32.0;

    explicit PowerSpace(double p) : p_(p), log_(p > kLogSpaceExponent) {}

    double p() const noexcept { return p_; }

    // Additive identity.
    double zero() const noexcept { return log_ ? -std::numeric_limits<double>::infinity() : 0.0; }

    double term(double d) const noexcept {
        if (log_) {
            return d == 0.0 ? -std::numeric_limits<double>::infinity() : p_ * std::log(d);
        }
        if (p_ == 1.0) return d;
        if (p_ == 2.0) return d * d;
        return std::pow(d, p_);
    }

    double add(double x, double y) const noexcept {
        if (!log_) return x + y;
        if (x == y) return x + std::log(2.0);
        const double hi = std::max(x, y);
        const double lo = std::min(x, y);
        return hi + std::log1p(std::exp(lo - hi));
    }

    double root(double acc) const noexcept {
        if (log_) return std::exp(acc / p_);
        if (p_ == 1.0) return acc;
        if (p_ == 2.0) return std::sqrt(acc);
        return std::pow(acc, 1.0 / p_);
    }

private:
    double p_;
    bool log_;
};

}  // namespace dtwc
