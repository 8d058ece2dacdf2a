#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "dtwc/curve.hpp"

namespace dtwc {

// 0-based (index into first curve, index into second curve).
using IndexPair = std::pair<std::size_t, std::size_t>;

// Starts at (0,0), ends at (m-1, l-1), every step in {(1,0),(0,1),(1,1)}.
using Traversal = std::vector<IndexPair>;

struct DtwResult {
    double value = 0.0;
    Traversal traversal;
};

// Exact p-DTW by dynamic programming over p-th-power partial costs. Back-pointer ties prefer the
// diagonal step, then (0,1), then (1,0). Symmetric in its arguments bit for bit.
DtwResult dtw(const Curve& a, const Curve& b, double p);

// Same value as dtw(a, b, p).value without traversal recovery; O(min) memory.
double dtw_value(const Curve& a, const Curve& b, double p);

struct BruteDtwResult {
    DtwResult best;
    std::size_t traversals = 0;
};

inline constexpr std::size_t kBruteDtwMaxCells = 36;

// Enumerates every traversal. Throws ResourceGuardError when m * l > kBruteDtwMaxCells.
BruteDtwResult dtw_brute(const Curve& a, const Curve& b, double p);

bool is_valid_traversal(const Traversal& t, std::size_t m, std::size_t l);

// (sum over pairs of |a_i - b_j|^p)^(1/p), evaluated directly.
double traversal_cost(const Curve& a, const Curve& b, const Traversal& t, double p);

// Quantized ball test of tau against sigma at radius r. Each pairwise distance is rounded up to
// the grid z * e' * r with z the least positive integer for which z * e' * r strictly exceeds it,
// where e' = eps / (m + l)^(1/p); grid values beyond floor(1/e' + 1) are infinite. Returns true
// iff the DP optimum over the rounded costs is at most (1 + eps) * r.
// Returns true whenever dtw <= r and false whenever dtw > (1 + eps) * r; nondecreasing in r.
bool ball_membership(const Curve& tau, const Curve& sigma, double r, double p, double eps);

// (1 + eps)^z.
double grid_radius(double eps, std::int64_t z);

struct QuantizedDistance {
    double value = 0.0;
    // value == (1 + eps)^(exponent + 1); empty iff value is the exact zero.
    std::optional<std::int64_t> exponent;

    bool is_zero() const noexcept { return !exponent.has_value(); }
};

// Least grid radius (1 + eps)^(z + 1) at which ball_membership accepts, where (1 + eps)^z is the
// largest grid radius at which it rejects. Exactly 0 when dtw == 0.
// Satisfies dtw / (1 + eps) <= value < (1 + eps) * dtw.
QuantizedDistance adtw(const Curve& sigma, const Curve& tau, double p, double eps);

}  // namespace dtwc
