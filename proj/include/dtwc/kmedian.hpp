#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dtwc {

// Weighted k-median input over an explicit finite semimetric (dense row-major n x n).
struct FiniteMetricInstance {
    std::size_t n = 0;
    std::vector<double> dist;
    std::vector<double> weights;
    std::size_t k = 1;

    double at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }

    // Shape, k in [1, n], zero diagonal, symmetry, positive finite weights.
    void validate() const;

    static FiniteMetricInstance unit_weights(std::size_t n, std::vector<double> dist, std::size_t k);
};

struct MedianSolution {
    // Distinct instance indices, ascending.
    std::vector<std::size_t> centers;
    // Per point, the instance index of its nearest center (lowest index on ties).
    std::vector<std::size_t> assignment;
    double cost = 0.0;

    friend bool operator==(const MedianSolution&, const MedianSolution&) = default;
};

// Nearest-center assignment and weighted cost for an arbitrary non-empty center set.
MedianSolution assign_to_centers(const FiniteMetricInstance& inst, std::vector<std::size_t> centers);

// Single-swap local search from a farthest-point start whose first center is drawn from `seed`.
// Each round applies the best swap if it lowers the cost to at most (1 - eps / (8k)) of the
// current value; stops at a local optimum under that rule or after 10 n k rounds.
MedianSolution kmedian_local_search(const FiniteMetricInstance& inst, double eps, std::uint64_t seed);

inline constexpr double kBruteSubsetCap = 1e6;

// Exact optimum over all k-subsets; throws ResourceGuardError when C(n, k) > kBruteSubsetCap.
MedianSolution kmedian_brute(const FiniteMetricInstance& inst);

double binomial(std::size_t n, std::size_t k);

}  // namespace dtwc
