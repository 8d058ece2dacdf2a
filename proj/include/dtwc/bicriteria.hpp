#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "dtwc/curve.hpp"
#include "dtwc/kmedian.hpp"
#include "dtwc/metric_closure.hpp"
#include "dtwc/simplify.hpp"

namespace dtwc {

struct SamplingParams {
    std::size_t a = 2;
    std::size_t b = 4;
    // Sample size min(n, ceil(a * sqrt(k n ln(k+1)))).
    std::size_t s = 0;
    // Recheck-set size min(n, ceil(b k n ln(k+1) / s)).
    std::size_t m_size = 0;
};

// a = max(2, ceil(sqrt(max(1, ln(1/eps))) / eps)), b = a^2.
SamplingParams sampling_params(std::size_t n, std::size_t k, double eps);

// Metric k-median black box: returns at most inst.k distinct instance indices.
using MedianSolver = std::function<std::vector<std::size_t>(const FiniteMetricInstance&, std::uint64_t seed)>;

MedianSolver local_search_solver(double eps);

// Samples S, solves on the closure of phi over S, measures every item's closure distance to
// that answer with one multi-source shortest-path run, rechecks the m_size farthest items the
// same way and returns the union (at most 2k indices, ascending). Items are 0..n-1.
std::vector<std::size_t> k_routine(std::size_t n, const DistanceFn& phi, std::size_t k, double eps,
                                   const MedianSolver& solver, std::uint64_t seed);

// Outer level: k_routine on a sample, raw-phi distances to its answer, k_routine on the m_size
// farthest items, union (at most 4k indices, ascending).
std::vector<std::size_t> k_median_sampled(std::size_t n, const DistanceFn& phi, std::size_t k, double eps,
                                          const MedianSolver& solver, std::uint64_t seed);

struct BicriteriaSolution {
    // At most 4k simplified input curves.
    std::vector<Curve> centers;
    // Input index whose simplification each center is.
    std::vector<std::size_t> center_sources;
    // Per input curve: position in `centers` of its nearest center (lowest on ties) and dtw to it.
    std::vector<std::size_t> assignment;
    std::vector<double> distances;
    double cost = 0.0;
    std::size_t ell = 1;
};

// Nearest-center assignment of every input curve by dtw_p.
BicriteriaSolution assign_bicriteria(const CurveSet& set, std::vector<Curve> centers,
                                     std::vector<std::size_t> center_sources, std::size_t ell, double p);

// 2-approximate l-simplifications, k_median_sampled over them under dtw_p with local search as the
// black box, repeated `repetitions` times with derived seeds; keeps the cheapest over the input.
BicriteriaSolution bicriteria_klmedian(const CurveSet& set, std::size_t k, std::size_t ell, double p, double eps,
                                       std::uint64_t seed, std::size_t repetitions = 3);

// Same, reusing precomputed simplifications (one per input curve, same order).
BicriteriaSolution bicriteria_klmedian(const CurveSet& set, const std::vector<Simplification>& simplified,
                                       std::size_t k, std::size_t ell, double p, double eps, std::uint64_t seed,
                                       std::size_t repetitions = 3);

}  // namespace dtwc
