#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "dtwc/curve.hpp"

namespace dtwc {

inline constexpr std::size_t kDefaultClosureCap = 20000;

// Symmetric nonnegative distance between items i and j of an indexed set.
using DistanceFn = std::function<double(std::size_t, std::size_t)>;

// Shortest-path completion of a complete weighted graph. Both matrices are dense row-major n x n.
// dist(i,i) = 0, dist symmetric, dist <= base entrywise, triangle inequality up to rounding.
struct MetricClosure {
    std::vector<std::string> ids;
    std::size_t n = 0;
    std::vector<double> base;
    std::vector<double> dist;

    double at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
    double base_at(std::size_t i, std::size_t j) const { return base[i * n + j]; }
};

// base = all-pairs dtw_p; dist = shortest paths. Throws ResourceGuardError when |X| > cap.
MetricClosure build_closure(const CurveSet& set, double p, std::size_t cap = kDefaultClosureCap);

// Closure of an arbitrary base distance on n items, evaluated once per unordered pair.
MetricClosure closure_of(std::size_t n, const DistanceFn& base, std::vector<std::string> ids = {},
                         std::size_t cap = kDefaultClosureCap);

// All-pairs shortest paths by one array-based Dijkstra per source (O(n^2) each).
std::vector<double> all_pairs_shortest_paths(const std::vector<double>& base, std::size_t n);

// Per item, the shortest-path distance to the nearest member of `sources`, from a single
// Dijkstra run seeded with every source at distance 0. Equals the minimum over sources of
// closure.dist.
std::vector<double> distances_from_set(const MetricClosure& closure, const std::vector<std::size_t>& sources);

// Same over the complete graph on n items weighted by `base`; each edge is evaluated at most once.
std::vector<double> distances_from_set(std::size_t n, const DistanceFn& base, const std::vector<std::size_t>& sources);

std::vector<double> distances_from_set(const CurveSet& set, double p, const std::vector<std::size_t>& sources);

}  // namespace dtwc
