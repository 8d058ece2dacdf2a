#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

#include "dtwc/curve.hpp"

namespace dtwc {

struct Simplification {
    Curve curve;
    // (sum over parts of sum over members of |member - part center|^p)^(1/p).
    double cost = 0.0;
    // Index of the first input vertex of each part; part i covers [starts[i], starts[i+1]).
    std::vector<std::size_t> starts;
};

enum class SimplifyMethod { two_approx, eps1, vertex, exact_p2 };

SimplifyMethod parse_simplify_method(std::string_view name);

// Optimal contiguous partition into min(l, m) parts, each part centered at its medoid
// (the member minimizing the part's cost, lowest index on ties). m <= l returns the input.
// Within a factor 2 of the best complexity-l curve.
Simplification simplify_2approx(const Curve& sigma, std::size_t ell, double p);

// p = 1. Parts centered at a Weiszfeld geometric median, so the cost is within (1 + eps) of the
// best complexity-l curve whenever the inner solver converges. `seed` is accepted for interface
// stability; the inner solver is deterministic.
Simplification simplify_eps_p1(const Curve& sigma, std::size_t ell, double eps, std::uint64_t seed = 0);

// Best complexity-l curve whose vertices are vertices of sigma: each part may be centered at any
// vertex of sigma. Requires l <= m.
Simplification simplify_vertex_restricted(const Curve& sigma, std::size_t ell, double p = 1.0);

// p = 2. Parts centered at their centroid, which makes the partition optimum exact.
Simplification simplify_exact_p2(const Curve& sigma, std::size_t ell);

// Applies `method` to every curve, in parallel, preserving order and ids.
std::vector<Simplification> simplify_all(const CurveSet& set, std::size_t ell, double p, SimplifyMethod method,
                                         double eps = 0.1);

// Weiszfeld iteration started at the coordinate-wise median; returns the cheapest iterate seen.
Point geometric_median(const std::vector<std::span<const double>>& points);

}  // namespace dtwc
