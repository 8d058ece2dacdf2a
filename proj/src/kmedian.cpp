#include "dtwc/kmedian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dtwc/errors.hpp"
#include "dtwc/parallel.hpp"
#include "dtwc/random.hpp"

namespace dtwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nearest and second-nearest center per point; makes a swap evaluation O(n).
struct NearestCache {
    std::vector<std::size_t> first;
    std::vector<double> d1;
    std::vector<double> d2;
};

NearestCache nearest_two(const FiniteMetricInstance& inst, const std::vector<std::size_t>& centers) {
    NearestCache c{std::vector<std::size_t>(inst.n), std::vector<double>(inst.n, kInf),
                   std::vector<double>(inst.n, kInf)};
    for (std::size_t i = 0; i < inst.n; ++i) {
        for (auto ctr : centers) {
            const double v = inst.at(i, ctr);
            if (v < c.d1[i]) {
                c.d2[i] = c.d1[i];
                c.d1[i] = v;
                c.first[i] = ctr;
            } else if (v < c.d2[i]) {
                c.d2[i] = v;
            }
        }
    }
    return c;
}

std::vector<std::size_t> farthest_point_start(const FiniteMetricInstance& inst, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, inst.n - 1);
    std::vector<std::size_t> centers{pick(rng)};
    std::vector<char> chosen(inst.n, 0);
    chosen[centers[0]] = 1;
    std::vector<double> gap(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) gap[i] = inst.at(i, centers[0]);
    while (centers.size() < inst.k) {
        std::size_t far = inst.n;
        for (std::size_t i = 0; i < inst.n; ++i) {
            if (!chosen[i] && (far == inst.n || gap[i] > gap[far])) far = i;
        }
        centers.push_back(far);
        chosen[far] = 1;
        for (std::size_t i = 0; i < inst.n; ++i) gap[i] = std::min(gap[i], inst.at(i, far));
    }
    std::sort(centers.begin(), centers.end());
    return centers;
}

}  // namespace

void FiniteMetricInstance::validate() const {
    if (n < 1) throw ValidationError("metric instance must have at least one point");
    if (dist.size() != n * n) throw ValidationError("distance matrix must be n x n");
    if (weights.size() != n) throw ValidationError("weight vector must have n entries");
    if (k < 1) throw ValidationError("k must be >= 1");
    if (k > n) throw ValidationError("k = " + std::to_string(k) + " exceeds n = " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) throw ValidationError("weights must be positive");
        if (at(i, i) != 0.0) throw ValidationError("distance matrix must have a zero diagonal");
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!(at(i, j) >= 0.0) || !std::isfinite(at(i, j))) {
                throw ValidationError("distances must be finite and nonnegative");
            }
            if (at(i, j) != at(j, i)) throw ValidationError("distance matrix must be symmetric");
        }
    }
}

FiniteMetricInstance FiniteMetricInstance::unit_weights(std::size_t n, std::vector<double> dist, std::size_t k) {
    return FiniteMetricInstance{n, std::move(dist), std::vector<double>(n, 1.0), k};
}

MedianSolution assign_to_centers(const FiniteMetricInstance& inst, std::vector<std::size_t> centers) {
    if (centers.empty()) throw ValidationError("center set must be non-empty");
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
    for (auto c : centers) {
        if (c >= inst.n) throw ValidationError("center index out of range");
    }
    MedianSolution sol;
    sol.assignment.resize(inst.n);
    for (std::size_t i = 0; i < inst.n; ++i) {
        std::size_t best = centers.front();
        for (auto c : centers) {
            if (inst.at(i, c) < inst.at(i, best)) best = c;
        }
        sol.assignment[i] = best;
        sol.cost += inst.weights[i] * inst.at(i, best);
    }
    sol.centers = std::move(centers);
    return sol;
}

MedianSolution kmedian_local_search(const FiniteMetricInstance& inst, double eps, std::uint64_t seed) {
    inst.validate();
    if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
    const std::size_t n = inst.n;
    const std::size_t k = inst.k;
    auto centers = farthest_point_start(inst, seed);
    if (k == n) return assign_to_centers(inst, centers);

    const double factor = 1.0 - eps / (8.0 * static_cast<double>(k));
    const std::size_t max_rounds = 10 * n * k;
    double cost = assign_to_centers(inst, centers).cost;
    std::vector<char> is_center(n, 0);
    for (auto c : centers) is_center[c] = 1;

    struct Swap {
        double cost = kInf;
        std::size_t out = 0;
        std::size_t in = 0;
    };
    std::vector<Swap> per_in(n);
    for (std::size_t round = 0; round < max_rounds; ++round) {
        const auto cache = nearest_two(inst, centers);
        parallel_for(n, [&](std::size_t x) {
            Swap best;
            if (!is_center[x]) {
                for (std::size_t slot = 0; slot < k; ++slot) {
                    const std::size_t out = centers[slot];
                    double total = 0.0;
                    for (std::size_t i = 0; i < n; ++i) {
                        const double keep = cache.first[i] == out ? cache.d2[i] : cache.d1[i];
                        total += inst.weights[i] * std::min(keep, inst.at(i, x));
                    }
                    if (total < best.cost) best = {total, out, x};
                }
            }
            per_in[x] = best;
        });
        Swap best;
        for (const auto& s : per_in) {
            if (s.cost < best.cost) best = s;
        }
        if (!(best.cost < cost && best.cost <= factor * cost)) break;
        is_center[best.out] = 0;
        is_center[best.in] = 1;
        std::replace(centers.begin(), centers.end(), best.out, best.in);
        std::sort(centers.begin(), centers.end());
        cost = best.cost;
    }
    return assign_to_centers(inst, centers);
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
}

MedianSolution kmedian_brute(const FiniteMetricInstance& inst) {
    inst.validate();
    const std::size_t n = inst.n;
    const std::size_t k = inst.k;
    if (binomial(n, k) > kBruteSubsetCap) {
        throw ResourceGuardError("kmedian_brute: C(" + std::to_string(n) + ", " + std::to_string(k) +
                                 ") exceeds the enumeration cap");
    }
    std::vector<std::size_t> subset(k);
    for (std::size_t i = 0; i < k; ++i) subset[i] = i;
    MedianSolution best;
    best.cost = kInf;
    while (true) {
        auto sol = assign_to_centers(inst, subset);
        if (sol.cost < best.cost) best = std::move(sol);
        std::size_t pos = k;
        while (pos > 0 && subset[pos - 1] == n - k + pos - 1) --pos;
        if (pos == 0) break;
        ++subset[pos - 1];
        for (std::size_t i = pos; i < k; ++i) subset[i] = subset[i - 1] + 1;
    }
    return best;
}

}  // namespace dtwc
