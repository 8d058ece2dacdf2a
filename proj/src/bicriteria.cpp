#include "dtwc/bicriteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "dtwc/dtw.hpp"
#include "dtwc/errors.hpp"
#include "dtwc/parallel.hpp"
#include "dtwc/random.hpp"

namespace dtwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum Stream : std::uint64_t { kSample = 1, kFirstSolve, kSecondSolve, kInner, kRecheck };

void check_args(std::size_t n, std::size_t k, double eps) {
    if (n < 1) throw ValidationError("point set must be non-empty");
    if (k < 1) throw ValidationError("k must be >= 1");
    if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
}

DistanceFn restrict(const DistanceFn& phi, const std::vector<std::size_t>& subset) {
    return [&phi, &subset](std::size_t i, std::size_t j) { return phi(subset[i], subset[j]); };
}

// Solver on the closure of phi over `subset`, mapped back to the caller's indices.
std::vector<std::size_t> solve_on_closure(const std::vector<std::size_t>& subset, const DistanceFn& phi,
                                          std::size_t k, const MedianSolver& solver, std::uint64_t seed) {
    const auto closure = closure_of(subset.size(), restrict(phi, subset));
    FiniteMetricInstance inst =
        FiniteMetricInstance::unit_weights(subset.size(), closure.dist, std::min(k, subset.size()));
    std::vector<std::size_t> out;
    for (auto local : solver(inst, seed)) out.push_back(subset[local]);
    return out;
}

// The `count` items with largest value; ties to the lower index.
std::vector<std::size_t> farthest(const std::vector<double>& value, std::size_t count) {
    std::vector<std::size_t> order(value.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return value[x] > value[y]; });
    order.resize(std::min(count, order.size()));
    std::sort(order.begin(), order.end());
    return order;
}

std::vector<std::size_t> merged(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

}  // namespace

SamplingParams sampling_params(std::size_t n, std::size_t k, double eps) {
    check_args(n, k, eps);
    SamplingParams sp;
    const double inv = 1.0 / eps;
    sp.a = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(inv * std::sqrt(std::max(1.0, std::log(inv))))));
    sp.b = sp.a * sp.a;
    const double kd = static_cast<double>(k);
    const double nd = static_cast<double>(n);
    const double lk = std::log(kd + 1.0);
    sp.s = std::min(n, static_cast<std::size_t>(std::ceil(static_cast<double>(sp.a) * std::sqrt(kd * nd * lk))));
    sp.s = std::max<std::size_t>(sp.s, 1);
    sp.m_size = std::min(
        n, static_cast<std::size_t>(std::ceil(static_cast<double>(sp.b) * kd * nd * lk / static_cast<double>(sp.s))));
    return sp;
}

MedianSolver local_search_solver(double eps) {
    return [eps](const FiniteMetricInstance& inst, std::uint64_t seed) {
        return kmedian_local_search(inst, eps, seed).centers;
    };
}

std::vector<std::size_t> k_routine(std::size_t n, const DistanceFn& phi, std::size_t k, double eps,
                                   const MedianSolver& solver, std::uint64_t seed) {
    check_args(n, k, eps);
    const auto sp = sampling_params(n, k, eps);
    if (n <= sp.s) {
        return merged(solve_on_closure(all_indices(n), phi, k, solver, derive_seed(seed, kFirstSolve)), {});
    }
    const auto sample = sample_without_replacement(n, sp.s, derive_seed(seed, kSample));
    const auto first = solve_on_closure(sample, phi, k, solver, derive_seed(seed, kFirstSolve));
    const auto reach = distances_from_set(n, phi, first);
    const auto recheck = farthest(reach, sp.m_size);
    const auto second = solve_on_closure(recheck, phi, k, solver, derive_seed(seed, kSecondSolve));
    return merged(first, second);
}

std::vector<std::size_t> k_median_sampled(std::size_t n, const DistanceFn& phi, std::size_t k, double eps,
                                          const MedianSolver& solver, std::uint64_t seed) {
    check_args(n, k, eps);
    const auto sp = sampling_params(n, k, eps);
    if (n <= sp.s) return k_routine(n, phi, k, eps, solver, derive_seed(seed, kInner));

    const auto sample = sample_without_replacement(n, sp.s, derive_seed(seed, kSample));
    std::vector<std::size_t> first;
    for (auto local : k_routine(sample.size(), restrict(phi, sample), k, eps, solver, derive_seed(seed, kInner))) {
        first.push_back(sample[local]);
    }
    std::vector<double> raw(n, kInf);
    parallel_for(n, [&](std::size_t x) {
        for (auto c : first) raw[x] = std::min(raw[x], x == c ? 0.0 : phi(x, c));
    });
    const auto recheck = farthest(raw, sp.m_size);
    std::vector<std::size_t> second;
    for (auto local : k_routine(recheck.size(), restrict(phi, recheck), k, eps, solver, derive_seed(seed, kRecheck))) {
        second.push_back(recheck[local]);
    }
    return merged(first, second);
}

BicriteriaSolution assign_bicriteria(const CurveSet& set, std::vector<Curve> centers,
                                     std::vector<std::size_t> center_sources, std::size_t ell, double p) {
    if (centers.empty()) throw ValidationError("center set must be non-empty");
    BicriteriaSolution sol;
    sol.ell = ell;
    sol.assignment.assign(set.size(), 0);
    sol.distances.assign(set.size(), kInf);
    parallel_for(set.size(), [&](std::size_t i) {
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double v = dtw_value(set[i], centers[c], p);
            if (v < sol.distances[i]) {
                sol.distances[i] = v;
                sol.assignment[i] = c;
            }
        }
    });
    for (double v : sol.distances) sol.cost += v;
    sol.centers = std::move(centers);
    sol.center_sources = std::move(center_sources);
    return sol;
}

BicriteriaSolution bicriteria_klmedian(const CurveSet& set, const std::vector<Simplification>& simplified,
                                       std::size_t k, std::size_t ell, double p, double eps, std::uint64_t seed,
                                       std::size_t repetitions) {
    check_args(set.size(), k, eps);
    if (ell < 1) throw ValidationError("ell must be >= 1");
    if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
    if (simplified.size() != set.size()) throw ValidationError("one simplification per input curve is required");

    const DistanceFn phi = [&](std::size_t i, std::size_t j) {
        return dtw_value(simplified[i].curve, simplified[j].curve, p);
    };
    const auto solver = local_search_solver(eps);
    BicriteriaSolution best;
    best.cost = kInf;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
        const auto chosen = k_median_sampled(set.size(), phi, k, eps, solver, derive_seed(seed, rep));
        std::vector<Curve> centers;
        for (auto c : chosen) centers.push_back(simplified[c].curve);
        auto sol = assign_bicriteria(set, std::move(centers), chosen, ell, p);
        if (sol.cost < best.cost) best = std::move(sol);
    }
    return best;
}

BicriteriaSolution bicriteria_klmedian(const CurveSet& set, std::size_t k, std::size_t ell, double p, double eps,
                                       std::uint64_t seed, std::size_t repetitions) {
    if (ell < 1) throw ValidationError("ell must be >= 1");
    return bicriteria_klmedian(set, simplify_all(set, ell, p, SimplifyMethod::two_approx), k, ell, p, eps, seed,
                               repetitions);
}

}  // namespace dtwc
