#include "dtwc/coreset.hpp"

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

// Smallest power of two >= x, exact for x > 0.
double dyadic_ceiling(double x) {
    int e = 0;
    const double f = std::frexp(x, &e);
    return f == 0.5 ? x : std::ldexp(1.0, e);
}

double min_dtw(const Curve& c, const std::vector<Curve>& centers, double p) {
    double best = kInf;
    for (const auto& ctr : centers) best = std::min(best, dtw_value(c, ctr, p));
    return best;
}

}  // namespace

double SensitivityProfile::gamma_total() const {
    return std::pow(static_cast<double>(m * ell), 1.0 / p) * reduced_total;
}

double SensitivityProfile::gamma_bound() const {
    const long double reduced = 4.0L * static_cast<long double>(k_hat) + 10.0L * static_cast<long double>(alpha);
    return std::pow(static_cast<double>(m * ell), 1.0 / p) * static_cast<double>(reduced);
}

double default_alpha(double eps, std::size_t m, std::size_t ell, double p) {
    const double l = static_cast<double>(ell);
    return 72.0 * (1.0 + eps) * (1.0 + eps) * (12.0 + eps) * std::pow(16.0 * static_cast<double>(m) * l * l * l, 1.0 / p);
}

SensitivityProfile sensitivity_bounds(const CurveSet& set, const BicriteriaSolution& sol, double p, double alpha) {
    if (set.empty()) throw ValidationError("sensitivity bounds need a non-empty input");
    if (sol.assignment.size() != set.size() || sol.distances.size() != set.size()) {
        throw ValidationError("bicriteria assignment does not cover the input");
    }
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ValidationError("alpha must be positive");

    const std::size_t n = set.size();
    const std::size_t khat = sol.centers.size();
    SensitivityProfile prof;
    prof.alpha = alpha;
    prof.k_hat = khat;
    prof.m = set.max_complexity();
    prof.ell = sol.ell;
    prof.p = p;
    prof.cell = sol.assignment;
    prof.dist_to_center = sol.distances;
    // Cost sums stay in extended precision so the ratios below sum to 1 and 1 per cell up to
    // long double rounding; double sums would let the total exceed its bound by a few ulps.
    std::vector<long double> cell_cost(khat, 0.0L);
    long double total = 0.0L;
    prof.cell_size.assign(khat, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (prof.cell[i] >= khat) throw ValidationError("assignment refers to a missing center");
        cell_cost[prof.cell[i]] += prof.dist_to_center[i];
        ++prof.cell_size[prof.cell[i]];
        total += prof.dist_to_center[i];
    }
    prof.cell_cost.assign(cell_cost.begin(), cell_cost.end());
    prof.total_cost = static_cast<double>(total);

    const double scale = std::pow(static_cast<double>(prof.m * prof.ell), 1.0 / p);
    prof.gamma.resize(n);
    prof.lambda.resize(n);
    long double reduced_total = 0.0L;
    const long double a = alpha;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t c = prof.cell[i];
        const long double size = static_cast<long double>(prof.cell_size[c]);
        long double g = 4.0L / size;
        if (total > 0.0L) g += 2.0L * a * prof.dist_to_center[i] / total + 8.0L * a * cell_cost[c] / (total * size);
        reduced_total += g;
        prof.gamma[i] = scale * static_cast<double>(g);
        prof.lambda[i] = dyadic_ceiling(prof.gamma[i]);
    }
    prof.reduced_total = static_cast<double>(reduced_total);
    prof.Lambda = std::accumulate(prof.lambda.begin(), prof.lambda.end(), 0.0);
    prof.psi.resize(n);
    for (std::size_t i = 0; i < n; ++i) prof.psi[i] = prof.lambda[i] / prof.Lambda;
    return prof;
}

CoresetSizeReport coreset_size(const CoresetSizeInputs& in) {
    if (in.n < 1 || in.m < 1 || in.ell < 1 || in.d < 1 || in.k < 1 || in.k_hat < 1) {
        throw ValidationError("coreset size: counts must be >= 1");
    }
    if (!(in.p >= 1.0)) throw ValidationError("p must be >= 1");
    if (!(in.eps > 0.0 && in.eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
    if (!(in.delta > 0.0 && in.delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
    if (!(in.alpha > 0.0) || !(in.Lambda > 0.0) || !(in.constant > 0.0)) {
        throw ValidationError("alpha, Lambda and the sample constant must be positive");
    }

    const double m = static_cast<double>(in.m);
    const double l = static_cast<double>(in.ell);
    const double d = static_cast<double>(in.d);
    const double k = static_cast<double>(in.k);
    const double n = static_cast<double>(in.n);
    CoresetSizeReport r;
    const double grid = std::floor(std::pow(m + l, 1.0 / in.p) / in.eps + 1.0);
    r.D_ball = 2.0 * (d + 1.0) * l * std::log2(12.0 * l * m * grid + 12.0 * m + 12.0 * l);
    r.D_G = 2.0 * r.D_ball * k * std::log2(3.0 * k) * std::log2(n * in.alpha / 2.0 + 2.0 * in.alpha + 1.0);
    r.Lambda = in.Lambda;
    r.eta = 1.0 / in.Lambda;
    r.eps_eff = in.eps / 6.0;
    const double body = (in.Lambda / (r.eps_eff * r.eps_eff)) * (r.D_G * std::log(in.Lambda) + std::log(1.0 / in.delta));
    r.uncapped = in.constant * body;
    const double capped = std::min(std::ceil(r.uncapped), n);
    r.sample_size = static_cast<std::size_t>(std::max(1.0, capped));
    return r;
}

WeightedCurveSet coreset_sample(const CurveSet& set, const SensitivityProfile& profile, std::size_t size,
                                std::uint64_t seed) {
    if (size < 1) throw ValidationError("coreset size must be >= 1");
    if (profile.psi.size() != set.size()) throw ValidationError("profile does not match the input");
    if (!(profile.Lambda > 0.0)) throw ValidationError("degenerate sensitivity profile");

    std::vector<double> cumulative(set.size());
    std::partial_sum(profile.psi.begin(), profile.psi.end(), cumulative.begin());
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> unit(0.0, cumulative.back());
    std::vector<WeightedCurve> entries;
    entries.reserve(size);
    const double sz = static_cast<double>(size);
    for (std::size_t j = 0; j < size; ++j) {
        const double u = unit(rng);
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t i = static_cast<std::size_t>(it - cumulative.begin());
        if (i >= set.size()) i = set.size() - 1;
        entries.push_back({set[i].with_id(set[i].id() + "#" + std::to_string(j)),
                           profile.Lambda / (sz * profile.lambda[i]), i});
    }
    return WeightedCurveSet(std::move(entries));
}

double cost(const CurveSet& set, const std::vector<Curve>& centers, double p) {
    if (centers.empty()) throw ValidationError("center set must be non-empty");
    std::vector<double> part(set.size());
    parallel_for(set.size(), [&](std::size_t i) { part[i] = min_dtw(set[i], centers, p); });
    return std::accumulate(part.begin(), part.end(), 0.0);
}

double cost(const WeightedCurveSet& set, const std::vector<Curve>& centers, double p) {
    if (centers.empty()) throw ValidationError("center set must be non-empty");
    std::vector<double> part(set.size());
    parallel_for(set.size(), [&](std::size_t i) { part[i] = set[i].weight * min_dtw(set[i].curve, centers, p); });
    return std::accumulate(part.begin(), part.end(), 0.0);
}

CoresetCheck verify_coreset(const CurveSet& set, const WeightedCurveSet& coreset,
                            const std::vector<std::vector<Curve>>& candidates, double p, double eps) {
    CoresetCheck out;
    out.errors.reserve(candidates.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
        const double full = cost(set, candidates[c], p);
        const double approx = cost(coreset, candidates[c], p);
        double err;
        if (full == 0.0) {
            err = approx == 0.0 ? 0.0 : kInf;
            if (approx != 0.0) out.undefined.push_back(c);
        } else {
            err = std::abs(approx - full) / full;
        }
        out.errors.push_back(err);
        out.max_error = std::max(out.max_error, err);
        if (err > eps) out.failing.push_back(c);
    }
    return out;
}

}  // namespace dtwc
