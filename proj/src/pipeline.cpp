#include "dtwc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "dtwc/dtw.hpp"
#include "dtwc/errors.hpp"
#include "dtwc/kmedian.hpp"
#include "dtwc/metric_closure.hpp"
#include "dtwc/parallel.hpp"
#include "dtwc/random.hpp"

namespace dtwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFinalEpsDivisor = 46.0;

enum Stream : std::uint64_t { kBicriteria = 11, kSampling, kFinalSearch };

class StageClock {
public:
    explicit StageClock(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}
    void lap(const std::string& stage) {
        const auto now = std::chrono::steady_clock::now();
        sink_.emplace_back(stage, std::chrono::duration<double>(now - last_).count());
        last_ = now;
    }

private:
    std::vector<std::pair<std::string, double>>& sink_;
    std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

// Drops content-duplicate centers, then grows the set to k: first with the distinct point whose
// addition lowers the weighted cost most (lowest index on ties), and once no distinct point is
// left, by repeating the center with the cheapest cluster.
std::vector<std::size_t> exactly_k(const FiniteMetricInstance& inst, const std::vector<const Curve*>& curves,
                                   const std::vector<std::size_t>& chosen, std::size_t k) {
    auto duplicate_of_any = [&](std::size_t i, const std::vector<std::size_t>& set) {
        return std::any_of(set.begin(), set.end(), [&](std::size_t c) { return curves[c]->same_points(*curves[i]); });
    };
    std::vector<std::size_t> out;
    for (auto c : chosen) {
        if (out.size() < k && !duplicate_of_any(c, out)) out.push_back(c);
    }
    while (out.size() < k) {
        std::size_t pick = inst.n;
        double pick_cost = kInf;
        for (std::size_t i = 0; i < inst.n; ++i) {
            if (duplicate_of_any(i, out)) continue;
            auto trial = out;
            trial.push_back(i);
            const double c = assign_to_centers(inst, trial).cost;
            if (c < pick_cost) {
                pick_cost = c;
                pick = i;
            }
        }
        if (pick == inst.n) break;
        out.push_back(pick);
    }
    if (out.size() < k) {
        const auto sol = assign_to_centers(inst, out);
        std::size_t cheapest = out.front();
        double cheapest_cost = kInf;
        for (auto c : out) {
            double cc = 0.0;
            for (std::size_t i = 0; i < inst.n; ++i) {
                if (sol.assignment[i] == c) cc += inst.weights[i] * inst.at(i, c);
            }
            if (cc < cheapest_cost) {
                cheapest_cost = cc;
                cheapest = c;
            }
        }
        out.resize(k, cheapest);
    }
    return out;
}

void fill_assignment(ClusteringResult& r, const CurveSet& set, double p) {
    auto ev = evaluate(set, r.centers, p);
    r.assignment = std::move(ev.assignment);
    r.distances = std::move(ev.distances);
    r.cost = ev.cost;
}

ClusteringResult run_once(const CurveSet& set, const std::vector<Simplification>& simplified,
                          const PipelineConfig& cfg, std::uint64_t seed) {
    ClusteringResult r;
    StageClock clock(r.timings);
    const double eps_final = cfg.eps / kFinalEpsDivisor;

    const auto bic = bicriteria_klmedian(set, simplified, cfg.k, cfg.ell, cfg.p, cfg.eps,
                                         derive_seed(seed, kBicriteria), cfg.repetitions);
    r.bicriteria_cost = bic.cost;
    r.bicriteria_centers = bic.centers.size();
    clock.lap("bicriteria");

    const std::size_t m = set.max_complexity();
    const double alpha = cfg.alpha_override.value_or(default_alpha(cfg.eps, m, cfg.ell, cfg.p));
    const auto profile = sensitivity_bounds(set, bic, cfg.p, alpha);
    r.gamma_total = profile.gamma_total();
    r.gamma_bound = profile.gamma_bound();
    clock.lap("sensitivity");

    r.size_report = coreset_size({set.size(), m, cfg.ell, set.dim(), cfg.k, cfg.p, eps_final, cfg.delta, alpha,
                                  bic.centers.size(), profile.Lambda, cfg.sample_constant});
    r.coreset_size = cfg.size_override.value_or(r.size_report->sample_size);
    const auto coreset = coreset_sample(set, profile, r.coreset_size, derive_seed(seed, kSampling));
    clock.lap("coreset");

    // The 2-simplification of a coreset entry is that of its source curve.
    std::vector<Curve> reduced;
    reduced.reserve(coreset.size());
    for (const auto& e : coreset) reduced.push_back(simplified[e.source].curve.with_id(e.curve.id()));
    clock.lap("simplify");

    const CurveSet reduced_set(reduced);
    const auto closure = build_closure(reduced_set, cfg.p);
    clock.lap("closure");

    FiniteMetricInstance inst{coreset.size(), closure.dist, {}, std::min(cfg.k, coreset.size())};
    for (const auto& e : coreset) inst.weights.push_back(e.weight);
    const auto sol = kmedian_local_search(inst, eps_final, derive_seed(seed, kFinalSearch));
    std::vector<const Curve*> pointers;
    for (const auto& c : reduced) pointers.push_back(&c);
    const auto picked = exactly_k(inst, pointers, sol.centers, cfg.k);
    clock.lap("final_search");

    for (auto j : picked) {
        r.centers.push_back(reduced[j]);
        const std::size_t src = coreset[j].source;
        r.provenance.push_back({j, coreset[j].curve.id(), src, set[src].id()});
    }
    fill_assignment(r, set, cfg.p);
    clock.lap("assignment");
    return r;
}

}  // namespace

bool ClusteringResult::same_solution(const ClusteringResult& o) const {
    auto prov_eq = [](const CenterProvenance& a, const CenterProvenance& b) {
        return a.coreset_entry == b.coreset_entry && a.coreset_id == b.coreset_id && a.input_index == b.input_index &&
               a.input_id == b.input_id;
    };
    auto report_eq = [](const std::optional<CoresetSizeReport>& a, const std::optional<CoresetSizeReport>& b) {
        if (a.has_value() != b.has_value()) return false;
        if (!a) return true;
        return a->D_ball == b->D_ball && a->D_G == b->D_G && a->Lambda == b->Lambda && a->eta == b->eta &&
               a->eps_eff == b->eps_eff && a->uncapped == b->uncapped && a->sample_size == b->sample_size;
    };
    return centers == o.centers && std::equal(provenance.begin(), provenance.end(), o.provenance.begin(),
                                              o.provenance.end(), prov_eq) &&
           assignment == o.assignment && distances == o.distances && cost == o.cost &&
           bicriteria_cost == o.bicriteria_cost && bicriteria_centers == o.bicriteria_centers &&
           gamma_total == o.gamma_total && gamma_bound == o.gamma_bound && coreset_size == o.coreset_size &&
           sensitivity_checks == o.sensitivity_checks &&
           report_eq(size_report, o.size_report);
}

ClusteringResult kl_median(const CurveSet& set, const PipelineConfig& cfg) {
    cfg.validate();
    if (set.empty()) throw ValidationError("input set is empty");
    if (set.size() < cfg.k) {
        throw ValidationError("n = " + std::to_string(set.size()) + " is smaller than k = " + std::to_string(cfg.k));
    }
    const auto start = std::chrono::steady_clock::now();
    const auto simplified = simplify_all(set, cfg.ell, cfg.p, SimplifyMethod::two_approx);
    const double simplify_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    ClusteringResult best;
    best.cost = kInf;
    std::vector<std::pair<double, double>> checks;
    for (std::size_t rep = 0; rep < cfg.repetitions; ++rep) {
        auto r = run_once(set, simplified, cfg, derive_seed(cfg.seed, rep));
        checks.emplace_back(r.gamma_total, r.gamma_bound);
        if (r.cost < best.cost) best = std::move(r);
    }
    best.sensitivity_checks = std::move(checks);
    best.timings.insert(best.timings.begin(), {"simplify_input", simplify_seconds});
    best.timings.emplace_back("total", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return best;
}

ClusteringResult cluster_via_closure(const CurveSet& set, std::size_t k, std::size_t ell, double p, double eps,
                                     SimplifyMethod method, std::uint64_t seed, std::size_t cap) {
    if (set.empty()) throw ValidationError("input set is empty");
    if (k < 1 || set.size() < k) throw ValidationError("k must lie in [1, n]");
    if (method == SimplifyMethod::eps1 && p != 1.0) throw ValidationError("eps1 simplification requires p = 1");
    if (set.size() > cap) {
        throw ResourceGuardError("closure route over " + std::to_string(set.size()) + " curves exceeds the cap of " +
                                 std::to_string(cap));
    }
    ClusteringResult r;
    StageClock clock(r.timings);
    const auto simplified = simplify_all(set, ell, p, method, eps);
    std::vector<Curve> reduced;
    for (const auto& s : simplified) reduced.push_back(s.curve);
    clock.lap("simplify");

    const auto closure = build_closure(CurveSet(reduced), p, cap);
    clock.lap("closure");

    const auto inst = FiniteMetricInstance::unit_weights(set.size(), closure.dist, k);
    const auto sol = kmedian_local_search(inst, eps, seed);
    std::vector<const Curve*> pointers;
    for (const auto& c : reduced) pointers.push_back(&c);
    const auto picked = exactly_k(inst, pointers, sol.centers, k);
    clock.lap("search");

    for (auto j : picked) {
        r.centers.push_back(reduced[j]);
        r.provenance.push_back({std::nullopt, {}, j, set[j].id()});
    }
    fill_assignment(r, set, p);
    clock.lap("assignment");
    return r;
}

CoresetOutput emit_coreset_only(const CurveSet& set, const PipelineConfig& cfg) {
    cfg.validate();
    if (set.empty()) throw ValidationError("input set is empty");
    const auto simplified = simplify_all(set, cfg.ell, cfg.p, SimplifyMethod::two_approx);
    CoresetOutput out;
    out.bicriteria = bicriteria_klmedian(set, simplified, cfg.k, cfg.ell, cfg.p, cfg.eps,
                                         derive_seed(cfg.seed, kBicriteria), cfg.repetitions);
    const std::size_t m = set.max_complexity();
    const double alpha = cfg.alpha_override.value_or(default_alpha(cfg.eps, m, cfg.ell, cfg.p));
    out.profile = sensitivity_bounds(set, out.bicriteria, cfg.p, alpha);
    out.report = coreset_size({set.size(), m, cfg.ell, set.dim(), cfg.k, cfg.p, cfg.eps, cfg.delta, alpha,
                               out.bicriteria.centers.size(), out.profile.Lambda, cfg.sample_constant});
    const std::size_t size = cfg.size_override.value_or(out.report.sample_size);
    out.coreset = coreset_sample(set, out.profile, size, derive_seed(cfg.seed, kSampling));
    return out;
}

Evaluation evaluate(const CurveSet& set, const std::vector<Curve>& centers, double p) {
    if (centers.empty()) throw ValidationError("center set must be non-empty");
    Evaluation ev;
    ev.assignment.assign(set.size(), 0);
    ev.distances.assign(set.size(), kInf);
    parallel_for(set.size(), [&](std::size_t i) {
        for (std::size_t c = 0; c < centers.size(); ++c) {
            const double v = dtw_value(set[i], centers[c], p);
            if (v < ev.distances[i]) {
                ev.distances[i] = v;
                ev.assignment[i] = c;
            }
        }
    });
    ev.cluster_cost.assign(centers.size(), 0.0);
    ev.cluster_size.assign(centers.size(), 0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        ev.cost += ev.distances[i];
        ev.cluster_cost[ev.assignment[i]] += ev.distances[i];
        ++ev.cluster_size[ev.assignment[i]];
    }
    return ev;
}

}  // namespace dtwc
