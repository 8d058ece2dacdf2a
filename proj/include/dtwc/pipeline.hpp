#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dtwc/bicriteria.hpp"
#include "dtwc/config.hpp"
#include "dtwc/coreset.hpp"
#include "dtwc/curve.hpp"
#include "dtwc/simplify.hpp"

namespace dtwc {

struct CenterProvenance {
    // Coreset entry the center was simplified from; empty for routes without a coreset.
    std::optional<std::size_t> coreset_entry;
    std::string coreset_id;
    std::size_t input_index = 0;
    std::string input_id;
};

struct ClusteringResult {
    // Exactly k curves of complexity <= l.
    std::vector<Curve> centers;
    std::vector<CenterProvenance> provenance;
    // Per input curve: position in `centers` of its nearest center (lowest on ties) and dtw to it.
    std::vector<std::size_t> assignment;
    std::vector<double> distances;
    double cost = 0.0;

    // Diagnostics of the run that produced the centers.
    double bicriteria_cost = 0.0;
    std::size_t bicriteria_centers = 0;
    double gamma_total = 0.0;
    double gamma_bound = 0.0;
    std::size_t coreset_size = 0;
    std::optional<CoresetSizeReport> size_report;
    // (gamma_total, gamma_bound) of every repetition, in run order.
    std::vector<std::pair<double, double>> sensitivity_checks;
    // Seconds per stage; excluded from equality.
    std::vector<std::pair<std::string, double>> timings;

    // Everything except timings.
    bool same_solution(const ClusteringResult& other) const;
};

// Bicriteria, sensitivities, coreset, 2-simplification of the coreset, closure of dtw over it and
// weighted local search, with eps' = eps / 46 for the size formula and the final search.
// Repeated cfg.repetitions times with derived seeds; the cheapest run over the full input wins.
ClusteringResult kl_median(const CurveSet& set, const PipelineConfig& cfg);

// Simplifies every input curve, builds the full closure and runs local search on it.
ClusteringResult cluster_via_closure(const CurveSet& set, std::size_t k, std::size_t ell, double p, double eps,
                                     SimplifyMethod method, std::uint64_t seed,
                                     std::size_t cap = kDefaultClosureCap);

struct CoresetOutput {
    WeightedCurveSet coreset;
    CoresetSizeReport report;
    SensitivityProfile profile;
    BicriteriaSolution bicriteria;
};

// Bicriteria through sampling only, sized at cfg.eps.
CoresetOutput emit_coreset_only(const CurveSet& set, const PipelineConfig& cfg);

struct Evaluation {
    double cost = 0.0;
    std::vector<std::size_t> assignment;
    std::vector<double> distances;
    std::vector<double> cluster_cost;
    std::vector<std::size_t> cluster_size;
};

Evaluation evaluate(const CurveSet& set, const std::vector<Curve>& centers, double p);

}  // namespace dtwc
