#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "dtwc/bicriteria.hpp"
#include "dtwc/curve.hpp"

namespace dtwc {

struct SensitivityProfile {
    // Per input curve.
    std::vector<double> gamma;
    std::vector<double> lambda;  // gamma rounded up to a power of two
    std::vector<double> psi;     // lambda / Lambda
    std::vector<std::size_t> cell;
    std::vector<double> dist_to_center;
    // Per bicriteria center.
    std::vector<double> cell_cost;
    std::vector<std::size_t> cell_size;
    double total_cost = 0.0;
    double Lambda = 0.0;
    double alpha = 1.0;
    std::size_t k_hat = 0;
    std::size_t m = 0;
    std::size_t ell = 0;
    double p = 1.0;
    // Sum of gamma / (m l)^(1/p), accumulated in extended precision.
    double reduced_total = 0.0;

    // The total and its bound (m l)^(1/p) (4 k_hat + 10 alpha) share the factor (m l)^(1/p), applied
    // last to both, so comparing them is not decided by rounding in the sum.
    double gamma_total() const;
    double gamma_bound() const;
};

// 72 (1+eps)^2 (12+eps) (16 m l^3)^(1/p).
double default_alpha(double eps, std::size_t m, std::size_t ell, double p);

// gamma = (m l)^(1/p) (2 alpha dist/total + 4/|cell| + 8 alpha cell_cost/(total |cell|)), with every
// term divided by a zero total taken as 0. m is the largest input complexity, l = sol.ell.
SensitivityProfile sensitivity_bounds(const CurveSet& set, const BicriteriaSolution& sol, double p, double alpha);

struct CoresetSizeReport {
    double D_ball = 0.0;
    double D_G = 0.0;
    double Lambda = 0.0;
    double eta = 0.0;
    double eps_eff = 0.0;
    double uncapped = 0.0;
    std::size_t sample_size = 1;
};

struct CoresetSizeInputs {
    std::size_t n = 1;
    std::size_t m = 1;
    std::size_t ell = 1;
    std::size_t d = 1;
    std::size_t k = 1;
    double p = 1.0;
    double eps = 0.5;
    double delta = 0.1;
    double alpha = 1.0;
    std::size_t k_hat = 1;
    double Lambda = 1.0;
    double constant = 0.05;
};

// D_ball = 2(d+1) l log2(12 l m floor((m+l)^(1/p)/eps + 1) + 12m + 12l),
// D_G = 2 D_ball k log2(3k) log2(n alpha/2 + 2 alpha + 1), eps_eff = eps/6, eta = 1/Lambda,
// uncapped = c (Lambda / eps_eff^2) (D_G ln Lambda + ln(1/delta)); sample_size = clamp(ceil, 1, n).
CoresetSizeReport coreset_size(const CoresetSizeInputs& in);

// `size` i.i.d. draws proportional to psi; a draw of curve i has weight Lambda / (size lambda_i).
// Entry j keeps the input index in `source` and gets id "<input id>#<j>".
WeightedCurveSet coreset_sample(const CurveSet& set, const SensitivityProfile& profile, std::size_t size,
                                std::uint64_t seed);

// Sum over curves of (weight times) the smallest dtw_p to a center.
double cost(const CurveSet& set, const std::vector<Curve>& centers, double p);
double cost(const WeightedCurveSet& set, const std::vector<Curve>& centers, double p);

struct CoresetCheck {
    std::vector<double> errors;
    double max_error = 0.0;
    // Candidates with error above eps, or with zero full cost but nonzero coreset cost.
    std::vector<std::size_t> failing;
    std::vector<std::size_t> undefined;
};

// err(C) = |cost(S,C) - cost(T,C)| / cost(T,C); 0 when both vanish, +inf (and listed as undefined)
// when only cost(T,C) vanishes.
CoresetCheck verify_coreset(const CurveSet& set, const WeightedCurveSet& coreset,
                            const std::vector<std::vector<Curve>>& candidates, double p, double eps);

}  // namespace dtwc
