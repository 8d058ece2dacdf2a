// Acceptance harness: one PASS/FAIL line per criterion. Run all, or one with --criterion N.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dtwc/bicriteria.hpp"
#include "dtwc/coreset.hpp"
#include "dtwc/dtw.hpp"
#include "dtwc/io.hpp"
#include "dtwc/kmedian.hpp"
#include "dtwc/metric_closure.hpp"
#include "dtwc/parallel.hpp"
#include "dtwc/pipeline.hpp"
#include "dtwc/simplify.hpp"
#include "oracles.hpp"

using namespace dtwc;

namespace {

constexpr double kSlack = 1e-9;

struct Outcome {
    bool pass = true;
    std::string detail;
};

// (gamma_total, gamma_bound) of every bicriteria run made by the clustering criteria.
struct SensitivityLog {
    std::vector<std::pair<double, double>> checks;
    void add(const SensitivityProfile& prof) { checks.emplace_back(prof.gamma_total(), prof.gamma_bound()); }
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double pick_p(std::mt19937_64& rng) { return 1.0 + static_cast<double>(oracle::uniform_size(rng, 0, 2)); }

CurveSet take(const CurveSet& set, std::size_t n) {
    return CurveSet(std::vector<Curve>(set.begin(), set.begin() + static_cast<std::ptrdiff_t>(n)));
}

// Best cost over k-subsets of `candidates`, each input paying dtw to its nearest chosen candidate.
double restricted_opt(const CurveSet& set, const std::vector<Curve>& candidates, std::size_t k, double p) {
    const std::size_t n = set.size();
    const std::size_t c = candidates.size();
    std::vector<double> d(n * c);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < c; ++j) d[i * c + j] = dtw_value(set[i], candidates[j], p);
    }
    double best = oracle::kInf;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t next) {
        if (pick.size() == k) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double m = oracle::kInf;
                for (auto j : pick) m = std::min(m, d[i * c + j]);
                s += m;
            }
            best = std::min(best, s);
            return;
        }
        for (std::size_t j = next; j + (k - pick.size()) <= c; ++j) {
            pick.push_back(j);
            rec(j + 1);
            pick.pop_back();
        }
    };
    rec(0);
    return best;
}

// Small planted instances shared by the bicriteria and end-to-end envelopes: n = 12, k = 2, l = 2,
// m = 6, p = 1.
struct TinyInstance {
    CurveSet set;
    double restricted_opt = 0.0;
};

constexpr std::size_t kTinyCount = 20;
constexpr std::size_t kTinyK = 2;
constexpr std::size_t kTinyEll = 2;
constexpr double kTinyP = 1.0;
constexpr double kTinyEps = 0.5;

const std::vector<TinyInstance>& tiny_instances() {
    static const std::vector<TinyInstance> cache = [] {
        std::vector<TinyInstance> out;
        for (std::uint64_t s = 0; s < kTinyCount; ++s) {
            TinyInstance t{gen_synthetic(2, 6, 6, 2, 0.5, 100 + s), 0.0};
            std::vector<Curve> candidates;
            for (const auto& simp : simplify_all(t.set, kTinyEll, kTinyP, SimplifyMethod::two_approx)) {
                candidates.push_back(simp.curve);
            }
            t.restricted_opt = restricted_opt(t.set, candidates, kTinyK, kTinyP);
            out.push_back(std::move(t));
        }
        return out;
    }();
    return cache;
}

// ---------------------------------------------------------------------------------------------

Outcome dtw_oracle_equivalence(SensitivityLog*) {
    std::mt19937_64 rng(1001);
    std::size_t bad_value = 0;
    std::size_t bad_traversal = 0;
    double worst = 0.0;
    Stopwatch clock;
    for (int t = 0; t < 500; ++t) {
        const std::size_t d = oracle::uniform_size(rng, 1, 3);
        const auto a = oracle::random_curve(rng, oracle::uniform_size(rng, 1, 6), d, "a");
        const auto b = oracle::random_curve(rng, oracle::uniform_size(rng, 1, 6), d, "b");
        const double p = pick_p(rng);
        const auto r = dtw(a, b, p);
        const double brute = dtw_brute(a, b, p).best.value;
        const double ref = oracle::dtw(a, b, p);
        const double err = std::max(std::abs(r.value - brute), std::abs(r.value - ref));
        worst = std::max(worst, err);
        if (err > kSlack) ++bad_value;
        if (!is_valid_traversal(r.traversal, a.size(), b.size()) ||
            std::abs(traversal_cost(a, b, r.traversal, p) - r.value) > kSlack) {
            ++bad_traversal;
        }
    }
    const double secs = clock.seconds();
    return {bad_value == 0 && bad_traversal == 0 && secs < 10.0,
            fmt("500 pairs, value mismatches %zu, traversal faults %zu, max |err| %.2e, %.2fs (limit 10s)",
                bad_value, bad_traversal, worst, secs)};
}

Outcome weak_triangle(SensitivityLog*) {
    std::mt19937_64 rng(1002);
    std::size_t bad = 0;
    double tightest = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t m = oracle::uniform_size(rng, 1, 10);
        const std::size_t l = oracle::uniform_size(rng, 1, 10);
        const std::size_t d = oracle::uniform_size(rng, 1, 3);
        const double p = pick_p(rng);
        const auto x = oracle::random_curve(rng, m, d);
        const auto y = oracle::random_curve(rng, l, d);
        const auto z = oracle::random_curve(rng, m, d);
        const double lhs = dtw_value(x, z, p);
        const double rhs = std::pow(static_cast<double>(m), 1.0 / p) * (dtw_value(x, y, p) + dtw_value(y, z, p));
        if (lhs > rhs + kSlack) ++bad;
        if (rhs > 0.0) tightest = std::max(tightest, lhs / rhs);
    }
    return {bad == 0, fmt("1000 triples, violations %zu, largest lhs/rhs %.4f", bad, tightest)};
}

Outcome iterated_triangle(SensitivityLog*) {
    std::mt19937_64 rng(1003);
    std::size_t bad = 0;
    double tightest = 0.0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t l = oracle::uniform_size(rng, 1, 6);
        const std::size_t l2 = oracle::uniform_size(rng, 1, 6);
        const std::size_t d = oracle::uniform_size(rng, 1, 3);
        const double p = pick_p(rng);
        const auto s = oracle::random_curve(rng, l, d);
        const auto e = oracle::random_curve(rng, l2, d);
        const std::size_t r = oracle::uniform_size(rng, 1, 4);
        std::vector<Curve> chain;
        for (std::size_t i = 0; i < r; ++i) chain.push_back(oracle::random_curve(rng, oracle::uniform_size(rng, 1, 8), d));
        double path = dtw_value(s, chain.front(), p) + dtw_value(chain.back(), e, p);
        for (std::size_t i = 0; i + 1 < r; ++i) path += dtw_value(chain[i], chain[i + 1], p);
        const double lhs = dtw_value(s, e, p);
        const double rhs = std::pow(static_cast<double>(l + l2), 1.0 / p) * path;
        if (lhs > rhs + kSlack) ++bad;
        if (rhs > 0.0) tightest = std::max(tightest, lhs / rhs);
    }
    return {bad == 0, fmt("500 chains, violations %zu, largest lhs/rhs %.4f", bad, tightest)};
}

Outcome quantized_sandwich(SensitivityLog*) {
    std::mt19937_64 rng(1004);
    std::ostringstream detail;
    bool pass = true;
    for (double eps : {0.1, 0.5, 1.0}) {
        std::size_t lower = 0;
        std::size_t upper = 0;
        std::size_t monotone = 0;
        std::size_t envelope = 0;
        std::size_t pairs = 0;
        while (pairs < 1000) {
            const std::size_t d = oracle::uniform_size(rng, 1, 3);
            const auto a = oracle::random_curve(rng, oracle::uniform_size(rng, 1, 6), d, "a");
            const auto b = oracle::random_curve(rng, oracle::uniform_size(rng, 1, 6), d, "b");
            const double p = pick_p(rng);
            const double dist = dtw_value(a, b, p);
            if (!(dist > 0.0)) continue;
            ++pairs;
            const double q = adtw(a, b, p, eps).value;
            if (!(dist < q + kSlack)) ++lower;
            if (q > (1.0 + eps) * dist + kSlack) ++upper;
            if (q < dist / (1.0 + eps) - kSlack || q >= (1.0 + eps) * dist + kSlack) ++envelope;
            const auto z0 = static_cast<std::int64_t>(std::floor(std::log(dist) / std::log1p(eps)));
            bool prev = false;
            for (std::int64_t z = z0 - 5; z < z0 + 5; ++z) {
                const bool g = ball_membership(b, a, grid_radius(eps, z), p, eps);
                if (prev && !g) ++monotone;
                prev = g;
            }
        }
        pass = pass && lower == 0 && upper == 0 && monotone == 0;
        detail << fmt("eps %.1f: dtw<adtw violations %zu, adtw<=(1+eps)dtw violations %zu, monotonicity "
                      "violations %zu, outside dtw/(1+eps)<=adtw<(1+eps)dtw %zu; ",
                      eps, lower, upper, monotone, envelope);
    }
    return {pass, detail.str() + "1000 pairs per eps"};
}

Outcome closure_constants(SensitivityLog*) {
    std::mt19937_64 rng(1005);
    std::size_t upper = 0;
    std::size_t distortion = 0;
    std::size_t subset = 0;
    std::size_t floyd = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = oracle::uniform_size(rng, 2, 20);
        const auto set = oracle::random_set(rng, n, 1, 6, oracle::uniform_size(rng, 1, 3));
        const double p = pick_p(rng);
        const auto cl = build_closure(set, p);
        const double zeta = std::pow(2.0 * static_cast<double>(set.max_complexity()), 1.0 / p);
        const auto fw = oracle::floyd_warshall(cl.base, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double direct = dtw_value(set[i], set[j], p);
                if (cl.at(i, j) > direct + kSlack) ++upper;
                if (direct > zeta * cl.at(i, j) + kSlack) ++distortion;
                if (std::abs(cl.at(i, j) - fw[i * n + j]) > kSlack) ++floyd;
            }
        }
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::bernoulli_distribution(0.5)(rng)) members.push_back(i);
        }
        if (members.empty()) members.push_back(0);
        std::vector<Curve> sub;
        for (auto i : members) sub.push_back(set[i]);
        const auto sub_cl = build_closure(CurveSet(std::move(sub)), p);
        for (std::size_t a = 0; a < members.size(); ++a) {
            for (std::size_t b = 0; b < members.size(); ++b) {
                const double on_x = cl.at(members[a], members[b]);
                const double on_y = sub_cl.at(a, b);
                if (on_x > on_y + kSlack || on_y > sub_cl.base_at(a, b) + kSlack) ++subset;
            }
        }
    }
    return {upper + distortion + subset + floyd == 0,
            fmt("50 sets, closure>dtw %zu, dtw>(2m)^(1/p)*closure %zu, subset monotonicity %zu, "
                "Floyd-Warshall mismatches %zu",
                upper, distortion, subset, floyd)};
}

Outcome simplification_bounds(SensitivityLog*) {
    std::mt19937_64 rng(1006);
    std::size_t two_bad = 0;
    double two_worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = oracle::uniform_size(rng, 1, 20);
        const auto sigma = oracle::random_curve(rng, m, oracle::uniform_size(rng, 1, 3));
        const std::size_t ell = oracle::uniform_size(rng, 1, m);
        const double approx = dtw_value(simplify_2approx(sigma, ell, 2.0).curve, sigma, 2.0);
        const double exact = dtw_value(simplify_exact_p2(sigma, ell).curve, sigma, 2.0);
        if (approx > 2.0 * exact + kSlack) ++two_bad;
        if (exact > 0.0) two_worst = std::max(two_worst, approx / exact);
    }
    const double eps = 0.1;
    std::size_t eps_bad = 0;
    double eps_worst = 0.0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t m = oracle::uniform_size(rng, 1, 8);
        const auto sigma = oracle::random_curve(rng, m, 2);
        const std::size_t ell = oracle::uniform_size(rng, 1, m);
        const double got = dtw_value(simplify_eps_p1(sigma, ell, eps, t).curve, sigma, 1.0);
        const double grid = oracle::best_partition(sigma, ell, 1.0, [](const Curve& c, std::size_t a, std::size_t b, double) {
            return oracle::grid_median_cell(c, a, b, 0.01);
        });
        if (got > (1.0 + eps) * grid + kSlack) ++eps_bad;
        if (grid > 0.0) eps_worst = std::max(eps_worst, got / grid);
    }
    return {two_bad == 0 && eps_bad == 0,
            fmt("p=2: 200 curves, violations %zu, worst ratio %.4f; p=1 eps=0.1: 200 curves, violations %zu, "
                "worst ratio to grid optimum %.4f",
                two_bad, two_worst, eps_bad, eps_worst)};
}

Outcome metric_kmedian(SensitivityLog*) {
    std::mt19937_64 rng(1007);
    const double eps = 0.5;
    std::size_t bad = 0;
    std::size_t brute_mismatch = 0;
    double worst = 0.0;
    Stopwatch clock;
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = oracle::uniform_size(rng, 2, 12);
        const std::size_t k = oracle::uniform_size(rng, 1, std::min<std::size_t>(3, n));
        FiniteMetricInstance inst{n, oracle::random_graph_metric(rng, n), {}, k};
        std::uniform_real_distribution<double> w(0.1, 5.0);
        for (std::size_t i = 0; i < n; ++i) inst.weights.push_back(w(rng));
        const double ls = kmedian_local_search(inst, eps, static_cast<std::uint64_t>(t)).cost;
        const double opt = kmedian_brute(inst).cost;
        if (std::abs(opt - oracle::kmedian_opt(inst.dist, inst.weights, n, k)) > kSlack) ++brute_mismatch;
        if (ls > (5.0 + eps) * opt + kSlack) ++bad;
        if (opt > 0.0) worst = std::max(worst, ls / opt);
    }
    const double secs = clock.seconds();
    return {bad == 0 && brute_mismatch == 0 && secs < 30.0,
            fmt("200 instances, violations %zu, brute/oracle mismatches %zu, worst ratio %.4f, %.2fs (limit 30s)",
                bad, brute_mismatch, worst, secs)};
}

Outcome bicriteria_envelope(SensitivityLog* log) {
    std::size_t too_many = 0;
    std::size_t bad = 0;
    double worst = 0.0;
    double factor = 0.0;
    for (std::size_t s = 0; s < kTinyCount; ++s) {
        const auto& t = tiny_instances()[s];
        const auto sol = bicriteria_klmedian(t.set, kTinyK, kTinyEll, kTinyP, kTinyEps, 200 + s);
        factor = default_alpha(kTinyEps, t.set.max_complexity(), kTinyEll, kTinyP);
        if (log) log->add(sensitivity_bounds(t.set, sol, kTinyP, factor));
        if (sol.centers.size() > 4 * kTinyK) ++too_many;
        if (sol.cost > factor * t.restricted_opt + kSlack) ++bad;
        if (t.restricted_opt > 0.0) worst = std::max(worst, sol.cost / t.restricted_opt);
    }
    // Cardinality on larger random inputs, where sampling actually subsamples.
    std::mt19937_64 rng(1008);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const std::size_t k = 1 + s % 4;
        const auto set = oracle::random_set(rng, 150, 2, 10, 2);
        const double p = pick_p(rng);
        const auto sol = bicriteria_klmedian(set, k, 3, p, 0.5, s);
        if (log) log->add(sensitivity_bounds(set, sol, p, default_alpha(0.5, set.max_complexity(), 3, p)));
        if (sol.centers.size() > 4 * k) ++too_many;
    }
    return {too_many == 0 && bad == 0,
            fmt("40 runs with |out|>4k: %zu; 20 planted instances, cost > %.1f x restricted-OPT: %zu, "
                "worst ratio %.4f",
                too_many, factor, bad, worst)};
}

std::vector<Curve> perturbed(const std::vector<Curve>& centers, std::mt19937_64& rng, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    std::vector<Curve> out;
    for (const auto& c : centers) {
        std::vector<double> flat(c.coords().begin(), c.coords().end());
        for (auto& x : flat) x += g(rng);
        out.emplace_back(c.id(), c.dim(), std::move(flat));
    }
    return out;
}

Outcome coreset_estimator(SensitivityLog* log) {
    Stopwatch clock;
    std::ostringstream detail;

    // Unbiasedness with fixed sampling probabilities.
    const auto small = gen_synthetic(4, 25, 12, 2, 0.5, 300);
    const std::size_t sk = 2;
    const std::size_t sl = 3;
    const auto simp = simplify_all(small, sl, 1.0, SimplifyMethod::two_approx);
    const auto sol = bicriteria_klmedian(small, simp, sk, sl, 1.0, 0.5, 301);
    const auto prof = sensitivity_bounds(small, sol, 1.0, default_alpha(0.5, small.max_complexity(), sl, 1.0));
    if (log) log->add(prof);
    std::mt19937_64 rng(1009);
    std::vector<std::vector<Curve>> fixed;
    for (int c = 0; c < 5; ++c) {
        std::vector<Curve> centers;
        for (std::size_t j = 0; j < sk; ++j) centers.push_back(simp[oracle::uniform_size(rng, 0, small.size() - 1)].curve);
        fixed.push_back(c % 2 == 0 ? centers : perturbed(centers, rng, 0.5));
    }
    std::vector<double> truth;
    for (const auto& c : fixed) truth.push_back(cost(small, c, 1.0));
    std::vector<double> mean(fixed.size(), 0.0);
    constexpr int kReplicates = 2000;
    for (int r = 0; r < kReplicates; ++r) {
        const auto cs = coreset_sample(small, prof, 20, 5000 + static_cast<std::uint64_t>(r));
        for (std::size_t c = 0; c < fixed.size(); ++c) mean[c] += cost(cs, fixed[c], 1.0) / kReplicates;
    }
    double bias = 0.0;
    for (std::size_t c = 0; c < fixed.size(); ++c) bias = std::max(bias, std::abs(mean[c] - truth[c]) / truth[c]);
    const bool unbiased = bias <= 0.02;
    detail << fmt("unbiasedness: 5 center sets x %d coresets of 20, max relative bias %.4f (limit 0.02); ",
                  kReplicates, bias);

    // Empirical quality on a planted instance.
    const std::size_t k = 3;
    const std::size_t ell = 3;
    const double eps = 0.5;
    std::size_t good_seeds = 0;
    std::ostringstream per_seed;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto set = take(gen_synthetic(3, 167, 32, 2, 0.5, 400 + seed), 500);
        PipelineConfig cfg;
        cfg.k = k;
        cfg.ell = ell;
        cfg.p = 1.0;
        cfg.eps = eps;
        cfg.sample_constant = 0.05;
        cfg.seed = 500 + seed;
        const auto out = emit_coreset_only(set, cfg);
        if (log) log->add(out.profile);

        const auto inputs = simplify_all(set, ell, 1.0, SimplifyMethod::two_approx);
        std::mt19937_64 crng(600 + seed);
        auto random_simplifications = [&] {
            std::vector<Curve> c;
            for (std::size_t j = 0; j < k; ++j) c.push_back(inputs[oracle::uniform_size(crng, 0, set.size() - 1)].curve);
            return c;
        };
        auto from_bicriteria = [&] {
            std::vector<Curve> c;
            const auto& bc = out.bicriteria.centers;
            for (std::size_t j = 0; j < std::min(k, bc.size()); ++j) c.push_back(bc[oracle::uniform_size(crng, 0, bc.size() - 1)]);
            return c;
        };
        std::vector<std::vector<Curve>> candidates;
        while (candidates.size() < 200) {
            switch (candidates.size() % 4) {
                case 0: candidates.push_back(from_bicriteria()); break;
                case 1: candidates.push_back(random_simplifications()); break;
                case 2: candidates.push_back(perturbed(from_bicriteria(), crng, 0.5)); break;
                default: candidates.push_back(perturbed(random_simplifications(), crng, 2.0)); break;
            }
        }
        const auto check = verify_coreset(set, out.coreset, candidates, 1.0, eps);
        const std::size_t ok = candidates.size() - check.failing.size();
        const bool seed_ok = static_cast<double>(ok) >= 0.95 * static_cast<double>(candidates.size());
        if (seed_ok) ++good_seeds;
        per_seed << fmt(" %zu/200(|S|=%zu,max %.3f)", ok, out.coreset.size(), check.max_error);
    }
    const double secs = clock.seconds();
    const bool quality = good_seeds >= 9;
    detail << fmt("quality: seeds with >=95%% of candidates within 0.5: %zu/10 (need 9) [", good_seeds)
           << per_seed.str() << fmt(" ], %.1fs (limit 300s)", secs);
    return {unbiased && quality && secs < 300.0, detail.str()};
}

Outcome end_to_end(SensitivityLog* log) {
    std::ostringstream detail;
    const auto set = take(gen_synthetic(3, 334, 64, 2, 0.5, 700), 1000);
    PipelineConfig cfg;
    cfg.k = 3;
    cfg.ell = 4;
    cfg.p = 1.0;
    cfg.eps = 0.5;
    cfg.seed = 701;
    Stopwatch clock;
    const auto first = kl_median(set, cfg);
    const double secs = clock.seconds();
    const auto second = kl_median(set, cfg);
    if (log) {
        for (const auto& c : first.sensitivity_checks) log->checks.push_back(c);
    }
    bool shape = first.centers.size() == cfg.k;
    for (const auto& c : first.centers) shape = shape && c.size() <= cfg.ell;
    const bool deterministic = first.same_solution(second);
    detail << fmt("n=1000 m=64: %.1fs (limit 600s), deterministic %s, %zu centers of complexity <= %zu %s; ",
                  secs, deterministic ? "yes" : "no", first.centers.size(), cfg.ell, shape ? "yes" : "no");

    std::size_t bad = 0;
    double worst = 0.0;
    double factor = 0.0;
    for (std::size_t s = 0; s < kTinyCount; ++s) {
        const auto& t = tiny_instances()[s];
        PipelineConfig tc;
        tc.k = kTinyK;
        tc.ell = kTinyEll;
        tc.p = kTinyP;
        tc.eps = kTinyEps;
        tc.seed = 800 + s;
        const auto r = kl_median(t.set, tc);
        if (log) {
            for (const auto& c : r.sensitivity_checks) log->checks.push_back(c);
        }
        const double m = static_cast<double>(t.set.max_complexity());
        factor = (32.0 + kTinyEps) * std::pow(4.0 * m * static_cast<double>(kTinyEll), 1.0 / kTinyP);
        if (r.cost > factor * t.restricted_opt + kSlack) ++bad;
        if (t.restricted_opt > 0.0) worst = std::max(worst, r.cost / t.restricted_opt);
    }
    detail << fmt("20 tiny instances, cost > %.1f x restricted-OPT: %zu, worst ratio %.4f", factor, bad, worst);
    return {secs < 600.0 && deterministic && shape && bad == 0, detail.str()};
}

Outcome sensitivity_totals(const SensitivityLog& log) {
    std::size_t bad = 0;
    double closest = oracle::kInf;
    for (const auto& [total, bound] : log.checks) {
        if (total > bound + kSlack) ++bad;
        closest = std::min(closest, bound - total);
    }
    return {bad == 0 && !log.checks.empty(),
            fmt("%zu bicriteria runs, violations %zu, smallest bound - total %.3g", log.checks.size(), bad, closest)};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Outcome(SensitivityLog*)> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "dtw-oracle-equivalence", dtw_oracle_equivalence},
        {2, "weak-triangle", weak_triangle},
        {3, "iterated-triangle", iterated_triangle},
        {4, "quantized-sandwich-and-membership", quantized_sandwich},
        {5, "closure-constants", closure_constants},
        {6, "simplification-bounds", simplification_bounds},
        {7, "metric-kmedian", metric_kmedian},
        {8, "bicriteria-envelope", bicriteria_envelope},
        {9, "coreset-estimator", coreset_estimator},
        {10, "end-to-end-pipeline", end_to_end},
    };
    return all;
}

void report(int id, const char* name, const Outcome& o, double secs) {
    std::printf("CRITERION %d %s: %s %s [%.1fs]\n", id, name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    int only = 0;
    app.add_option("--criterion", only, "Run a single criterion (1-11); all when omitted")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);
    set_thread_count(0);

    bool all_pass = true;
    SensitivityLog log;
    for (const auto& c : criteria()) {
        if (only != 0 && only != c.id) continue;
        Stopwatch clock;
        Outcome o;
        try {
            o = c.run(c.id >= 8 ? &log : nullptr);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        report(c.id, c.name, o, clock.seconds());
        all_pass = all_pass && o.pass;
    }
    if (only == 0 || only == 11) {
        Stopwatch clock;
        Outcome o;
        try {
            if (only == 11) {
                // Standalone: rerun the clustering workloads only to collect their sensitivity totals.
                for (const auto& c : criteria()) {
                    if (c.id >= 8) c.run(&log);
                }
            }
            o = sensitivity_totals(log);
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        report(11, "sensitivity-totals", o, clock.seconds());
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}
