#include "dtwc/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dtwc/errors.hpp"
#include "dtwc/power.hpp"

namespace dtwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_pair(const Curve& a, const Curve& b) {
    if (a.dim() != b.dim()) {
        throw ValidationError("dimension mismatch: curve '" + a.id() + "' has d=" + std::to_string(a.dim()) +
                              ", curve '" + b.id() + "' has d=" + std::to_string(b.dim()));
    }
    if (a.size() == 0 || b.size() == 0) {
        throw ValidationError("dtw of an empty curve");
    }
}

void check_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("p must be a finite real >= 1");
}

void check_eps(double eps) {
    if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("eps must lie in (0, 1]");
}

// term(i * l + j) = PowerSpace term of pair (i, j).
std::vector<double> pair_terms(const Curve& a, const Curve& b, const PowerSpace& ps) {
    const std::size_t m = a.size();
    const std::size_t l = b.size();
    std::vector<double> terms(m * l);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            terms[i * l + j] = ps.term(point_distance(a[i], b[j]));
        }
    }
    return terms;
}

// Minimum over traversals of the PowerSpace sum of terms, in accumulated (unrooted) form.
template <typename TermFn>
double dp_minimum(std::size_t m, std::size_t l, const PowerSpace& ps, TermFn&& term) {
    std::vector<double> prev(l, kInf);
    std::vector<double> cur(l, kInf);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            double best;
            if (i == 0 && j == 0) {
                best = ps.zero();
            } else {
                best = kInf;
                if (i > 0 && j > 0) best = prev[j - 1];
                if (j > 0) best = std::min(best, cur[j - 1]);
                if (i > 0) best = std::min(best, prev[j]);
            }
            cur[j] = ps.add(term(i, j), best);
        }
        std::swap(prev, cur);
    }
    return prev[l - 1];
}

}  // namespace

DtwResult dtw(const Curve& a, const Curve& b, double p) {
    check_pair(a, b);
    check_p(p);
    const PowerSpace ps(p);
    const std::size_t m = a.size();
    const std::size_t l = b.size();
    const auto terms = pair_terms(a, b, ps);

    enum Step : unsigned char { kStart, kDiag, kLeft, kUp };
    std::vector<double> acc(m * l);
    std::vector<Step> from(m * l, kStart);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < l; ++j) {
            double best = ps.zero();
            Step step = kStart;
            if (i > 0 || j > 0) {
                best = kInf;
                if (i > 0 && j > 0) {
                    best = acc[(i - 1) * l + j - 1];
                    step = kDiag;
                }
                if (j > 0 && (step == kStart || acc[i * l + j - 1] < best)) {
                    best = acc[i * l + j - 1];
                    step = kLeft;
                }
                if (i > 0 && (step == kStart || acc[(i - 1) * l + j] < best)) {
                    best = acc[(i - 1) * l + j];
                    step = kUp;
                }
            }
            acc[i * l + j] = ps.add(terms[i * l + j], best);
            from[i * l + j] = step;
        }
    }

    DtwResult result;
    result.value = ps.root(acc[m * l - 1]);
    std::size_t i = m - 1;
    std::size_t j = l - 1;
    result.traversal.emplace_back(i, j);
    while (from[i * l + j] != kStart) {
        switch (from[i * l + j]) {
            case kDiag: --i; --j; break;
            case kLeft: --j; break;
            case kUp: --i; break;
            case kStart: break;
        }
        result.traversal.emplace_back(i, j);
    }
    std::reverse(result.traversal.begin(), result.traversal.end());
    return result;
}

double dtw_value(const Curve& a, const Curve& b, double p) {
    check_pair(a, b);
    check_p(p);
    const PowerSpace ps(p);
    return ps.root(dp_minimum(a.size(), b.size(), ps, [&](std::size_t i, std::size_t j) {
        return ps.term(point_distance(a[i], b[j]));
    }));
}

bool is_valid_traversal(const Traversal& t, std::size_t m, std::size_t l) {
    if (t.empty() || m == 0 || l == 0) return false;
    if (t.front() != IndexPair{0, 0} || t.back() != IndexPair{m - 1, l - 1}) return false;
    for (std::size_t k = 1; k < t.size(); ++k) {
        const auto [pi, pj] = t[k - 1];
        const auto [ci, cj] = t[k];
        const bool ok = (ci == pi + 1 && cj == pj) || (ci == pi && cj == pj + 1) || (ci == pi + 1 && cj == pj + 1);
        if (!ok) return false;
    }
    return true;
}

double traversal_cost(const Curve& a, const Curve& b, const Traversal& t, double p) {
    check_pair(a, b);
    check_p(p);
    double sum = 0.0;
    for (const auto& [i, j] : t) {
        if (i >= a.size() || j >= b.size()) throw ValidationError("traversal index out of range");
        sum += std::pow(point_distance(a[i], b[j]), p);
    }
    return std::pow(sum, 1.0 / p);
}

BruteDtwResult dtw_brute(const Curve& a, const Curve& b, double p) {
    check_pair(a, b);
    check_p(p);
    const std::size_t m = a.size();
    const std::size_t l = b.size();
    if (m * l > kBruteDtwMaxCells) {
        throw ResourceGuardError("dtw_brute: m*l = " + std::to_string(m * l) + " exceeds " +
                                 std::to_string(kBruteDtwMaxCells));
    }

    BruteDtwResult out;
    out.best.value = kInf;
    Traversal path{{0, 0}};
    auto visit = [&](auto&& self) -> void {
        const auto [i, j] = path.back();
        if (i == m - 1 && j == l - 1) {
            ++out.traversals;
            const double c = traversal_cost(a, b, path, p);
            if (c < out.best.value) {
                out.best.value = c;
                out.best.traversal = path;
            }
            return;
        }
        const IndexPair next[] = {{i + 1, j + 1}, {i, j + 1}, {i + 1, j}};
        for (const auto& n : next) {
            if (n.first < m && n.second < l) {
                path.push_back(n);
                self(self);
                path.pop_back();
            }
        }
    };
    visit(visit);
    return out;
}

bool ball_membership(const Curve& tau, const Curve& sigma, double r, double p, double eps) {
    check_pair(tau, sigma);
    check_p(p);
    check_eps(eps);
    if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("radius must be a finite positive real");

    const std::size_t l = tau.size();
    const std::size_t m = sigma.size();
    const double spread = std::pow(static_cast<double>(m + l), 1.0 / p);
    const double step = eps / spread;
    const double zmax = std::floor(1.0 / step + 1.0);
    const double scale = step * r;
    const PowerSpace ps(p);

    // Everything below is in units of step * r, so the decision only sees r through the grid
    // index of each pairwise distance; those indices are nonincreasing in r.
    const double acc = dp_minimum(l, m, ps, [&](std::size_t i, std::size_t j) {
        const double q = point_distance(tau[i], sigma[j]) / scale;
        if (q >= zmax) return kInf;
        return ps.term(std::floor(q) + 1.0);
    });
    return step * ps.root(acc) <= 1.0 + spread * step;
}

double grid_radius(double eps, std::int64_t z) { return std::pow(1.0 + eps, static_cast<double>(z)); }

QuantizedDistance adtw(const Curve& sigma, const Curve& tau, double p, double eps) {
    check_pair(sigma, tau);
    check_p(p);
    check_eps(eps);
    const double exact = dtw_value(sigma, tau, p);
    if (exact == 0.0) return {};

    const double base = std::log1p(eps);
    auto lo = static_cast<std::int64_t>(std::floor(std::log(exact) / base)) - 2;
    auto hi = static_cast<std::int64_t>(std::ceil(std::log(exact) / base)) + 1;
    auto accepts = [&](std::int64_t z) { return ball_membership(tau, sigma, grid_radius(eps, z), p, eps); };
    while (accepts(lo)) lo -= 2;
    while (!accepts(hi)) hi += 2;
    // Invariant: rejects at lo, accepts at hi.
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        (accepts(mid) ? hi : lo) = mid;
    }
    return {grid_radius(eps, hi), hi - 1};
}

}  // namespace dtwc
