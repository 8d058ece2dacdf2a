#include "dtwc/simplify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dtwc/errors.hpp"
#include "dtwc/parallel.hpp"
#include "dtwc/power.hpp"

namespace dtwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kWeiszfeldIterations = 200;
constexpr double kWeiszfeldTolerance = 1e-10;
constexpr double kWeiszfeldPerturbation = 1e-7;

// Cost and center of every contiguous run [a, b] of input vertices; cost is in PowerSpace
// accumulated form.
struct CellTable {
    std::size_t m = 0;
    std::vector<double> cost;
    std::vector<Point> center;

    explicit CellTable(std::size_t size) : m(size), cost(size * size, kInf), center(size * size) {}
    double& cost_at(std::size_t a, std::size_t b) { return cost[a * m + b]; }
    Point& center_at(std::size_t a, std::size_t b) { return center[a * m + b]; }
};

Point to_point(std::span<const double> s) { return Point(s.begin(), s.end()); }

std::vector<double> pair_terms(const Curve& sigma, const PowerSpace& ps) {
    const std::size_t m = sigma.size();
    std::vector<double> t(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            t[i * m + j] = (i == j) ? ps.term(0.0) : ps.term(point_distance(sigma[i], sigma[j]));
        }
    }
    return t;
}

// Center candidates are the members of the run (medoid) or every vertex (vertex-restricted);
// ties go to the lowest vertex index.
CellTable medoid_cells(const Curve& sigma, const PowerSpace& ps, bool any_vertex) {
    const std::size_t m = sigma.size();
    const auto t = pair_terms(sigma, ps);
    CellTable cells(m);
    std::vector<double> sums(m);
    for (std::size_t a = 0; a < m; ++a) {
        std::fill(sums.begin(), sums.end(), ps.zero());
        for (std::size_t b = a; b < m; ++b) {
            if (any_vertex) {
                for (std::size_t i = 0; i < m; ++i) sums[i] = ps.add(sums[i], t[i * m + b]);
            } else {
                for (std::size_t i = a; i < b; ++i) sums[i] = ps.add(sums[i], t[i * m + b]);
                double fresh = ps.zero();
                for (std::size_t j = a; j <= b; ++j) fresh = ps.add(fresh, t[b * m + j]);
                sums[b] = fresh;
            }
            const std::size_t lo = any_vertex ? 0 : a;
            const std::size_t hi = any_vertex ? m : b + 1;
            std::size_t arg = lo;
            for (std::size_t i = lo + 1; i < hi; ++i) {
                if (sums[i] < sums[arg]) arg = i;
            }
            cells.cost_at(a, b) = sums[arg];
            cells.center_at(a, b) = to_point(sigma[arg]);
        }
    }
    return cells;
}

template <typename CenterFn>
CellTable computed_cells(const Curve& sigma, const PowerSpace& ps, CenterFn&& center_of) {
    const std::size_t m = sigma.size();
    CellTable cells(m);
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a; b < m; ++b) {
            Point c = center_of(a, b);
            double acc = ps.zero();
            for (std::size_t j = a; j <= b; ++j) acc = ps.add(acc, ps.term(point_distance(c, sigma[j])));
            cells.cost_at(a, b) = acc;
            cells.center_at(a, b) = std::move(c);
        }
    }
    return cells;
}

// Exactly `parts` contiguous parts; lexicographically smallest start vector among optima.
Simplification partition(const Curve& sigma, CellTable& cells, std::size_t parts, const PowerSpace& ps) {
    const std::size_t m = sigma.size();
    // best[k][a]: optimum for suffix [a, m) in k parts.
    std::vector<std::vector<double>> best(parts + 1, std::vector<double>(m + 1, kInf));
    for (std::size_t a = 0; a < m; ++a) best[1][a] = cells.cost_at(a, m - 1);
    for (std::size_t k = 2; k <= parts; ++k) {
        for (std::size_t a = 0; a + k <= m; ++a) {
            double v = kInf;
            for (std::size_t b = a; b + k <= m; ++b) {
                v = std::min(v, ps.add(cells.cost_at(a, b), best[k - 1][b + 1]));
            }
            best[k][a] = v;
        }
    }

    Simplification out;
    std::vector<double> flat;
    flat.reserve(parts * sigma.dim());
    std::size_t a = 0;
    for (std::size_t k = parts; k >= 1; --k) {
        std::size_t end = m - 1;
        if (k > 1) {
            for (std::size_t b = a; b + k <= m; ++b) {
                if (ps.add(cells.cost_at(a, b), best[k - 1][b + 1]) == best[k][a]) {
                    end = b;
                    break;
                }
            }
        }
        out.starts.push_back(a);
        const auto& c = cells.center_at(a, end);
        flat.insert(flat.end(), c.begin(), c.end());
        a = end + 1;
    }
    out.cost = ps.root(best[parts][0]);
    out.curve = Curve(sigma.id(), sigma.dim(), std::move(flat));
    return out;
}

Simplification identity(const Curve& sigma) {
    Simplification out{sigma, 0.0, {}};
    for (std::size_t i = 0; i < sigma.size(); ++i) out.starts.push_back(i);
    return out;
}

void check_ell(std::size_t ell) {
    if (ell < 1) throw ValidationError("ell must be >= 1");
}

void check_p(double p) {
    if (!(p >= 1.0) || !std::isfinite(p)) throw ValidationError("p must be a finite real >= 1");
}

double norm(const Point& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double median_cost(const Point& x, const std::vector<std::span<const double>>& points) {
    double s = 0.0;
    for (const auto& q : points) s += point_distance(x, q);
    return s;
}

}  // namespace

SimplifyMethod parse_simplify_method(std::string_view name) {
    if (name == "two-approx") return SimplifyMethod::two_approx;
    if (name == "eps1") return SimplifyMethod::eps1;
    if (name == "vertex") return SimplifyMethod::vertex;
    if (name == "exact-p2") return SimplifyMethod::exact_p2;
    throw ValidationError("unknown simplification method '" + std::string(name) + "'");
}

Point geometric_median(const std::vector<std::span<const double>>& points) {
    if (points.empty()) throw ValidationError("geometric median of no points");
    const std::size_t d = points.front().size();
    Point x(d);
    std::vector<double> column(points.size());
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t i = 0; i < points.size(); ++i) column[i] = points[i][k];
        std::sort(column.begin(), column.end());
        const std::size_t n = column.size();
        x[k] = (n % 2 == 1) ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
    }
    if (points.size() <= 2) return x;

    Point best = x;
    double best_cost = median_cost(x, points);
    Point next(d);
    for (int it = 0; it < kWeiszfeldIterations; ++it) {
        std::fill(next.begin(), next.end(), 0.0);
        double denom = 0.0;
        bool on_point = false;
        for (const auto& q : points) {
            const double dist = point_distance(x, q);
            if (dist < 1e-12) {
                on_point = true;
                break;
            }
            for (std::size_t k = 0; k < d; ++k) next[k] += q[k] / dist;
            denom += 1.0 / dist;
        }
        if (on_point) {
            const double shift = kWeiszfeldPerturbation * std::max(1.0, norm(x));
            for (std::size_t k = 0; k < d; ++k) x[k] += (k % 2 == 0) ? shift : -shift;
            continue;
        }
        double moved = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            next[k] /= denom;
            moved += (next[k] - x[k]) * (next[k] - x[k]);
        }
        std::swap(x, next);
        const double c = median_cost(x, points);
        if (c < best_cost) {
            best_cost = c;
            best = x;
        }
        if (std::sqrt(moved) <= kWeiszfeldTolerance * std::max(1.0, norm(x))) break;
    }
    return best;
}

Simplification simplify_2approx(const Curve& sigma, std::size_t ell, double p) {
    check_ell(ell);
    check_p(p);
    if (sigma.size() <= ell) return identity(sigma);
    const PowerSpace ps(p);
    auto cells = medoid_cells(sigma, ps, false);
    return partition(sigma, cells, ell, ps);
}

Simplification simplify_eps_p1(const Curve& sigma, std::size_t ell, double eps, std::uint64_t /*seed*/) {
    check_ell(ell);
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("eps must be positive");
    if (sigma.size() <= ell) return identity(sigma);
    const PowerSpace ps(1.0);
    auto cells = computed_cells(sigma, ps, [&](std::size_t a, std::size_t b) {
        std::vector<std::span<const double>> members;
        for (std::size_t j = a; j <= b; ++j) members.push_back(sigma[j]);
        return geometric_median(members);
    });
    return partition(sigma, cells, ell, ps);
}

Simplification simplify_vertex_restricted(const Curve& sigma, std::size_t ell, double p) {
    check_ell(ell);
    check_p(p);
    if (ell > sigma.size()) {
        throw ValidationError("vertex-restricted simplification needs ell <= m (ell=" + std::to_string(ell) +
                              ", m=" + std::to_string(sigma.size()) + ")");
    }
    if (ell == sigma.size()) return identity(sigma);
    const PowerSpace ps(p);
    auto cells = medoid_cells(sigma, ps, true);
    return partition(sigma, cells, ell, ps);
}

Simplification simplify_exact_p2(const Curve& sigma, std::size_t ell) {
    check_ell(ell);
    if (sigma.size() <= ell) return identity(sigma);
    const PowerSpace ps(2.0);
    const std::size_t d = sigma.dim();
    auto cells = computed_cells(sigma, ps, [&](std::size_t a, std::size_t b) {
        Point c(d, 0.0);
        for (std::size_t j = a; j <= b; ++j) {
            for (std::size_t k = 0; k < d; ++k) c[k] += sigma[j][k];
        }
        for (auto& v : c) v /= static_cast<double>(b - a + 1);
        return c;
    });
    return partition(sigma, cells, ell, ps);
}

std::vector<Simplification> simplify_all(const CurveSet& set, std::size_t ell, double p, SimplifyMethod method,
                                         double eps) {
    check_ell(ell);
    std::vector<Simplification> out(set.size());
    parallel_for(set.size(), [&](std::size_t i) {
        switch (method) {
            case SimplifyMethod::two_approx: out[i] = simplify_2approx(set[i], ell, p); break;
            case SimplifyMethod::eps1: out[i] = simplify_eps_p1(set[i], ell, eps); break;
            case SimplifyMethod::vertex:
                out[i] = simplify_vertex_restricted(set[i], std::min(ell, set[i].size()), p);
                break;
            case SimplifyMethod::exact_p2: out[i] = simplify_exact_p2(set[i], ell); break;
        }
    });
    return out;
}

}  // namespace dtwc
