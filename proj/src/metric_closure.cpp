#include "dtwc/metric_closure.hpp"

#include <algorithm>
#include <limits>

#include "dtwc/dtw.hpp"
#include "dtwc/errors.hpp"
#include "dtwc/parallel.hpp"

namespace dtwc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_cap(std::size_t n, std::size_t cap) {
    if (n > cap) {
        throw ResourceGuardError("metric closure over " + std::to_string(n) + " items exceeds the cap of " +
                                 std::to_string(cap));
    }
}

void check_sources(std::size_t n, const std::vector<std::size_t>& sources) {
    if (sources.empty()) throw ValidationError("source set must be non-empty");
    for (auto s : sources) {
        if (s >= n) throw ValidationError("source index " + std::to_string(s) + " out of range");
    }
}

// Dense Dijkstra: the graph is complete, so a linear scan for the next vertex is optimal.
// weight(u, v) is called once per settled u and unsettled v. Ties settle the lowest index first.
template <typename WeightFn>
std::vector<double> dense_dijkstra(std::size_t n, const std::vector<std::size_t>& sources, WeightFn&& weight) {
    std::vector<double> dist(n, kInf);
    std::vector<char> done(n, 0);
    for (auto s : sources) dist[s] = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
        std::size_t u = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!done[v] && (u == n || dist[v] < dist[u])) u = v;
        }
        if (u == n || dist[u] == kInf) break;
        done[u] = 1;
        for (std::size_t v = 0; v < n; ++v) {
            if (done[v]) continue;
            const double cand = dist[u] + weight(u, v);
            if (cand < dist[v]) dist[v] = cand;
        }
    }
    return dist;
}

}  // namespace

std::vector<double> all_pairs_shortest_paths(const std::vector<double>& base, std::size_t n) {
    if (base.size() != n * n) throw ValidationError("base matrix must be n x n");
    std::vector<double> dist(n * n);
    parallel_for(n, [&](std::size_t s) {
        const auto row = dense_dijkstra(n, {s}, [&](std::size_t u, std::size_t v) { return base[u * n + v]; });
        std::copy(row.begin(), row.end(), dist.begin() + static_cast<std::ptrdiff_t>(s * n));
    });
    // The two directions of a pair can differ in the last bit; keep the smaller.
    for (std::size_t i = 0; i < n; ++i) {
        dist[i * n + i] = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = std::min(dist[i * n + j], dist[j * n + i]);
            dist[i * n + j] = v;
            dist[j * n + i] = v;
        }
    }
    return dist;
}

MetricClosure closure_of(std::size_t n, const DistanceFn& base, std::vector<std::string> ids, std::size_t cap) {
    if (n < 1) throw ValidationError("metric closure needs at least one item");
    check_cap(n, cap);
    if (ids.empty()) {
        for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
    }
    if (ids.size() != n) throw ValidationError("closure id count does not match item count");

    MetricClosure out;
    out.ids = std::move(ids);
    out.n = n;
    out.base.assign(n * n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 1; j < n; ++j) out.base[i * n + j] = base(i, j);
    });
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) out.base[j * n + i] = out.base[i * n + j];
    }
    out.dist = all_pairs_shortest_paths(out.base, n);
    return out;
}

MetricClosure build_closure(const CurveSet& set, double p, std::size_t cap) {
    check_cap(set.size(), cap);
    std::vector<std::string> ids;
    ids.reserve(set.size());
    for (const auto& c : set) ids.push_back(c.id());
    return closure_of(
        set.size(), [&](std::size_t i, std::size_t j) { return dtw_value(set[i], set[j], p); }, std::move(ids),
        cap);
}

std::vector<double> distances_from_set(const MetricClosure& closure, const std::vector<std::size_t>& sources) {
    check_sources(closure.n, sources);
    const std::size_t n = closure.n;
    return dense_dijkstra(n, sources, [&](std::size_t u, std::size_t v) { return closure.base[u * n + v]; });
}

std::vector<double> distances_from_set(std::size_t n, const DistanceFn& base, const std::vector<std::size_t>& sources) {
    check_sources(n, sources);
    return dense_dijkstra(n, sources, base);
}

std::vector<double> distances_from_set(const CurveSet& set, double p, const std::vector<std::size_t>& sources) {
    return distances_from_set(
        set.size(), [&](std::size_t i, std::size_t j) { return dtw_value(set[i], set[j], p); }, sources);
}

}  // namespace dtwc
