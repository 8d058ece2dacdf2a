#include "dtwc/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>
#include <unordered_set>

#include "dtwc/errors.hpp"

namespace dtwc {

namespace {

void check_finite(const std::string& id, std::span<const double> values) {
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw ValidationError("curve '" + id + "' has a non-finite coordinate");
        }
    }
}

}  // namespace

Curve::Curve(std::string id, const std::vector<Point>& points) : id_(std::move(id)) {
    if (points.empty()) {
        throw ValidationError("curve '" + id_ + "' is empty");
    }
    dim_ = points.front().size();
    if (dim_ == 0) {
        throw ValidationError("curve '" + id_ + "' has zero-dimensional points");
    }
    coords_.reserve(points.size() * dim_);
    for (const auto& p : points) {
        if (p.size() != dim_) {
            throw ValidationError("curve '" + id_ + "' mixes point dimensions");
        }
        coords_.insert(coords_.end(), p.begin(), p.end());
    }
    check_finite(id_, coords_);
}

Curve::Curve(std::string id, std::size_t dim, std::vector<double> flat)
    : id_(std::move(id)), dim_(dim), coords_(std::move(flat)) {
    if (dim_ == 0) {
        throw ValidationError("curve '" + id_ + "' has zero-dimensional points");
    }
    if (coords_.empty()) {
        throw ValidationError("curve '" + id_ + "' is empty");
    }
    if (coords_.size() % dim_ != 0) {
        throw ValidationError("curve '" + id_ + "' has a ragged coordinate buffer");
    }
    check_finite(id_, coords_);
}

std::vector<Point> Curve::points() const {
    std::vector<Point> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto p = (*this)[i];
        out.emplace_back(p.begin(), p.end());
    }
    return out;
}

Curve Curve::with_id(std::string id) const {
    Curve c = *this;
    c.id_ = std::move(id);
    return c;
}

bool Curve::same_points(const Curve& other) const noexcept {
    return dim_ == other.dim_ && coords_.size() == other.coords_.size() &&
           (coords_.empty() ||
            std::memcmp(coords_.data(), other.coords_.data(), coords_.size() * sizeof(double)) == 0);
}

double point_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double diff = a[i] - b[i];
        acc += diff * diff;
    }
    return std::sqrt(acc);
}

CurveSet::CurveSet(std::vector<Curve> curves) : curves_(std::move(curves)) {
    if (curves_.empty()) {
        return;
    }
    dim_ = curves_.front().dim();
    std::unordered_set<std::string> ids;
    for (const auto& c : curves_) {
        if (c.size() == 0) {
            throw ValidationError("curve '" + c.id() + "' is empty");
        }
        if (c.dim() != dim_) {
            throw ValidationError("dimension mismatch: curve '" + c.id() + "' has d=" +
                                  std::to_string(c.dim()) + ", expected d=" + std::to_string(dim_));
        }
        if (!ids.insert(c.id()).second) {
            throw ValidationError("duplicate curve id '" + c.id() + "'");
        }
    }
}

std::size_t CurveSet::max_complexity() const noexcept {
    std::size_t m = 0;
    for (const auto& c : curves_) {
        m = std::max(m, c.size());
    }
    return m;
}

WeightedCurveSet::WeightedCurveSet(std::vector<WeightedCurve> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        return;
    }
    dim_ = entries_.front().curve.dim();
    for (const auto& e : entries_) {
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw ValidationError("entry '" + e.curve.id() + "' has non-positive weight");
        }
        if (e.curve.size() == 0) {
            throw ValidationError("entry '" + e.curve.id() + "' is empty");
        }
        if (e.curve.dim() != dim_) {
            throw ValidationError("dimension mismatch: entry '" + e.curve.id() + "'");
        }
    }
}

WeightedCurveSet WeightedCurveSet::unit_weights(const CurveSet& set) {
    std::vector<WeightedCurve> entries;
    entries.reserve(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        entries.push_back({set[i], 1.0, i});
    }
    return WeightedCurveSet(std::move(entries));
}

double WeightedCurveSet::total_weight() const noexcept {
    return std::accumulate(entries_.begin(), entries_.end(), 0.0,
                           [](double acc, const WeightedCurve& e) { return acc + e.weight; });
}

}  // namespace dtwc
