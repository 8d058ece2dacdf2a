#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dtwc {

// Absolute slack used by every distance comparison in the library and its tests.
inline constexpr double kTolerance = 1e-9;

using Point = std::vector<double>;

// A finite sequence of d-dimensional points, stored flat (row-major, one row per point).
// Immutable after construction; the constructor enforces m >= 1, d >= 1 and finite coordinates.
class Curve {
public:
    Curve() = default;
    Curve(std::string id, const std::vector<Point>& points);
    Curve(std::string id, std::size_t dim, std::vector<double> flat);

    const std::string& id() const noexcept { return id_; }
    std::size_t size() const noexcept { return dim_ == 0 ? 0 : coords_.size() / dim_; }
    std::size_t dim() const noexcept { return dim_; }

    std::span<const double> operator[](std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    std::span<const double> coords() const noexcept { return coords_; }
    std::vector<Point> points() const;

    Curve with_id(std::string id) const;

    // Bitwise equality on coordinates; ids are ignored.
    bool same_points(const Curve& other) const noexcept;

    friend bool operator==(const Curve&, const Curve&) = default;

private:
    std::string id_;
    std::size_t dim_ = 0;
    std::vector<double> coords_;
};

double point_distance(std::span<const double> a, std::span<const double> b);

// Ordered collection of curves sharing one dimension, with unique ids.
class CurveSet {
public:
    CurveSet() = default;
    explicit CurveSet(std::vector<Curve> curves);

    std::size_t size() const noexcept { return curves_.size(); }
    bool empty() const noexcept { return curves_.empty(); }
    std::size_t dim() const noexcept { return dim_; }
    std::size_t max_complexity() const noexcept;

    const Curve& operator[](std::size_t i) const { return curves_[i]; }
    const std::vector<Curve>& curves() const noexcept { return curves_; }
    auto begin() const noexcept { return curves_.begin(); }
    auto end() const noexcept { return curves_.end(); }

    friend bool operator==(const CurveSet&, const CurveSet&) = default;

private:
    std::vector<Curve> curves_;
    std::size_t dim_ = 0;
};

struct WeightedCurve {
    Curve curve;
    double weight = 1.0;
    // Index of the originating input curve, when the entry was sampled from a CurveSet.
    // Bookkeeping only: not serialized and not part of equality.
    std::size_t source = 0;

    friend bool operator==(const WeightedCurve& a, const WeightedCurve& b) {
        return a.curve == b.curve && a.weight == b.weight;
    }
};

// Weighted multiset of curves: every weight > 0, uniform dimension. Duplicate curves are allowed.
class WeightedCurveSet {
public:
    WeightedCurveSet() = default;
    explicit WeightedCurveSet(std::vector<WeightedCurve> entries);

    static WeightedCurveSet unit_weights(const CurveSet& set);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t dim() const noexcept { return dim_; }
    double total_weight() const noexcept;

    const WeightedCurve& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<WeightedCurve>& entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    friend bool operator==(const WeightedCurveSet&, const WeightedCurveSet&) = default;

private:
    std::vector<WeightedCurve> entries_;
    std::size_t dim_ = 0;
};

}  // namespace dtwc
