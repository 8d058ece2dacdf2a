#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "dtwc/curve.hpp"

namespace dtwc {

enum class CurveFormat { jsonl, csv_long };

CurveFormat parse_format(std::string_view name);
// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
// .csv selects csv-long, anything else jsonl.
CurveFormat format_from_extension(const std::filesystem::path& path);

// jsonl: one object per line with "id" (string, optional), "points" (array of arrays), optional
// "weight". csv-long: header row, then curve_id,seq,x0..x{d-1}; seq is sorted per curve on load.
CurveSet load_curves(const std::filesystem::path& path, CurveFormat format);
CurveSet read_curves(std::istream& in, CurveFormat format);

// jsonl only; a missing "weight" key reads as 1.
WeightedCurveSet load_weighted(const std::filesystem::path& path);
WeightedCurveSet read_weighted(std::istream& in);

void write_curves(std::ostream& out, const CurveSet& set, CurveFormat format = CurveFormat::jsonl);
void write_weighted(std::ostream& out, const WeightedCurveSet& set);
void save_curves(const CurveSet& set, const std::filesystem::path& path, CurveFormat format = CurveFormat::jsonl);
void save_weighted(const WeightedCurveSet& set, const std::filesystem::path& path);

// `clusters` template curves of complexity m in R^d (random walks around a random offset), each
// replicated `per_cluster` times with i.i.d. N(0, noise^2) coordinate noise. Curve i belongs to
// cluster i / per_cluster.
CurveSet gen_synthetic(std::size_t clusters, std::size_t per_cluster, std::size_t m, std::size_t d,
                       double noise, std::uint64_t seed);

}  // namespace dtwc
