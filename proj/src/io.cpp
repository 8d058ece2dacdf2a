#include "dtwc/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dtwc/errors.hpp"
#include "dtwc/random.hpp"

namespace dtwc {

namespace {

using json = nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open '" + path.string() + "'");
    }
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    return out;
}

bool blank(const std::string& line) {
    return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

struct JsonRecord {
    Curve curve;
    double weight = 1.0;
};

JsonRecord parse_json_line(const std::string& line, std::size_t lineno, std::size_t row) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw ParseError(lineno, e.what());
    }
    if (!obj.is_object()) throw ParseError(lineno, "expected a JSON object");
    std::string id = std::to_string(row);
    if (auto it = obj.find("id"); it != obj.end()) {
        if (!it->is_string()) throw ParseError(lineno, "\"id\" must be a string");
        id = it->get<std::string>();
    }
    auto pts = obj.find("points");
    if (pts == obj.end() || !pts->is_array()) throw ParseError(lineno, "missing \"points\" array");
    if (pts->empty()) throw ValidationError("curve '" + id + "' is empty (line " + std::to_string(lineno) + ")");
    std::vector<Point> points;
    points.reserve(pts->size());
    for (const auto& p : *pts) {
        if (!p.is_array() || p.empty()) throw ParseError(lineno, "each point must be a non-empty array");
        Point point;
        point.reserve(p.size());
        for (const auto& v : p) {
            if (!v.is_number()) throw ParseError(lineno, "coordinates must be numbers");
            point.push_back(v.get<double>());
        }
        if (!points.empty() && point.size() != points.front().size()) {
            throw ValidationError("dimension mismatch inside curve '" + id + "' (line " + std::to_string(lineno) + ")");
        }
        points.push_back(std::move(point));
    }
    JsonRecord rec{Curve(id, points), 1.0};
    if (auto it = obj.find("weight"); it != obj.end()) {
        if (!it->is_number()) throw ParseError(lineno, "\"weight\" must be a number");
        rec.weight = it->get<double>();
        if (!(rec.weight > 0.0)) throw ParseError(lineno, "\"weight\" must be positive");
    }
    return rec;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && std::isspace(static_cast<unsigned char>(cell.back()))) cell.pop_back();
        std::size_t start = 0;
        while (start < cell.size() && std::isspace(static_cast<unsigned char>(cell[start]))) ++start;
        out.push_back(cell.substr(start));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

template <typename T>
T parse_number(const std::string& text, std::size_t lineno) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    if (!text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) {
        throw ParseError(lineno, "cannot parse number '" + text + "'");
    }
    return value;
}

CurveSet read_jsonl(std::istream& in) {
    std::vector<Curve> curves;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        curves.push_back(parse_json_line(line, lineno, curves.size()).curve);
    }
    return CurveSet(std::move(curves));
}

CurveSet read_csv_long(std::istream& in) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t dim = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto header = split_csv(line);
        if (header.size() < 3) throw ParseError(lineno, "header must be curve_id,seq,x0[,x1...]");
        dim = header.size() - 2;
        break;
    }
    if (dim == 0) return CurveSet{};

    std::vector<std::string> order;
    std::map<std::string, std::vector<std::pair<long long, std::vector<double>>>> rows;
    std::map<std::string, std::size_t> first_line;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        const auto cells = split_csv(line);
        if (cells.size() != dim + 2) {
            throw ParseError(lineno, "expected " + std::to_string(dim + 2) + " columns, got " +
                                         std::to_string(cells.size()));
        }
        const std::string& id = cells[0];
        if (id.empty()) throw ParseError(lineno, "empty curve_id");
        const auto seq = parse_number<long long>(cells[1], lineno);
        std::vector<double> coords(dim);
        for (std::size_t j = 0; j < dim; ++j) coords[j] = parse_number<double>(cells[j + 2], lineno);
        auto [it, inserted] = rows.try_emplace(id);
        if (inserted) {
            order.push_back(id);
            first_line[id] = lineno;
        }
        it->second.emplace_back(seq, std::move(coords));
    }

    std::vector<Curve> curves;
    curves.reserve(order.size());
    for (const auto& id : order) {
        auto& pts = rows[id];
        std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        for (std::size_t i = 1; i < pts.size(); ++i) {
            if (pts[i].first == pts[i - 1].first) {
                throw ParseError(first_line[id], "curve '" + id + "' repeats seq " + std::to_string(pts[i].first));
            }
        }
        std::vector<double> flat;
        flat.reserve(pts.size() * dim);
        for (auto& [seq, c] : pts) flat.insert(flat.end(), c.begin(), c.end());
        curves.emplace_back(id, dim, std::move(flat));
    }
    return CurveSet(std::move(curves));
}

json curve_json(const Curve& c) {
    json pts = json::array();
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto p = c[i];
        pts.push_back(std::vector<double>(p.begin(), p.end()));
    }
    return json{{"id", c.id()}, {"points", std::move(pts)}};
}

}  // namespace

CurveFormat parse_format(std::string_view name) {
    if (name == "jsonl") return CurveFormat::jsonl;
    if (name == "csv-long" || name == "csv") return CurveFormat::csv_long;
    throw ValidationError("unknown curve format '" + std::string(name) + "'");
}

CurveFormat format_from_extension(const std::filesystem::path& path) {
    return path.extension() == ".csv" ? CurveFormat::csv_long : CurveFormat::jsonl;
}

CurveSet read_curves(std::istream& in, CurveFormat format) {
    return format == CurveFormat::jsonl ? read_jsonl(in) : read_csv_long(in);
}

CurveSet load_curves(const std::filesystem::path& path, CurveFormat format) {
    auto in = open_input(path);
    return read_curves(in, format);
}

WeightedCurveSet read_weighted(std::istream& in) {
    std::vector<WeightedCurve> entries;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (blank(line)) continue;
        auto rec = parse_json_line(line, lineno, entries.size());
        entries.push_back({std::move(rec.curve), rec.weight, entries.size()});
    }
    return WeightedCurveSet(std::move(entries));
}

WeightedCurveSet load_weighted(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_weighted(in);
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_curves(std::ostream& out, const CurveSet& set, CurveFormat format) {
    if (format == CurveFormat::jsonl) {
        for (const auto& c : set) out << curve_json(c).dump() << '\n';
        return;
    }
    out << "curve_id,seq";
    for (std::size_t k = 0; k < set.dim(); ++k) out << ",x" << k;
    out << '\n';
    for (const auto& c : set) {
        if (c.id().find_first_of(",\n") != std::string::npos) {
            throw ValidationError("curve id '" + c.id() + "' cannot be written as csv");
        }
        for (std::size_t i = 0; i < c.size(); ++i) {
            out << c.id() << ',' << i;
            for (double v : c[i]) out << ',' << format_double(v);
            out << '\n';
        }
    }
}

void write_weighted(std::ostream& out, const WeightedCurveSet& set) {
    for (const auto& e : set) {
        if (!(e.weight > 0.0)) throw ValidationError("entry '" + e.curve.id() + "' has non-positive weight");
    }
    for (const auto& e : set) {
        auto obj = curve_json(e.curve);
        obj["weight"] = e.weight;
        out << obj.dump() << '\n';
    }
}

void save_curves(const CurveSet& set, const std::filesystem::path& path, CurveFormat format) {
    auto out = open_output(path);
    write_curves(out, set, format);
}

void save_weighted(const WeightedCurveSet& set, const std::filesystem::path& path) {
    for (const auto& e : set) {
        if (!(e.weight > 0.0)) throw ValidationError("entry '" + e.curve.id() + "' has non-positive weight");
    }
    auto out = open_output(path);
    write_weighted(out, set);
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

CurveSet gen_synthetic(std::size_t clusters, std::size_t per_cluster, std::size_t m, std::size_t d,
                       double noise, std::uint64_t seed) {
    if (clusters < 1 || per_cluster < 1 || m < 1 || d < 1) {
        throw ValidationError("gen_synthetic: all sizes must be >= 1");
    }
    if (!(noise >= 0.0) || !std::isfinite(noise)) throw ValidationError("gen_synthetic: noise must be >= 0");

    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> offset(-20.0, 20.0);
    std::normal_distribution<double> step(0.0, 1.0);
    std::vector<std::vector<double>> templates(clusters, std::vector<double>(m * d));
    for (auto& t : templates) {
        std::vector<double> pos(d);
        for (auto& x : pos) x = offset(rng);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                if (i > 0) pos[j] += step(rng);
                t[i * d + j] = pos[j];
            }
        }
    }

    std::normal_distribution<double> jitter(0.0, 1.0);
    std::vector<Curve> curves;
    curves.reserve(clusters * per_cluster);
    for (std::size_t c = 0; c < clusters; ++c) {
        for (std::size_t r = 0; r < per_cluster; ++r) {
            auto flat = templates[c];
            if (noise > 0.0) {
                for (auto& x : flat) x += noise * jitter(rng);
            }
            curves.emplace_back("c" + std::to_string(c) + "_" + std::to_string(r), d, std::move(flat));
        }
    }
    return CurveSet(std::move(curves));
}

}  // namespace dtwc
