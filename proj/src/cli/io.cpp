#include "onion/io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace onion::io {

using nlohmann::json;

namespace {

Scalar parse_integer(const std::string& tok) {
    std::size_t i = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
    if (i == tok.size()) throw ParseError("bad integer '" + tok + "'");
    for (std::size_t j = i; j < tok.size(); ++j) {
        if (tok[j] < '0' || tok[j] > '9') throw ParseError("bad integer '" + tok + "'");
    }
    return Scalar(tok[0] == '+' ? tok.substr(1) : tok);
}

bool fits_int64(const Scalar& v) {
    return v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max();
}

nlohmann::ordered_json coordinate_json(const Scalar& v) {
    if (fits_int64(v)) return v.convert_to<std::int64_t>();
    return v.str();
}

Scalar coordinate_from_json(const json& v) {
    if (v.is_number_integer()) {
        return v.is_number_unsigned() ? Scalar(v.get<std::uint64_t>()) : Scalar(v.get<std::int64_t>());
    }
    if (v.is_string()) return parse_integer(v.get<std::string>());
    throw ParseError("coordinates must be integers");
}

}  // namespace

PointSet read_points(std::istream& in) {
    std::vector<Point> pts;
    std::size_t dim = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::vector<Scalar> coords;
        std::string tok;
        while (row >> tok) {
            try {
                coords.push_back(parse_integer(tok));
            } catch (const ParseError&) {
                throw ParseError("line " + std::to_string(line_no) + ": '" + tok + "' is not an integer");
            }
        }
        if (coords.empty()) continue;
        if (dim == 0) dim = coords.size();
        if (coords.size() != dim) {
            throw ParseError("line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                             " coordinates, got " + std::to_string(coords.size()));
        }
        pts.emplace_back(std::move(coords));
    }
    if (pts.empty()) throw ParseError("no points in input");
    return PointSet(dim, std::move(pts));
}

std::string layers_to_json(const LayerAssignment& a, std::optional<std::uint64_t> n) {
    // Built as an ordered object so the key order is d, n, num_layers, layers.
    nlohmann::ordered_json doc;
    doc["d"] = a.source().dimension();
    doc["n"] = n ? nlohmann::ordered_json(*n) : nlohmann::ordered_json(nullptr);
    doc["num_layers"] = a.num_layers();
    auto layers = nlohmann::ordered_json::array();
    for (const auto& layer : a.layers()) {
        auto pts = nlohmann::ordered_json::array();
        for (const Point& p : layer) {
            auto c = nlohmann::ordered_json::array();
            for (const Scalar& x : p.coords()) c.push_back(coordinate_json(x));
            pts.push_back(std::move(c));
        }
        layers.push_back(std::move(pts));
    }
    doc["layers"] = std::move(layers);
    return doc.dump() + "\n";
}

ParsedLayers layers_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("d") || !doc.contains("layers") || !doc.contains("num_layers")) {
        throw ParseError("layer JSON needs d, num_layers and layers");
    }
    if (!doc["d"].is_number_unsigned() || !doc["layers"].is_array()) throw ParseError("malformed layer JSON");
    const std::size_t d = doc["d"].get<std::size_t>();
    std::optional<std::uint64_t> n;
    if (doc.contains("n") && !doc["n"].is_null()) {
        if (!doc["n"].is_number_unsigned()) throw ParseError("n must be a nonnegative integer or null");
        n = doc["n"].get<std::uint64_t>();
    }
    std::vector<std::pair<Point, std::uint32_t>> entries;
    std::uint32_t index = 0;
    for (const auto& layer : doc["layers"]) {
        ++index;
        if (!layer.is_array()) throw ParseError("each layer must be an array of points");
        for (const auto& p : layer) {
            if (!p.is_array() || p.size() != d) throw ParseError("point with the wrong number of coordinates");
            std::vector<Scalar> coords;
            for (const auto& c : p) coords.push_back(coordinate_from_json(c));
            entries.emplace_back(Point(std::move(coords)), index);
        }
    }
    if (doc["num_layers"] != index) throw ParseError("num_layers does not match the layers array");
    std::vector<Point> pts;
    for (const auto& e : entries) pts.push_back(e.first);
    PointSet source(d, std::move(pts));
    if (source.size() != entries.size()) throw ParseError("duplicate point in layer JSON");
    std::vector<std::uint32_t> layer_of(source.size());
    for (const auto& [p, l] : entries) layer_of[*source.index_of(p)] = l;
    try {
        return ParsedLayers{d, n, LayerAssignment(std::move(source), std::move(layer_of))};
    } catch (const DomainError& e) {
        throw ParseError(e.what());
    }
}

std::string layers_to_csv(const LayerAssignment& a) {
    std::string out;
    const auto idx = a.indices();
    for (std::size_t i = 0; i < a.source().size(); ++i) {
        for (const Scalar& x : a.source()[i].coords()) out += x.str() + ',';
        out += std::to_string(idx[i]) + '\n';
    }
    return out;
}

LayerAssignment to_one_based(const LayerAssignment& a, std::uint64_t n) {
    std::vector<Point> pts;
    for (const Point& p : a.source()) pts.push_back(untranslate_convention(p, n));
    // Translation preserves lexicographic order, so layer indices keep their positions.
    std::vector<std::uint32_t> layers(a.indices().begin(), a.indices().end());
    return LayerAssignment(PointSet(a.source().dimension(), std::move(pts)), std::move(layers));
}

GrowthFit fit_log_log(const std::vector<std::uint64_t>& sides, const std::vector<std::uint64_t>& layers) {
    if (sides.size() < 2 || sides.size() != layers.size()) throw DomainError("need >= 2 sizes for a fit");
    const double m = static_cast<double>(sides.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const double x = std::log(static_cast<double>(sides[i]));
        const double y = std::log(static_cast<double>(layers[i]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = m * sxx - sx * sx;
    if (denom == 0) throw DomainError("need >= 2 distinct sizes for a fit");
    GrowthFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    return fit;
}

}  // namespace onion::io
