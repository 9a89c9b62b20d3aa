#include "onion/render.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace onion::render {

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string step_svg(const LayerAssignment& a, std::uint32_t step) {
    const PointSet& s = a.source();
    if (s.dimension() != 2) throw DomainError("rendering needs planar points");
    if (step == 0 || step > a.num_layers()) {
        throw DomainError("step " + std::to_string(step) + " outside 1.." + std::to_string(a.num_layers()));
    }
    const Scalar r2 = layer_max_norm_sq(a)[step - 1];

    // The frame covers every input point and the circle.
    double extent = std::sqrt(r2.convert_to<double>());
    for (const Point& p : s) {
        extent = std::max({extent, std::abs(p[0].convert_to<double>()), std::abs(p[1].convert_to<double>())});
    }
    const double half = extent * Style::unit + Style::margin;
    const double size = 2 * half;
    auto sx = [&](const Scalar& x) { return fmt(half + x.convert_to<double>() * Style::unit); };
    auto sy = [&](const Scalar& y) { return fmt(half - y.convert_to<double>() * Style::unit); };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(size) + "\" height=\"" + fmt(size) +
           "\" viewBox=\"0 0 " + fmt(size) + ' ' + fmt(size) + "\" data-step=\"" + std::to_string(step) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"" + std::string(Style::background) + "\"/>\n";
    out += "<circle class=\"radius\" cx=\"" + fmt(half) + "\" cy=\"" + fmt(half) + "\" r=\"" +
           fmt(std::sqrt(r2.convert_to<double>()) * Style::unit) + "\" fill=\"none\" stroke=\"" + Style::circle +
           "\" stroke-width=\"" + fmt(Style::stroke_width) + "\" data-radius-sq=\"" + r2.str() + "\"/>\n";
    const auto idx = a.indices();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (idx[i] < step) continue;
        const bool vertex = idx[i] == step;
        out += "<circle class=\"" + std::string(vertex ? "vertex" : "remaining") + "\" cx=\"" + sx(s[i][0]) +
               "\" cy=\"" + sy(s[i][1]) + "\" r=\"" + fmt(Style::point_radius) + "\" fill=\"" +
               (vertex ? Style::vertex : Style::remaining) + "\" data-x=\"" + s[i][0].str() + "\" data-y=\"" +
               s[i][1].str() + "\"/>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace onion::render
