#include "svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cheese::tools {

namespace {

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

std::string render_svg(const CheeseConfig& cfg, std::optional<RenderWindow> window) {
    RenderWindow w;
    if (window) {
        w = *window;
    } else {
        w.cx = cfg.square.center.real();
        w.cy = cfg.square.center.imag();
        w.half = cfg.square.half_width * 1.05;
    }
    const double stroke = w.half / 400.0;

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(w.cx - w.half)
       << " " << num(-w.cy - w.half) << " " << num(2.0 * w.half) << " "
       << num(2.0 * w.half) << "\">\n";
    os << "<rect x=\"" << num(cfg.square.center.real() - cfg.square.half_width)
       << "\" y=\"" << num(-cfg.square.center.imag() - cfg.square.half_width)
       << "\" width=\"" << num(2.0 * cfg.square.half_width) << "\" height=\""
       << num(2.0 * cfg.square.half_width)
       << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << num(stroke)
       << "\"/>\n";

    for (const auto& d : cfg.deletions) {
        const double x = d.disc.center.real();
        const double y = d.disc.center.imag();
        const double r = d.disc.radius;
        if (std::abs(x - w.cx) > w.half + r || std::abs(y - w.cy) > w.half + r)
            continue;
        const bool transplant = d.origin.layer == Provenance::Layer::Transplant;
        os << "<circle cx=\"" << num(x) << "\" cy=\"" << num(-y) << "\" r=\""
           << num(r) << "\" fill=\"" << (transplant ? "#4682b4" : "#b22222")
           << "\" fill-opacity=\"0.6\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace cheese::tools
