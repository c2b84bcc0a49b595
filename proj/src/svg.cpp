#include "loopsoup/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace loopsoup {

namespace {

constexpr double kCanvas = 1000.0;
constexpr double kMargin = 40.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.8g", v);
    return buf;
}

std::uint64_t index_hash(const SoupLoop& l) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::uint64_t w) {
        h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 29;
    };
    mix(static_cast<std::uint64_t>(l.n));
    mix(static_cast<std::uint64_t>(l.z.x + (1ll << 32)));
    mix(static_cast<std::uint64_t>(l.z.y + (1ll << 32)));
    mix(static_cast<std::uint64_t>(l.m));
    return h;
}

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                          "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
                          "#8c6d31", "#843c39", "#7b4173", "#3182bd", "#e6550d", "#31a354",
                          "#756bb1", "#636363"};

}  // namespace

void render_svg(std::ostream& os, const std::vector<const SoupRealization*>& soups) {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
    bool any = false;
    for (const auto* soup : soups)
        for (const auto& l : soup->loops)
            for (const auto& p : l.loop.points) {
                if (!any) {
                    xmin = xmax = p.real();
                    ymin = ymax = p.imag();
                    any = true;
                } else {
                    xmin = std::min(xmin, p.real());
                    xmax = std::max(xmax, p.real());
                    ymin = std::min(ymin, p.imag());
                    ymax = std::max(ymax, p.imag());
                }
            }
    const double span = std::max(std::max(xmax - xmin, ymax - ymin), 1e-9);
    const double scale = (kCanvas - 2 * kMargin) / span;
    const double cx = 0.5 * (xmin + xmax);
    const double cy = 0.5 * (ymin + ymax);
    auto px = [&](double x) { return kCanvas / 2 + (x - cx) * scale; };
    auto py = [&](double y) { return kCanvas / 2 - (y - cy) * scale; };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kCanvas << "\" height=\""
       << kCanvas << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n";
    os << "<rect width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"white\"/>\n";
    // axes through the data origin
    os << "<line x1=\"0\" y1=\"" << fmt(py(0)) << "\" x2=\"" << kCanvas << "\" y2=\"" << fmt(py(0))
       << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << fmt(px(0)) << "\" y1=\"0\" x2=\"" << fmt(px(0)) << "\" y2=\"" << kCanvas
       << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

    for (const auto* soup : soups) {
        const bool is_walk = soup->kind == SoupKind::walk;
        for (const auto& l : soup->loops) {
            const char* color = kPalette[index_hash(l) % (sizeof(kPalette) / sizeof(kPalette[0]))];
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
               << (is_walk ? "1.4" : "0.9") << '"';
            if (!l.coupled) os << " stroke-dasharray=\"4 3\"";
            os << " points=\"";
            for (std::size_t i = 0; i < l.loop.points.size(); ++i) {
                if (i) os << ' ';
                os << fmt(px(l.loop.points[i].real())) << ',' << fmt(py(l.loop.points[i].imag()));
            }
            os << "\"/>\n";
        }
    }
    os << "</svg>\n";
}

}  // namespace loopsoup
