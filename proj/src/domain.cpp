#include "loopsoup/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

bool segments_intersect(Complex p1, Complex p2, Complex q1, Complex q2) {
    const double d1 = cross(p2 - p1, q1 - p1);
    const double d2 = cross(p2 - p1, q2 - p1);
    const double d3 = cross(q2 - q1, p1 - q1);
    const double d4 = cross(q2 - q1, p2 - q1);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return true;
    auto on = [](Complex a, Complex b, Complex c) {
        return cross(b - a, c - a) == 0.0 && std::min(a.real(), b.real()) <= c.real() &&
               c.real() <= std::max(a.real(), b.real()) &&
               std::min(a.imag(), b.imag()) <= c.imag() && c.imag() <= std::max(a.imag(), b.imag());
    };
    return on(p1, p2, q1) || on(p1, p2, q2) || on(q1, q2, p1) || on(q1, q2, p2);
}

double segment_segment_distance(Complex p1, Complex p2, Complex q1, Complex q2) {
    if (segments_intersect(p1, p2, q1, q2)) return 0.0;
    return std::min(std::min(point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2)),
                    std::min(point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)));
}

}  // namespace

Domain Domain::disk(Complex center, double radius) {
    if (!(radius > 0.0)) throw std::invalid_argument("Domain::disk: radius must be positive");
    Domain d;
    d.is_disk_ = true;
    d.center_ = center;
    d.radius_ = radius;
    d.area_ = M_PI * radius * radius;
    d.bb_xmin_ = center.real() - radius;
    d.bb_xmax_ = center.real() + radius;
    d.bb_ymin_ = center.imag() - radius;
    d.bb_ymax_ = center.imag() + radius;
    if (!d.inside(Complex(0, 0))) throw std::invalid_argument("Domain::disk: must contain origin");
    if (std::abs(center) + radius > 1.0 + 1e-12)
        throw std::invalid_argument("Domain::disk: must fit in the unit disk");
    return d;
}

Domain Domain::polygon(std::vector<Complex> vertices) {
    if (vertices.size() < 3) throw std::invalid_argument("Domain::polygon: need >= 3 vertices");
    Domain d;
    d.is_disk_ = false;
    d.vertices_ = std::move(vertices);
    d.bb_xmin_ = d.bb_ymin_ = 1e300;
    d.bb_xmax_ = d.bb_ymax_ = -1e300;
    double a2 = 0.0;
    for (std::size_t i = 0; i < d.vertices_.size(); ++i) {
        const Complex v = d.vertices_[i];
        const Complex w = d.vertices_[(i + 1) % d.vertices_.size()];
        a2 += cross(v, w);
        d.bb_xmin_ = std::min(d.bb_xmin_, v.real());
        d.bb_xmax_ = std::max(d.bb_xmax_, v.real());
        d.bb_ymin_ = std::min(d.bb_ymin_, v.imag());
        d.bb_ymax_ = std::max(d.bb_ymax_, v.imag());
        if (std::abs(v) > 1.0 + 1e-12)
            throw std::invalid_argument("Domain::polygon: must fit in the unit disk");
    }
    d.area_ = 0.5 * std::fabs(a2);
    if (!d.inside(Complex(0, 0)))
        throw std::invalid_argument("Domain::polygon: must contain origin");
    return d;
}

Domain Domain::slit_disk(int arc_segments, double slit_gap) {
    if (arc_segments < 8) throw std::invalid_argument("slit_disk: need >= 8 arc segments");
    if (!(slit_gap > 0.0 && slit_gap < 0.5)) throw std::invalid_argument("slit_disk: bad gap");
    // circle approximated by a polygon, opened along the positive real axis,
    // with the slit running from radius ~0 out to the rim
    std::vector<Complex> verts;
    const double half = std::asin(slit_gap);
    const double tip = 0.05;
    verts.emplace_back(tip, -slit_gap * tip);
    for (int i = 0; i <= arc_segments; ++i) {
        const double ang = -half - (kTwoPi - 2 * half) * static_cast<double>(i) / arc_segments;
        verts.emplace_back(std::cos(ang), std::sin(ang));
    }
    verts.emplace_back(tip, slit_gap * tip);
    return polygon(std::move(verts));
}

bool Domain::inside(Complex p) const {
    if (is_disk_) return std::abs(p - center_) < radius_;
    // ray cast to the right
    bool in = false;
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        const Complex a = vertices_[i];
        const Complex b = vertices_[(i + 1) % vertices_.size()];
        if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
            const double x = a.real() + (p.imag() - a.imag()) / (b.imag() - a.imag()) *
                                            (b.real() - a.real());
            if (p.real() < x) in = !in;
        }
    }
    return in;
}

double Domain::boundary_distance(Complex p) const {
    if (is_disk_) return radius_ - std::abs(p - center_);
    double best = 1e300;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        best = std::min(best, point_segment_distance(p, vertices_[i],
                                                     vertices_[(i + 1) % vertices_.size()]));
    return inside(p) ? best : -best;
}

bool Domain::segment_inside(Complex a, Complex b) const {
    if (!inside(a) || !inside(b)) return false;
    if (is_disk_) return true;  // convex
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (segments_intersect(a, b, vertices_[i], vertices_[(i + 1) % vertices_.size()]))
            return false;
    return true;
}

double Domain::segment_boundary_distance(Complex a, Complex b) const {
    if (is_disk_) return radius_ - std::max(std::abs(a - center_), std::abs(b - center_));
    double best = 1e300;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        best = std::min(best, segment_segment_distance(a, b, vertices_[i],
                                                       vertices_[(i + 1) % vertices_.size()]));
    return best;
}

double Domain::area() const { return area_; }

Complex Domain::sample_point(Rng& rng) const {
    for (;;) {
        const Complex p(rng.uniform(bb_xmin_, bb_xmax_), rng.uniform(bb_ymin_, bb_ymax_));
        if (inside(p)) return p;
    }
}

SoupRealization restrict_soup(const SoupRealization& soup, const Domain& domain) {
    SoupRealization out = soup;
    out.loops.clear();
    for (const auto& entry : soup.loops) {
        bool keep = true;
        const auto& pts = entry.loop.points;
        for (std::size_t i = 0; i + 1 < pts.size() && keep; ++i)
            keep = domain.segment_inside(pts[i], pts[i + 1]);
        if (keep) out.loops.push_back(entry);
    }
    return out;
}

LayerEstimate boundary_layer_measure(const Domain& domain, double epsilon, double t0, double t_max,
                                     long samples, Rng& rng, int depth) {
    if (!(epsilon >= 0.0)) throw std::invalid_argument("boundary_layer_measure: epsilon < 0");
    if (!(t0 > 0.0 && t0 < t_max)) throw std::invalid_argument("boundary_layer_measure: bad t range");
    const double limit = domain.is_disk() ? std::pow(t0, 1.5) : std::pow(t0, 1.25);
    if (epsilon > limit)
        throw std::invalid_argument("boundary_layer_measure: epsilon too large for t0");
    if (samples < 1) throw std::invalid_argument("boundary_layer_measure: samples < 1");

    LayerEstimate est;
    est.epsilon = epsilon;
    est.t0 = t0;
    est.t_max = t_max;
    est.samples = samples;
    est.total_mass = small_loop_mass(t0, t_max, domain.area());
    est.bound_shape = domain.is_disk() ? epsilon * std::pow(t0, -1.5)
                                       : std::sqrt(epsilon) * std::pow(t0, -1.25);

    for (long i = 0; i < samples; ++i) {
        const Complex root = domain.sample_point(rng);
        const double u = rng.uniform_co();
        const double t = 1.0 / (1.0 / t0 - u * (1.0 / t0 - 1.0 / t_max));
        const BridgePath2D bridge = sample_bridge_2d(depth, rng);
        const ContinuousLoop loop = loop_from_bridge(bridge, t, root);
        bool stays = true;
        bool in_layer = false;
        for (std::size_t j = 0; j + 1 < loop.points.size() && stays; ++j) {
            if (!domain.segment_inside(loop.points[j], loop.points[j + 1])) {
                stays = false;
                break;
            }
            if (in_layer) continue;
            // distance is 1-Lipschitz along the segment, so a far endpoint
            // rules the whole segment out of the layer
            const double d_end = domain.boundary_distance(loop.points[j + 1]);
            const double span = std::abs(loop.points[j + 1] - loop.points[j]);
            if (d_end - span > epsilon) continue;
            if (domain.segment_boundary_distance(loop.points[j], loop.points[j + 1]) <= epsilon)
                in_layer = true;
        }
        if (stays && epsilon > 0.0 && in_layer) ++est.hits;
    }
    const double frac = static_cast<double>(est.hits) / static_cast<double>(samples);
    est.estimate = frac * est.total_mass;
    est.std_error = std::sqrt(std::max(frac * (1.0 - frac), 1e-300) / samples) * est.total_mass;
    return est;
}

BeurlingEstimate beurling_avoidance(Complex z, double r, double t, long samples, Rng& rng,
                                    int steps, bool obstacle) {
    if (std::abs(z) > r + 1e-12)
        throw std::invalid_argument("beurling_avoidance: need |z| <= r");
    if (samples < 1 || steps < 1) throw std::invalid_argument("beurling_avoidance: bad sizes");
    const double dt = t / steps;
    const double sd = std::sqrt(dt);
    long avoided = 0;
    for (long i = 0; i < samples; ++i) {
        Complex pos = z;
        bool hit = false;
        if (obstacle && pos.imag() == 0.0 && pos.real() >= r) hit = true;
        for (int k = 0; k < steps && !hit; ++k) {
            const Complex next(pos.real() + sd * rng.normal(), pos.imag() + sd * rng.normal());
            if (obstacle) {
                const double y0 = pos.imag(), y1 = next.imag();
                if ((y0 > 0.0) != (y1 > 0.0)) {
                    const double xc = pos.real() + (next.real() - pos.real()) * (0.0 - y0) / (y1 - y0);
                    if (xc >= r) hit = true;
                }
            }
            pos = next;
        }
        if (!hit) ++avoided;
    }
    BeurlingEstimate out;
    const double frac = static_cast<double>(avoided) / static_cast<double>(samples);
    out.estimate = frac;
    out.std_error = std::sqrt(std::max(frac * (1.0 - frac), 1e-300) / samples);
    return out;
}

RuinEstimate gambler_ruin_check(double epsilon, double t, long samples, Rng& rng) {
    if (!(epsilon > 0.0 && t > 0.0)) throw std::invalid_argument("gambler_ruin_check: bad input");
    if (samples < 1) throw std::invalid_argument("gambler_ruin_check: samples < 1");
    long stayed = 0;
    const double sd = std::sqrt(t);
    for (long i = 0; i < samples; ++i) {
        const double endpoint = epsilon + sd * rng.normal();
        if (endpoint <= 0.0) continue;
        // P{min > 0 | endpoints} = 1 - exp(-2 a b / t) for a BM bridge from a to b
        if (rng.uniform() > std::exp(-2.0 * epsilon * endpoint / t)) ++stayed;
    }
    RuinEstimate out;
    const double frac = static_cast<double>(stayed) / static_cast<double>(samples);
    out.estimate = frac;
    out.std_error = std::sqrt(std::max(frac * (1.0 - frac), 1e-300) / samples);
    out.exact = std::erf(epsilon / std::sqrt(2.0 * t));
    return out;
}

}  // namespace loopsoup
