#include "loopsoup/json_io.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace loopsoup {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

const char* kind_name(SoupKind k) { return k == SoupKind::walk ? "walk" : "brownian"; }

void write_window(std::ostream& os, const Window& w) {
    os << '[' << w.xmin << ',' << w.xmax << ',' << w.ymin << ',' << w.ymax << ']';
}

void write_soup_body(std::ostream& os, const SoupRealization& soup) {
    os << "{\"schema_version\":" << kSchemaVersion << ",\"kind\":\"" << kind_name(soup.kind)
       << "\",\"lambda\":" << format_double(soup.lambda) << ",\"scaleN\":" << soup.scale
       << ",\"seed\":" << soup.seed << ",\"window\":";
    write_window(os, soup.window);
    os << ",\"nmax\":" << soup.n_max << ",\"tmin\":" << format_double(soup.t_min)
       << ",\"loops\":[";
    for (std::size_t i = 0; i < soup.loops.size(); ++i) {
        const SoupLoop& l = soup.loops[i];
        if (i) os << ',';
        os << "{\"n\":" << l.n << ",\"z\":[" << l.z.x << ',' << l.z.y << "],\"m\":" << l.m
           << ",\"duration\":" << format_double(l.loop.duration)
           << ",\"coupled\":" << (l.coupled ? "true" : "false") << ",\"points\":[";
        for (std::size_t j = 0; j < l.loop.points.size(); ++j) {
            if (j) os << ',';
            os << '[' << format_double(l.loop.times[j]) << ','
               << format_double(l.loop.points[j].real()) << ','
               << format_double(l.loop.points[j].imag()) << ']';
        }
        os << "]}";
    }
    os << "]}";
}

SoupRealization parse_soup(const nlohmann::json& j) {
    SoupRealization soup;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "walk")
        soup.kind = SoupKind::walk;
    else if (kind == "brownian")
        soup.kind = SoupKind::brownian;
    else
        throw std::runtime_error("soup json: unknown kind '" + kind + "'");
    soup.lambda = j.at("lambda").get<double>();
    soup.scale = j.at("scaleN").get<int>();
    soup.seed = j.at("seed").get<std::uint64_t>();
    const auto& w = j.at("window");
    soup.window = {w.at(0).get<long long>(), w.at(1).get<long long>(), w.at(2).get<long long>(),
                   w.at(3).get<long long>()};
    soup.n_max = j.at("nmax").get<int>();
    soup.t_min = j.at("tmin").get<double>();
    for (const auto& jl : j.at("loops")) {
        SoupLoop l;
        l.n = jl.at("n").get<int>();
        l.z = {jl.at("z").at(0).get<long long>(), jl.at("z").at(1).get<long long>()};
        l.m = jl.at("m").get<int>();
        l.coupled = jl.at("coupled").get<bool>();
        l.loop.duration = jl.at("duration").get<double>();
        const auto& pts = jl.at("points");
        l.loop.times.reserve(pts.size());
        l.loop.points.reserve(pts.size());
        for (const auto& p : pts) {
            l.loop.times.push_back(p.at(0).get<double>());
            l.loop.points.emplace_back(p.at(1).get<double>(), p.at(2).get<double>());
        }
        if (l.loop.points.empty()) throw std::runtime_error("soup json: loop without points");
        l.loop.root = l.loop.points.front();
        soup.loops.push_back(std::move(l));
    }
    return soup;
}

}  // namespace

void write_soup_json(std::ostream& os, const SoupRealization& soup) {
    write_soup_body(os, soup);
    os << '\n';
}

void write_soup_pair_json(std::ostream& os, const SoupRealization& walk,
                          const SoupRealization& brownian) {
    os << "{\"schema_version\":" << kSchemaVersion << ",\"kind\":\"pair\",\"walk\":";
    write_soup_body(os, walk);
    os << ",\"brownian\":";
    write_soup_body(os, brownian);
    os << "}\n";
}

void write_report_json(std::ostream& os, const CouplingReport& rep) {
    os << "{\"schema_version\":" << kSchemaVersion << ",\"kind\":\"coupling_report\""
       << ",\"lambda\":" << format_double(rep.lambda) << ",\"scaleN\":" << rep.scale
       << ",\"r\":" << format_double(rep.r) << ",\"theta\":" << format_double(rep.theta)
       << ",\"seed\":" << rep.seed << ",\"window\":";
    write_window(os, rep.window);
    os << ",\"nmax\":" << rep.n_max << ",\"nmin\":" << rep.n_min
       << ",\"duration_bound\":" << format_double(rep.duration_bound)
       << ",\"bijection\":" << (rep.bijection ? "true" : "false")
       << ",\"max_duration_gap\":" << format_double(rep.max_duration_gap)
       << ",\"max_sup_distance\":" << format_double(rep.max_sup_distance)
       << ",\"neglected_rate_per_cell\":" << format_double(rep.neglected_rate_per_cell)
       << ",\"window_covers_radius\":" << (rep.window_covers_radius ? "true" : "false");
    os << ",\"pairs\":[";
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) {
        const auto& p = rep.pairs[i];
        if (i) os << ',';
        os << "{\"n\":" << p.index.n << ",\"z\":[" << p.index.z.x << ',' << p.index.z.y
           << "],\"m\":" << p.index.m << ",\"duration_gap\":" << format_double(p.duration_gap)
           << ",\"sup_distance\":" << format_double(p.sup_distance) << '}';
    }
    os << "],\"walk_only\":[";
    for (std::size_t i = 0; i < rep.walk_only.size(); ++i) {
        const auto& e = rep.walk_only[i];
        if (i) os << ',';
        os << "{\"n\":" << e.n << ",\"z\":[" << e.z.x << ',' << e.z.y << "],\"m\":" << e.m << '}';
    }
    os << "],\"brownian_only\":[";
    for (std::size_t i = 0; i < rep.brownian_only.size(); ++i) {
        const auto& e = rep.brownian_only[i];
        if (i) os << ',';
        os << "{\"n\":" << e.n << ",\"z\":[" << e.z.x << ',' << e.z.y << "],\"m\":" << e.m << '}';
    }
    os << "]}\n";
}

SoupFile read_soup_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw std::runtime_error("json parse error in '" + path + "': " + e.what());
    }
    if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw std::runtime_error("unsupported schema version in '" + path + "'");
    SoupFile f;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "pair") {
        f.is_pair = true;
        f.walk = parse_soup(j.at("walk"));
        f.brownian = parse_soup(j.at("brownian"));
    } else {
        f.single = parse_soup(j);
    }
    return f;
}

}  // namespace loopsoup
