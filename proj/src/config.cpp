#include "loopsoup/config.hpp"

#include <json.hpp>

#include <sstream>

#include "loopsoup/json_io.hpp"

namespace loopsoup {

namespace {
using nlohmann::json;
}

std::string print_config(const SampleConfig& c) {
    std::ostringstream os;
    os << "{\"command\":\"sample\",\"kind\":\"" << c.kind << "\",\"lambda\":"
       << format_double(c.lambda) << ",\"scale\":" << c.scale << ",\"window_lo\":" << c.window_lo
       << ",\"window_hi\":" << c.window_hi << ",\"nmax\":" << c.n_max << ",\"seed\":" << c.seed
       << ",\"include_small\":" << (c.include_small ? "true" : "false")
       << ",\"tmin\":" << format_double(c.t_min) << ",\"out\":" << json(c.out).dump() << "}";
    return os.str();
}

std::string print_config(const CoupleConfig& c) {
    std::ostringstream os;
    os << "{\"command\":\"couple\",\"lambda\":" << format_double(c.lambda) << ",\"scales\":[";
    for (std::size_t i = 0; i < c.scales.size(); ++i) {
        if (i) os << ',';
        os << c.scales[i];
    }
    os << "],\"r\":" << format_double(c.r) << ",\"theta\":" << format_double(c.theta)
       << ",\"nmax\":" << c.n_max << ",\"seed\":" << c.seed << ",\"fields\":" << c.fields
       << ",\"threads\":" << c.threads << ",\"out_dir\":" << json(c.out_dir).dump() << "}";
    return os.str();
}

std::string print_config(const VerifyConfig& c) {
    std::ostringstream os;
    os << "{\"command\":\"verify\",\"suite\":\"" << c.suite << "\",\"samples\":" << c.samples
       << ",\"m\":" << c.m << ",\"seed\":" << c.seed << ",\"fields\":" << c.fields
       << ",\"csv\":" << json(c.csv).dump() << "}";
    return os.str();
}

std::string print_config(const RenderConfig& c) {
    std::ostringstream os;
    os << "{\"command\":\"render\",\"input\":" << json(c.input).dump()
       << ",\"out\":" << json(c.out).dump() << "}";
    return os.str();
}

SampleConfig parse_sample_config(const std::string& text) {
    const json j = json::parse(text);
    SampleConfig c;
    c.kind = j.at("kind").get<std::string>();
    c.lambda = j.at("lambda").get<double>();
    c.scale = j.at("scale").get<int>();
    c.window_lo = j.at("window_lo").get<long long>();
    c.window_hi = j.at("window_hi").get<long long>();
    c.n_max = j.at("nmax").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.include_small = j.at("include_small").get<bool>();
    c.t_min = j.at("tmin").get<double>();
    c.out = j.at("out").get<std::string>();
    return c;
}

CoupleConfig parse_couple_config(const std::string& text) {
    const json j = json::parse(text);
    CoupleConfig c;
    c.lambda = j.at("lambda").get<double>();
    c.scales = j.at("scales").get<std::vector<int>>();
    c.r = j.at("r").get<double>();
    c.theta = j.at("theta").get<double>();
    c.n_max = j.at("nmax").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.fields = j.at("fields").get<int>();
    c.threads = j.at("threads").get<int>();
    c.out_dir = j.at("out_dir").get<std::string>();
    return c;
}

VerifyConfig parse_verify_config(const std::string& text) {
    const json j = json::parse(text);
    VerifyConfig c;
    c.suite = j.at("suite").get<std::string>();
    c.samples = j.at("samples").get<long>();
    c.m = j.at("m").get<int>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.fields = j.at("fields").get<int>();
    c.csv = j.at("csv").get<std::string>();
    return c;
}

RenderConfig parse_render_config(const std::string& text) {
    const json j = json::parse(text);
    RenderConfig c;
    c.input = j.at("input").get<std::string>();
    c.out = j.at("out").get<std::string>();
    return c;
}

}  // namespace loopsoup
