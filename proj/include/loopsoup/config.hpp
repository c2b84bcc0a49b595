#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace loopsoup {

// Per-command experiment configuration; serializes to JSON and round-trips
// exactly (parse(print(c)) == c).
struct SampleConfig {
    std::string kind = "both";  // walk | brownian | both
    double lambda = 1.0;
    int scale = 1;
    long long window_lo = -8, window_hi = 8;
    int n_max = 64;
    std::uint64_t seed = 1;
    bool include_small = false;
    double t_min = 0.1;
    std::string out = "soup.json";
    friend bool operator==(const SampleConfig&, const SampleConfig&) = default;
};

struct CoupleConfig {
    double lambda = 1.0;
    std::vector<int> scales = {8};
    double r = 1.0;
    double theta = 1.0;
    int n_max = 512;
    std::uint64_t seed = 1;
    int fields = 10;
    int threads = 0;
    std::string out_dir = ".";
    friend bool operator==(const CoupleConfig&, const CoupleConfig&) = default;
};

struct VerifyConfig {
    std::string suite = "clt";
    long samples = 100000;
    int m = 100;
    std::uint64_t seed = 1;
    int fields = 20;
    std::string csv = "";
    friend bool operator==(const VerifyConfig&, const VerifyConfig&) = default;
};

struct RenderConfig {
    std::string input = "soup.json";
    std::string out = "soup.svg";
    friend bool operator==(const RenderConfig&, const RenderConfig&) = default;
};

std::string print_config(const SampleConfig& c);
std::string print_config(const CoupleConfig& c);
std::string print_config(const VerifyConfig& c);
std::string print_config(const RenderConfig& c);

SampleConfig parse_sample_config(const std::string& json);
CoupleConfig parse_couple_config(const std::string& json);
VerifyConfig parse_verify_config(const std::string& json);
RenderConfig parse_render_config(const std::string& json);

}  // namespace loopsoup
