// Command-line driver: soup sampling, coupling reports, verification suites,
// and rendering.  Every command is a pure function of (config, seed); reruns
// produce byte-identical files.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "loopsoup/config.hpp"
#include "loopsoup/json_io.hpp"
#include "loopsoup/soup.hpp"
#include "loopsoup/svg.hpp"
#include "loopsoup/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitIo = 2;
constexpr int kExitSuiteFailure = 3;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write '" + path + "'");
    return out;
}

bool parse_window(const std::string& text, long long& lo, long long& hi) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return false;
    try {
        lo = std::stoll(text.substr(0, colon));
        hi = std::stoll(text.substr(colon + 1));
    } catch (...) {
        return false;
    }
    return lo <= hi;
}

int run_sample(const loopsoup::SampleConfig& cfg) {
    using namespace loopsoup;
    if (cfg.kind != "walk" && cfg.kind != "brownian" && cfg.kind != "both")
        throw std::invalid_argument("unknown kind '" + cfg.kind + "'");
    const Window window{cfg.window_lo, cfg.window_hi, cfg.window_lo, cfg.window_hi};
    const PoissonField field(window, cfg.n_max, cfg.lambda, cfg.seed);
    auto out = open_out(cfg.out);
    if (cfg.kind == "walk") {
        write_soup_json(out, rw_soup(field, cfg.lambda, cfg.scale));
    } else if (cfg.kind == "brownian") {
        write_soup_json(out,
                        brownian_soup(field, cfg.lambda, cfg.scale, cfg.include_small, cfg.t_min));
    } else {
        write_soup_pair_json(out, rw_soup(field, cfg.lambda, cfg.scale),
                             brownian_soup(field, cfg.lambda, cfg.scale, cfg.include_small,
                                           cfg.t_min));
    }
    std::cout << "wrote " << cfg.out << "\n";
    return kExitOk;
}

int run_couple(const loopsoup::CoupleConfig& cfg) {
    using namespace loopsoup;
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    auto csv = open_out((fs::path(cfg.out_dir) / "couple_summary.csv").string());
    csv << "scaleN,seed,pairs,walk_only,brownian_only,bijection,failure_rate,max_duration_gap,"
           "duration_bound,max_sup_distance\n";
    for (int scale : cfg.scales) {
        const Window window{-scale, scale, -scale, scale};
        int failures = 0;
        double max_gap = 0.0, max_sup = 0.0, bound = 0.0;
        for (int i = 0; i < cfg.fields; ++i) {
            const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(i);
            const PoissonField field(window, cfg.n_max, cfg.lambda, seed);
            const CouplingReport rep = build_coupling_report(field, cfg.lambda, scale, cfg.r, cfg.theta);
            const std::string name =
                "report_N" + std::to_string(scale) + "_seed" + std::to_string(seed) + ".json";
            auto rep_out = open_out((fs::path(cfg.out_dir) / name).string());
            write_report_json(rep_out, rep);
            csv << scale << ',' << seed << ',' << rep.pairs.size() << ',' << rep.walk_only.size()
                << ',' << rep.brownian_only.size() << ',' << (rep.bijection ? 1 : 0) << ",-,"
                << format_double(rep.max_duration_gap) << ',' << format_double(rep.duration_bound)
                << ',' << format_double(rep.max_sup_distance) << '\n';
            if (!rep.bijection) ++failures;
            max_gap = std::max(max_gap, rep.max_duration_gap);
            max_sup = std::max(max_sup, rep.max_sup_distance);
            bound = rep.duration_bound;
        }
        csv << scale << ",summary," << cfg.fields << ",-,-,-,"
            << format_double(static_cast<double>(failures) / cfg.fields) << ','
            << format_double(max_gap) << ',' << format_double(bound) << ','
            << format_double(max_sup) << '\n';
    }
    std::cout << "wrote coupling reports to " << cfg.out_dir << "\n";
    return kExitOk;
}

int run_verify(const loopsoup::VerifyConfig& cfg) {
    using namespace loopsoup;
    using namespace loopsoup::verify;
    std::vector<Table> tables;
    if (cfg.suite == "clt") {
        tables.push_back(clt_suite(20, cfg.m));
        tables.push_back(combinatorics_suite());
        tables.push_back(stirling_suite());
    } else if (cfg.suite == "bridge") {
        tables.push_back(bridge_suite(cfg.samples, cfg.seed));
        tables.push_back(duration_suite(cfg.samples, cfg.seed));
    } else if (cfg.suite == "quantile") {
        tables.push_back(quantile_suite(cfg.samples, cfg.seed));
        tables.push_back(coupling_marginal_suite(cfg.samples, cfg.seed));
        tables.push_back(sandwich_suite());
    } else if (cfg.suite == "soup-counts") {
        tables.push_back(soup_counts_suite(cfg.samples, cfg.seed));
    } else if (cfg.suite == "beurling") {
        tables.push_back(beurling_suite(cfg.samples, cfg.seed));
        tables.push_back(ruin_suite(cfg.samples, cfg.seed));
    } else if (cfg.suite == "layer") {
        tables.push_back(layer_suite(true, cfg.samples, cfg.seed));
        tables.push_back(layer_suite(false, cfg.samples, cfg.seed));
    } else {
        throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
    }
    bool pass = true;
    for (const auto& t : tables) {
        print_table(std::cout, t);
        pass = pass && t.pass;
    }
    if (!cfg.csv.empty()) {
        auto out = open_out(cfg.csv);
        for (const auto& t : tables) {
            out << "# " << t.name << '\n';
            write_csv(out, t);
        }
    }
    return pass ? kExitOk : kExitSuiteFailure;
}

int run_render(const loopsoup::RenderConfig& cfg) {
    using namespace loopsoup;
    const SoupFile file = read_soup_json(cfg.input);
    auto out = open_out(cfg.out);
    std::vector<const SoupRealization*> soups;
    if (file.is_pair) {
        soups.push_back(&file.walk);
        soups.push_back(&file.brownian);
    } else {
        soups.push_back(&file.single);
    }
    render_svg(out, soups);
    std::cout << "wrote " << cfg.out << "\n";
    return kExitOk;
}

std::uint64_t env_seed(std::uint64_t fallback) {
    if (const char* s = std::getenv("LOOPSOUP_SEED")) return std::strtoull(s, nullptr, 10);
    return fallback;
}

int env_threads(int fallback) {
    if (const char* s = std::getenv("LOOPSOUP_THREADS")) return std::atoi(s);
    return fallback;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random walk and Brownian loop soup simulator"};
    app.require_subcommand(1);

    loopsoup::SampleConfig sample;
    loopsoup::CoupleConfig couple;
    loopsoup::VerifyConfig verify;
    loopsoup::RenderConfig render;
    std::string window_text = "-8:8";

    auto* cmd_sample = app.add_subcommand("sample", "generate a soup realization as JSON");
    cmd_sample->add_option("--kind", sample.kind, "walk | brownian | both");
    cmd_sample->add_option("--lambda", sample.lambda, "intensity");
    cmd_sample->add_option("--scale", sample.scale, "scaling factor N");
    cmd_sample->add_option("--window", window_text, "root window lo:hi (both axes)");
    cmd_sample->add_option("--nmax", sample.n_max, "duration-index truncation");
    cmd_sample->add_option("--seed", sample.seed, "RNG seed");
    cmd_sample->add_flag("--small-loops", sample.include_small, "attach the uncoupled layer");
    cmd_sample->add_option("--tmin", sample.t_min, "small-loop duration floor");
    cmd_sample->add_option("--out", sample.out, "output path");

    auto* cmd_couple = app.add_subcommand("couple", "run coupling reports over seeded fields");
    cmd_couple->add_option("--lambda", couple.lambda, "intensity");
    cmd_couple->add_option("--scales", couple.scales, "scaling factors N")->delimiter(',');
    cmd_couple->add_option("--r", couple.r, "root radius");
    cmd_couple->add_option("--theta", couple.theta, "duration exponent, in (2/3, 2)");
    cmd_couple->add_option("--nmax", couple.n_max, "duration-index truncation");
    cmd_couple->add_option("--seed", couple.seed, "base seed");
    cmd_couple->add_option("--fields", couple.fields, "number of seeded fields");
    cmd_couple->add_option("--threads", couple.threads, "worker threads (0 = auto)");
    cmd_couple->add_option("--out-dir", couple.out_dir, "output directory");

    auto* cmd_verify = app.add_subcommand("verify", "run a statistical verification suite");
    cmd_verify->add_option("suite", verify.suite,
                           "clt | bridge | quantile | soup-counts | beurling | layer");
    cmd_verify->add_option("--samples", verify.samples, "Monte Carlo samples");
    cmd_verify->add_option("--m", verify.m, "largest m for the clt grid");
    cmd_verify->add_option("--seed", verify.seed, "RNG seed");
    cmd_verify->add_option("--fields", verify.fields, "fields for field-based suites");
    cmd_verify->add_option("--csv", verify.csv, "also write results as CSV");

    auto* cmd_render = app.add_subcommand("render", "render a soup JSON file as SVG");
    cmd_render->add_option("input", render.input, "soup JSON path");
    cmd_render->add_option("--out", render.out, "SVG output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_sample->parsed()) {
            if (!parse_window(window_text, sample.window_lo, sample.window_hi))
                throw std::invalid_argument("bad --window, expected lo:hi");
            sample.seed = env_seed(sample.seed);
            return run_sample(sample);
        }
        if (cmd_couple->parsed()) {
            couple.seed = env_seed(couple.seed);
            couple.threads = env_threads(couple.threads);
            return run_couple(couple);
        }
        if (cmd_verify->parsed()) {
            verify.seed = env_seed(verify.seed);
            return run_verify(verify);
        }
        if (cmd_render->parsed()) return run_render(render);
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitValidation;
}
