#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "loopsoup/config.hpp"
#include "loopsoup/json_io.hpp"
#include "loopsoup/soup.hpp"
#include "loopsoup/svg.hpp"

using namespace loopsoup;

namespace {

SoupRealization make_soup() {
    const Window w{-2, 2, -2, 2};
    const PoissonField field(w, 16, 4.0, 99);
    return rw_soup(field, 4.0, 2);
}

std::string temp_path(const char* name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("soup json round trip") {
    const SoupRealization soup = make_soup();
    const std::string path = temp_path("loopsoup_test_soup.json");
    {
        std::ofstream out(path, std::ios::binary);
        write_soup_json(out, soup);
    }
    const SoupFile file = read_soup_json(path);
    REQUIRE_FALSE(file.is_pair);
    const SoupRealization& back = file.single;
    CHECK(back.kind == soup.kind);
    CHECK(back.lambda == soup.lambda);
    CHECK(back.scale == soup.scale);
    CHECK(back.window == soup.window);
    CHECK(back.seed == soup.seed);
    REQUIRE(back.loops.size() == soup.loops.size());
    for (std::size_t i = 0; i < soup.loops.size(); ++i) {
        CHECK(back.loops[i].n == soup.loops[i].n);
        CHECK(back.loops[i].z == soup.loops[i].z);
        CHECK(back.loops[i].m == soup.loops[i].m);
        CHECK(back.loops[i].loop.duration == soup.loops[i].loop.duration);  // exact round trip
        REQUIRE(back.loops[i].loop.points.size() == soup.loops[i].loop.points.size());
        for (std::size_t j = 0; j < soup.loops[i].loop.points.size(); ++j) {
            CHECK(back.loops[i].loop.points[j] == soup.loops[i].loop.points[j]);
            CHECK(back.loops[i].loop.times[j] == soup.loops[i].loop.times[j]);
        }
    }
    std::remove(path.c_str());
}

TEST_CASE("pair json round trip") {
    const Window w{-1, 1, -1, 1};
    const PoissonField field(w, 8, 2.0, 5);
    const std::string path = temp_path("loopsoup_test_pair.json");
    {
        std::ofstream out(path, std::ios::binary);
        write_soup_pair_json(out, rw_soup(field, 2.0, 1), brownian_soup(field, 2.0, 1));
    }
    const SoupFile file = read_soup_json(path);
    CHECK(file.is_pair);
    CHECK(file.walk.kind == SoupKind::walk);
    CHECK(file.brownian.kind == SoupKind::brownian);
    std::remove(path.c_str());
}

TEST_CASE("json parse errors carry location context") {
    const std::string path = temp_path("loopsoup_test_bad.json");
    {
        std::ofstream out(path, std::ios::binary);
        out << "{\"schema_version\":1,\"kind\":\"walk\",";
    }
    CHECK_THROWS_WITH_AS(read_soup_json(path), doctest::Contains("parse error"),
                         std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("report json is well formed") {
    const Window w{-4, 4, -4, 4};
    const PoissonField field(w, 64, 1.0, 3);
    const auto rep = build_coupling_report(field, 1.0, 4, 1.0, 1.0);
    std::ostringstream os;
    write_report_json(os, rep);
    const std::string text = os.str();
    CHECK(text.find("\"kind\":\"coupling_report\"") != std::string::npos);
    CHECK(text.find("\"duration_bound\":") != std::string::npos);
}

TEST_CASE("svg rendering") {
    SUBCASE("empty soup still yields axes") {
        SoupRealization empty;
        std::ostringstream os;
        render_svg(os, {&empty});
        const std::string svg = os.str();
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("<line") != std::string::npos);
        CHECK(svg.find("polyline") == std::string::npos);
    }
    SUBCASE("deterministic output with loops") {
        const SoupRealization soup = make_soup();
        std::ostringstream a, b;
        render_svg(a, {&soup});
        render_svg(b, {&soup});
        CHECK(a.str() == b.str());
        CHECK(a.str().find("polyline") != std::string::npos);
    }
    SUBCASE("matched indices share a stroke color across soups") {
        ContinuousLoop walk_loop;
        walk_loop.duration = 1.0;
        walk_loop.times = {0.0, 0.5, 1.0};
        walk_loop.points = {{0, 0}, {1, 0}, {0, 0}};
        ContinuousLoop brownian_loop = walk_loop;
        for (auto& p : brownian_loop.points) p += Complex(0.1, 0.1);
        SoupRealization walk, brownian;
        walk.kind = SoupKind::walk;
        brownian.kind = SoupKind::brownian;
        walk.loops.push_back({5, {2, -1}, 1, true, walk_loop});
        brownian.loops.push_back({5, {2, -1}, 1, true, brownian_loop});
        std::ostringstream os;
        render_svg(os, {&walk, &brownian});
        const std::string svg = os.str();
        auto stroke_after = [&svg](std::size_t from) {
            const auto poly = svg.find("<polyline", from);
            REQUIRE(poly != std::string::npos);
            const auto stroke = svg.find("stroke=\"", poly);
            return std::pair{svg.substr(stroke + 8, 7), poly + 1};
        };
        const auto [color1, next] = stroke_after(0);
        const auto [color2, end] = stroke_after(next);
        (void)end;
        CHECK(color1 == color2);
        CHECK(color1[0] == '#');
    }
    SUBCASE("uncoupled loops render dashed") {
        SoupRealization soup;
        ContinuousLoop loop;
        loop.duration = 1.0;
        loop.times = {0.0, 0.5, 1.0};
        loop.points = {{0, 0}, {0.5, 0.5}, {0, 0}};
        soup.loops.push_back({0, {0, 0}, 1, false, loop});
        std::ostringstream os;
        render_svg(os, {&soup});
        CHECK(os.str().find("stroke-dasharray") != std::string::npos);
    }
}

TEST_CASE("config round trip") {
    SampleConfig s;
    s.kind = "walk";
    s.lambda = 0.75;
    s.scale = 16;
    s.window_lo = -8;
    s.window_hi = 8;
    s.n_max = 256;
    s.seed = 7;
    s.out = "x.json";
    CHECK(parse_sample_config(print_config(s)) == s);

    CoupleConfig c;
    c.scales = {8, 16, 32, 64};
    c.theta = 1.25;
    c.fields = 100;
    CHECK(parse_couple_config(print_config(c)) == c);

    VerifyConfig v;
    v.suite = "soup-counts";
    v.samples = 12345;
    CHECK(parse_verify_config(print_config(v)) == v);

    RenderConfig r;
    r.input = "a.json";
    r.out = "b.svg";
    CHECK(parse_render_config(print_config(r)) == r);
}

TEST_CASE("format_double round trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 6.02e23, -7.25e-12, 0.0}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
}
