#include "mcnn/config.hpp"
#include "mcnn/error.hpp"
#include "mcnn/pipeline.hpp"
#include "mcnn/report.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace mcnn;

namespace {

const double g = (1 + std::sqrt(5.0)) / 2;

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

AnalysisReport report(const std::string& name) {
    unsetenv("MCNN_TOLERANCE");
    return run_pipeline(load_config(oracle::fixture(name + ".json")));
}

const PairData* find_pair(const AnalysisReport& r, int i, int j) {
    for (const auto& p : r.pairs)
        if (p.source == i && p.target == j) return &p;
    return nullptr;
}

int cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + " " + MCNN_CLI_PATH + " " + args + " >/tmp/mcnn_cli_out.txt 2>/tmp/mcnn_cli_err.txt";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

const char* kFixtures[] = {"ex4_1", "ex4_2", "ex4_3", "ex4_4"};

}  // namespace

TEST_CASE("round12 keeps twelve significant digits") {
    CHECK(round12(1.0 / 3) == 0.333333333333);
    CHECK(round12(g) == 1.61803398875);
    CHECK(round12(-0.0) == 0.0);
    CHECK_FALSE(std::signbit(round12(-1e-300 * 1e-300)));
    CHECK(round12(round12(std::log(g))) == round12(std::log(g)));
}

TEST_CASE("reports match the golden files byte for byte") {
    for (const char* f : kFixtures) {
        CAPTURE(f);
        const std::string golden = slurp(std::string(MCNN_GOLDEN_DIR) + "/" + f + ".json");
        REQUIRE_FALSE(golden.empty());
        CHECK(serialize(report(f)) == golden);
    }
}

TEST_CASE("serialization round-trips") {
    for (const char* f : kFixtures) {
        CAPTURE(f);
        const auto r = report(f);
        const std::string text = serialize(r);
        const auto back = parse_report(text);
        CHECK(back == r);
        CHECK(serialize(back) == text);
    }
    CHECK_THROWS_AS(parse_report("{"), Error);
    CHECK_THROWS_AS(parse_report("{\"name\": 1}"), Error);
}

TEST_CASE("two-layer golden-mean network") {
    const auto r = report("ex4_1");
    REQUIRE(r.layers.size() == 2);
    CHECK(r.provenance.boundary == "include");
    CHECK(r.solution.basic_set.size() == 6);
    for (const auto& l : r.layers) {
        CHECK(std::abs(l.entropy - std::log(g)) < 1e-9);
        CHECK(std::abs(l.dim_space - 2 * std::log(g) / std::log(2.0)) < 1e-9);
    }
    CHECK(r.layers[0].cover_alphabet == 2);
    CHECK(r.layers[1].cover_alphabet == 3);
    CHECK(std::abs(r.layers[1].dim_cover - 2 * std::log(g) / std::log(3.0)) < 1e-9);

    const auto* p = find_pair(r, 2, 1);
    REQUIRE(p);
    CHECK(p->relation == "FSE-finite-to-one");
    CHECK(p->evidence == "symbolic-intertwiner");
    REQUIRE(p->symbolic_e);
    CHECK(*p->symbolic_e == std::vector<std::vector<int>>{{1, 0}, {0, 1}, {0, 1}});
    CHECK(p->dimension.kind == "equal-entropy");
    CHECK(p->dimension.holds);
    REQUIRE(p->certificate);
    CHECK(p->certificate->found);

    const auto& c = r.projections[0];
    CHECK(c.found);
    CHECK(c.order == 1);
    CHECK(std::abs(c.kernel[0][1] - 1 / g) < 1e-9);
    CHECK(std::abs(c.kernel[1][0] - g) < 1e-9);
    REQUIRE(c.measure);
    CHECK(std::abs(c.measure->kernel[1][0] - (2 - g)) < 1e-9);
    CHECK(std::abs(c.measure->kernel[1][1] - (g - 1)) < 1e-9);
    REQUIRE(c.uniformity);
    CHECK(c.uniformity->uniform);
}

TEST_CASE("tribonacci over golden mean") {
    const auto r = report("ex4_4");
    REQUIRE(r.layers.size() == 2);
    const double want[2][2] = {{1.1094, 1.7582}, {0.8760, 1.3884}};
    for (int l = 0; l < 2; ++l) {
        CHECK(std::abs(r.layers[l].dim_cover - want[l][0]) < 1e-3);
        CHECK(std::abs(r.layers[l].dim_space - want[l][1]) < 1e-3);
        CHECK(r.layers[l].sync.all_length_k == 2);
    }
    CHECK(std::abs(r.layers[1].entropy - std::log(g)) < 1e-9);
    const double rho = r.layers[0].rho;
    CHECK(std::abs(rho * rho * rho - rho * rho - rho - 1) < 1e-9);
    // only the higher-entropy layer is a source by default
    REQUIRE(r.pairs.size() == 1);
    CHECK(r.pairs[0].source == 1);
    CHECK(r.pairs[0].relation == "infinite-to-one-exists");
    CHECK(r.pairs[0].evidence == "factor-periodic");
    CHECK(r.pairs[0].dimension.kind == "none");
}

TEST_CASE("pair selection") {
    unsetenv("MCNN_TOLERANCE");
    auto cfg = load_config(oracle::fixture("ex4_1.json"));
    {
        const auto a = analyze(cfg);
        CHECK(selected_pairs(a) == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
    }
    cfg.pairs = {{2, 1}};
    CHECK(run_pipeline(cfg).pairs.size() == 1);
    cfg.pairs = {{1, 3}};
    try {
        run_pipeline(cfg);
        FAIL("expected a layer range error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
    }
    PipelineOptions opt;
    opt.pairs = false;
    cfg.pairs.clear();
    CHECK(run_pipeline(cfg, opt).pairs.empty());
    opt.k_max = 0;
    CHECK_THROWS_AS(run_pipeline(cfg, opt), Error);
}

TEST_CASE("errors carry the stage") {
    unsetenv("MCNN_TOLERANCE");
    try {
        run_pipeline(load_config(oracle::fixture("boundary.json")));
        FAIL("expected BoundaryParameter");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BoundaryParameter);
        CHECK(e.message().rfind("templates: ", 0) == 0);
        CHECK(exit_code(e.kind()) == 3);
    }
    try {
        classify_fragment(load_config(oracle::fixture("zero.json")));
        FAIL("expected DegenerateTemplate");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::DegenerateTemplate);
    }
}

TEST_CASE("fragments") {
    unsetenv("MCNN_TOLERANCE");
    const auto cfg = load_config(oracle::fixture("ex4_2.json"));
    const auto e = entropy_fragment(cfg);
    CHECK(std::abs(e["layers"][0]["rho"].get<double>() - 1.324718) < 1e-6);
    CHECK(std::abs(e["layers"][0]["entropy"].get<double>() - 0.281199) < 1e-6);
    const auto d = dimension_fragment(cfg);
    CHECK(d["layers"][1]["cover_alphabet"] == 4);
    const auto m = markov_fragment(cfg, 0, 1, 4);
    CHECK(m["found"] == true);
    const auto f = factor_fragment(cfg, 2, 1, 4);
    CHECK(f["relation"] == "FSE-finite-to-one");
    CHECK(f["evidence"] == "incidence-intertwiner");
    const auto c = classify_fragment(cfg);
    CHECK(c["layers"].size() == 2);
    const auto b = build_fragment(cfg);
    CHECK(b["layers"][0]["incidence"].size() == 3);
}

TEST_CASE("command line exit codes") {
    const std::string fx = std::string(MCNN_FIXTURE_DIR) + "/";
    CHECK(cli("entropy --config " + fx + "ex4_2.json") == 0);
    const std::string out = slurp("/tmp/mcnn_cli_out.txt");
    CHECK(out.find("1.32471795724") != std::string::npos);
    CHECK(out.find("0.281199574323") != std::string::npos);

    CHECK(cli("classify --config " + fx + "zero.json") == 3);
    CHECK(slurp("/tmp/mcnn_cli_err.txt").find("DegenerateTemplate") != std::string::npos);
    CHECK(cli("run --config " + fx + "boundary.json") == 3);
    CHECK(cli("") == 2);
    CHECK(cli("entropy") == 2);
    CHECK(cli("factor 1 --config " + fx + "ex4_1.json") == 2);
    CHECK(cli("entropy --config /nonexistent.json") == 2);
    CHECK(cli("entropy --config " + fx + "ex4_2.json", "MCNN_TOLERANCE=abc") == 2);
    CHECK(cli("entropy --config " + fx + "ex4_2.json", "MCNN_TOLERANCE=1e-10") == 0);
    CHECK(cli("render 1 --depth 30 --config " + fx + "ex4_1.json --out /tmp/mcnn_deep.pgm") == 4);
}

TEST_CASE("command line render") {
    const std::string fx = std::string(MCNN_FIXTURE_DIR) + "/";
    REQUIRE(cli("render 1 --depth 9 --resolution 256 --config " + fx + "ex4_1.json --out /tmp/mcnn_ex41.pgm") == 0);
    const std::string pgm = slurp("/tmp/mcnn_ex41.pgm");
    CHECK(pgm.rfind("P5\n# base 2 depth 9", 0) == 0);
    CHECK(pgm.size() > 256u * 256u);
    std::ifstream rects("/tmp/mcnn_ex41.pgm.rects");
    int lines = 0;
    for (std::string s; std::getline(rects, s);) ++lines;
    CHECK(lines == 10946);

    REQUIRE(cli("run --config " + fx + "ex4_4.json --out /tmp/mcnn_ex44.json") == 0);
    CHECK(slurp("/tmp/mcnn_ex44.json") == slurp(std::string(MCNN_GOLDEN_DIR) + "/ex4_4.json"));
}
