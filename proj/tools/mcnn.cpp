#include "mcnn/config.hpp"
#include "mcnn/error.hpp"
#include "mcnn/pipeline.hpp"
#include "mcnn/report.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <string>

namespace {

struct Flags {
    std::string config;
    std::string out;
    int depth = 6;
    int resolution = 512;
    int kmax = mcnn::kDefaultMarkovOrder;
    int i = 0;
    int j = 0;
};

CLI::App* add_command(CLI::App& app, const std::string& name, const std::string& help, Flags& f) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("--config", f.config, "template file (JSON)")->required();
    c->add_option("--out", f.out, "output file instead of stdout");
    c->add_option("--depth", f.depth, "render depth n (blocks of length 2n+1)")->check(CLI::Range(1, 64));
    c->add_option("--resolution", f.resolution, "raster side in pixels")->check(CLI::Range(1, 16384));
    c->add_option("--kmax", f.kmax, "largest Markov order tried")->check(CLI::Range(1, 16));
    return c;
}

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw mcnn::Error(mcnn::ErrorKind::Config, "cannot write " + out);
    os << text;
}

std::string dump(const mcnn::Json& j) { return j.dump(2) + "\n"; }

int render(const mcnn::Config& cfg, const Flags& f) {
    const auto spec = mcnn::render_spec(cfg, f.i, f.depth, f.resolution);
    const auto img = mcnn::render(spec);
    const std::string pgm = f.out.empty() ? cfg.name + "_layer" + std::to_string(f.i) + ".pgm" : f.out;
    const std::string rects = pgm + ".rects";
    {
        std::ofstream os(pgm, std::ios::binary);
        if (!os) throw mcnn::Error(mcnn::ErrorKind::Config, "cannot write " + pgm);
        mcnn::write_pgm(os, img.raster);
    }
    {
        std::ofstream os(rects);
        if (!os) throw mcnn::Error(mcnn::ErrorKind::Config, "cannot write " + rects);
        mcnn::write_rectangles(os, img.rects);
    }
    mcnn::Json j;
    j["layer"] = f.i;
    j["depth"] = f.depth;
    j["base"] = img.base;
    j["blocks"] = img.blocks;
    j["resolution"] = f.resolution;
    j["image"] = pgm;
    j["rectangles"] = rects;
    std::cout << dump(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic dynamics of multi-layer cellular neural networks"};
    app.require_subcommand(1);
    Flags f;

    auto* classify = add_command(app, "classify", "basic set and region signature", f);
    auto* build = add_command(app, "build", "transition matrices and covers", f);
    auto* entropy = add_command(app, "entropy", "spectral radii and entropies", f);
    auto* measure = add_command(app, "measure", "maximal measures and projection certificates", f);
    auto* dimension = add_command(app, "dimension", "Hausdorff dimensions", f);
    auto* factor = add_command(app, "factor", "factor relation between two layers", f);
    factor->add_option("i", f.i, "source layer")->required();
    factor->add_option("j", f.j, "target layer")->required();
    auto* markov = add_command(app, "markov-check", "Markov certificate for i -> j (i = 0: solution space)", f);
    markov->add_option("i", f.i, "source layer")->required();
    markov->add_option("j", f.j, "target layer")->required();
    auto* rend = add_command(app, "render", "fractal image of a layer (0: solution space)", f);
    rend->add_option("i", f.i, "layer")->required();
    auto* run = add_command(app, "run", "full report", f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        const mcnn::Config cfg = mcnn::load_config(f.config);
        if (classify->parsed()) emit(dump(mcnn::classify_fragment(cfg)), f.out);
        else if (build->parsed()) emit(dump(mcnn::build_fragment(cfg)), f.out);
        else if (entropy->parsed()) emit(dump(mcnn::entropy_fragment(cfg)), f.out);
        else if (measure->parsed()) emit(dump(mcnn::measure_fragment(cfg, f.kmax)), f.out);
        else if (dimension->parsed()) emit(dump(mcnn::dimension_fragment(cfg)), f.out);
        else if (factor->parsed()) emit(dump(mcnn::factor_fragment(cfg, f.i, f.j, f.kmax)), f.out);
        else if (markov->parsed()) emit(dump(mcnn::markov_fragment(cfg, f.i, f.j, f.kmax)), f.out);
        else if (rend->parsed()) return render(cfg, f);
        else if (run->parsed()) {
            mcnn::PipelineOptions opt;
            opt.k_max = f.kmax;
            emit(mcnn::serialize(mcnn::run_pipeline(cfg, opt)), f.out);
        }
    } catch (const mcnn::Error& e) {
        std::cerr << "mcnn: " << e.what() << "\n";
        return mcnn::exit_code(e.kind());
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "mcnn: malformed input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "mcnn: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
