#pragma once

#include "mcnn/config.hpp"
#include "mcnn/fractal.hpp"
#include "mcnn/measures.hpp"
#include "mcnn/report.hpp"

#include <string>
#include <utility>
#include <vector>

namespace mcnn {

struct PipelineOptions {
    int k_max = kDefaultMarkovOrder;
    bool pairs = true;
};

// everything the report needs, built once per config
struct Analysis {
    Config config;
    BasicSet basic_set;
    std::vector<BasicSet> layer_sets;
    TransitionMatrix raw;                 // all 2^n states, untrimmed
    std::vector<int> essential;
    IMatrix core;                         // essential part of raw
    std::vector<Presentation> covers;     // W(l) at index l-1
    std::vector<double> entropy;          // h(Y(l)) at index l-1
    double space_entropy = 0.0;
};

// runs stage `what`, prefixing any library error with the stage name
Analysis analyze(const Config& config);

// ordered pairs (i, j), 1-based: config list, else h_i > h_j or equal entropies
std::vector<std::pair<int, int>> selected_pairs(const Analysis& a);

SolutionData solution_data(const Analysis& a);
LayerData layer_data(const Analysis& a, int layer);
// Markov certificate of the solution space onto the letters of `layer`
CertificateData projection_data(const Analysis& a, int layer, int k_max);
PairData pair_data(const Analysis& a, int i, int j, int k_max);
Provenance provenance_of(const Config& config, int k_max);

AnalysisReport run_pipeline(const Config& config, const PipelineOptions& opt = {});

// subcommand fragments
Json classify_fragment(const Config& config);
Json build_fragment(const Config& config);
Json entropy_fragment(const Config& config);
Json measure_fragment(const Config& config, int k_max);
Json dimension_fragment(const Config& config);
Json factor_fragment(const Config& config, int i, int j, int k_max);
Json markov_fragment(const Config& config, int i, int j, int k_max);

// letters of the cover of `layer`; layer 0 renders the solution space by states
FractalSpec render_spec(const Config& config, int layer, int depth, int resolution);

}  // namespace mcnn
