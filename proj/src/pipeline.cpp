#include "mcnn/pipeline.hpp"

#include "mcnn/error.hpp"
#include "mcnn/factors.hpp"
#include "mcnn/shifts.hpp"
#include "mcnn/spectral.hpp"

#include <cmath>
#include <utility>

namespace mcnn {

namespace {

constexpr double kDimTol = 1e-9;

template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(e.kind(), name + ": " + e.message());
    }
}

std::vector<std::vector<int>> rows_of(const IMatrix& m) {
    std::vector<std::vector<int>> r(m.rows(), std::vector<int>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r[i][j] = m(i, j);
    return r;
}

std::vector<std::vector<double>> rows_of(const DMatrix& m) {
    std::vector<std::vector<double>> r(m.rows(), std::vector<double>(m.cols()));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) r[i][j] = round12(m(i, j));
    return r;
}

std::vector<double> vec_of(const DRowVec& v) {
    std::vector<double> r(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) r[i] = round12(v(i));
    return r;
}

MeasureData measure_data(const MarkovMeasure<double>& m) {
    return {vec_of(m.stationary), rows_of(m.kernel)};
}

SyncData sync_data(const SyncReport& s) {
    SyncData d;
    if (s.word) d.word = word_string(*s.word);
    d.all_length_k = s.all_length_k;
    d.max_len = s.max_len;
    d.degree_star = s.degree_star;
    d.magic_word = word_string(s.magic_word);
    d.magic_coordinate = s.magic_coordinate;
    d.degree_cap = s.degree_cap;
    d.degree_bounded = s.degree_bounded;
    return d;
}

double rho_of(double h) { return std::isfinite(h) ? std::exp(h) : 0.0; }

double dim_of(double h, int alphabet) {
    if (!std::isfinite(h)) return 0.0;
    return hausdorff_dimension(h, std::max(2, alphabet)).dimension;
}

UniformityData uniformity_data(const UniformityReport& u) {
    UniformityData d;
    d.uniform = u.uniform;
    d.rho_m = round12(u.rho_m);
    d.rho_source = round12(u.rho_source);
    d.rho_target = round12(u.rho_target);
    d.ratio_target_source = round12(u.ratio_target_source);
    d.ratio_source_target = round12(u.ratio_source_target);
    d.spectral_match = u.spectral_match;
    d.measure_entropy = round12(u.measure_entropy);
    d.target_entropy = round12(u.target_entropy);
    return d;
}

CertificateData certificate_data(int source, int target, const OneBlockMap& phi, const IMatrix& tx, double h_source,
                                 double h_target, int k_max) {
    CertificateData c;
    c.source = source;
    c.target = target;
    c.map = phi.image;
    const auto cert = check_markov_condition(build_block_family(phi, tx), k_max);
    if (!cert) return c;
    c.found = true;
    c.order = cert->order;
    c.canonical = cert->canonical;
    c.words = cert->words;
    for (const auto& r : cert->rays) c.rays.push_back(vec_of(r));
    c.kernel = rows_of(cert->kernel);
    c.rho = round12(cert->rho);
    try {
        c.measure = measure_data(measure_from_certificate(*cert));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotIrreducible) throw;
    }
    c.uniformity = uniformity_data(uniform_factor_test(*cert, rho_of(h_source), rho_of(h_target)));
    return c;
}

std::string letter_map_string(const OneBlockMap& m) {
    std::string s;
    for (int a = 0; a < 2; ++a) s += m.image[a] < 0 ? '?' : letter_char(m.image[a]);
    return s;
}

void check_layer(const Analysis& a, int layer) {
    if (layer < 1 || layer > static_cast<int>(a.covers.size()))
        throw Error(ErrorKind::Config, "layer " + std::to_string(layer) + " out of range 1.." +
                                           std::to_string(a.covers.size()));
}

}  // namespace

Analysis analyze(const Config& config) {
    Analysis a;
    a.config = config;
    const double eps = spectral_tolerance();
    a.layer_sets = stage("templates", [&] { return layer_basic_sets(config.network); });
    a.basic_set = stage("templates", [&] { return network_basic_set(config.network); });
    a.raw = stage("shifts", [&] { return build_transition_matrix(a.basic_set); });
    a.essential = essential_states(a.raw.entries);
    a.core = restrict_matrix(a.raw.entries, a.essential);
    a.space_entropy = stage("spectral", [&] { return topological_entropy(a.core, eps); });
    for (int l = 1; l <= config.network.size(); ++l) {
        a.covers.push_back(stage("shifts", [&] { return layer_cover(a.raw, l); }));
        a.entropy.push_back(stage("spectral", [&] { return topological_entropy(a.covers.back().incidence, eps); }));
    }
    return a;
}

std::vector<std::pair<int, int>> selected_pairs(const Analysis& a) {
    const int n = static_cast<int>(a.covers.size());
    if (!a.config.pairs.empty()) {
        for (const auto& [i, j] : a.config.pairs) {
            check_layer(a, i);
            check_layer(a, j);
        }
        return a.config.pairs;
    }
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i == j) continue;
            const double hi = a.entropy[i - 1], hj = a.entropy[j - 1];
            if (hi > hj + 1e-9 || entropies_equal(a.covers[i - 1].incidence, a.covers[j - 1].incidence))
                out.emplace_back(i, j);
        }
    return out;
}

SolutionData solution_data(const Analysis& a) {
    SolutionData s;
    s.basic_set = a.basic_set.strings();
    s.states = a.raw.state_labels;
    s.transition = rows_of(a.raw.entries);
    s.essential = a.essential;
    s.entropy = round12(a.space_entropy);
    s.rho = round12(rho_of(a.space_entropy));
    return s;
}

LayerData layer_data(const Analysis& a, int layer) {
    check_layer(a, layer);
    const Presentation& w = a.covers[layer - 1];
    const double h = a.entropy[layer - 1];
    LayerData d;
    d.layer = layer;
    d.basic_set = a.layer_sets[layer - 1].strings();
    d.cover_states = w.state_labels;
    for (int l : w.state_letter) d.cover_letters += l < 0 ? '?' : letter_char(l);
    d.incidence = rows_of(w.incidence);
    d.symbolic = w.symbolic().strings();
    const auto flags = structure_flags(w.incidence);
    d.irreducible = flags.irreducible;
    d.mixing = flags.mixing;
    d.period = flags.period;
    d.entropy = round12(h);
    d.rho = round12(rho_of(h));
    if (flags.irreducible)
        d.measure = stage("spectral", [&] { return measure_data(maximal_measure(w.incidence, spectral_tolerance())); });
    d.cover_alphabet = w.size();
    d.dim_cover = round12(dim_of(h, w.size()));
    d.dim_space = round12(dim_of(h, 2));
    d.sync = sync_data(stage("factors", [&] { return synchronizing_analysis(w); }));
    return d;
}

CertificateData projection_data(const Analysis& a, int layer, int k_max) {
    check_layer(a, layer);
    OneBlockMap psi;
    psi.target_size = 2;
    for (int s = 0; s < a.raw.size(); ++s) psi.image.push_back(a.raw.letter(s, layer));
    return stage("measures", [&] {
        return certificate_data(0, layer, psi, a.raw.entries, a.space_entropy, a.entropy[layer - 1], k_max);
    });
}

PairData pair_data(const Analysis& a, int i, int j, int k_max) {
    check_layer(a, i);
    check_layer(a, j);
    const Presentation& ci = a.covers[i - 1];
    const Presentation& cj = a.covers[j - 1];
    const auto dec = stage("factors " + std::to_string(i) + " " + std::to_string(j),
                           [&] { return classify_relation(ci, cj, i, j, &a.core); });
    PairData p;
    p.source = i;
    p.target = j;
    p.relation = relation_name(dec.relation);
    p.evidence = dec.evidence;
    p.h_source = round12(dec.h_source);
    p.h_target = round12(dec.h_target);
    p.equal_entropy = dec.equal_entropy;
    if (dec.symbolic) p.symbolic_e = rows_of(dec.symbolic->entries);
    if (dec.incidence) p.incidence_e = rows_of(dec.incidence->entries);
    const auto& e = dec.symbolic ? dec.symbolic : dec.incidence;
    if (e) {
        p.state_map = e->state_map();
        try {
            p.letter_map = letter_map_string(induced_label_map(*e, ci, cj));
        } catch (const Error& err) {
            if (err.kind() != ErrorKind::IncompatibleLabels) throw;
        }
    }
    p.n_max = dec.n_max;
    for (const auto& t : dec.source_periodic) p.source_traces.push_back(t.str());
    for (const auto& t : dec.target_periodic) p.target_traces.push_back(t.str());
    p.factor_periodic = dec.factor_periodic;
    p.embedding = dec.embedding;
    p.intertwiner_condition = dec.intertwiner_condition;
    p.entropy_gap_condition = dec.entropy_gap_condition;
    p.source_sync = sync_data(dec.source_sync);
    p.target_sync = sync_data(dec.target_sync);
    if (e) {
        const OneBlockMap phi = induced_state_map(*e);
        p.certificate = stage("measures", [&] {
            return certificate_data(i, j, phi, ci.incidence, a.entropy[i - 1], a.entropy[j - 1], k_max);
        });
    }

    // dimension of the target space predicted from the source side
    const double hi = a.entropy[i - 1], hj = a.entropy[j - 1];
    if (dec.equal_entropy) {
        p.dimension.kind = "equal-entropy";
        p.dimension.predicted = round12(dim_of(hi, 2));
        p.dimension.actual = round12(dim_of(hj, 2));
        p.dimension.holds = std::abs(*p.dimension.predicted - *p.dimension.actual) <= kDimTol;
    } else if (p.certificate && p.certificate->uniformity && p.certificate->uniformity->uniform) {
        p.dimension.kind = "uniform-factor";
        p.dimension.predicted = round12(dim_of(p.certificate->uniformity->measure_entropy, cj.size()));
        p.dimension.actual = round12(dim_of(hj, cj.size()));
        p.dimension.holds = std::abs(*p.dimension.predicted - *p.dimension.actual) <= kDimTol;
    }
    return p;
}

Provenance provenance_of(const Config& config, int k_max) {
    Provenance p;
    p.boundary = config.network.boundary == BoundaryPolicy::Include ? "include" : "reject";
    p.spectral_tolerance = spectral_tolerance();
    p.boundary_tolerance = kBoundaryTol;
    p.markov_tolerance = kMarkovTol;
    p.markov_order = k_max;
    p.layers = config.network.layers;
    return p;
}

AnalysisReport run_pipeline(const Config& config, const PipelineOptions& opt) {
    if (opt.k_max < 1) throw Error(ErrorKind::Config, "kmax must be at least 1");
    const Analysis a = analyze(config);
    AnalysisReport r;
    r.name = config.name;
    r.provenance = provenance_of(config, opt.k_max);
    r.solution = solution_data(a);
    for (int l = 1; l <= config.network.size(); ++l) {
        r.layers.push_back(layer_data(a, l));
        r.projections.push_back(projection_data(a, l, opt.k_max));
    }
    if (opt.pairs)
        for (const auto& [i, j] : selected_pairs(a)) r.pairs.push_back(pair_data(a, i, j, opt.k_max));
    return r;
}

Json classify_fragment(const Config& config) {
    const auto sig = stage("templates", [&] { return classify_region(config.network); });
    const Analysis a = analyze(config);
    const PatternWindow w = pattern_window(config.network);
    Json j;
    j["name"] = config.name;
    j["window"] = {w.lo, w.hi};
    j["basic_set"] = a.basic_set.strings();
    j["layers"] = Json::array();
    for (int l = 1; l <= config.network.size(); ++l) {
        const auto& s = sig.layers[l - 1];
        Json layer;
        layer["layer"] = l;
        layer["basic_set"] = a.layer_sets[l - 1].strings();
        layer["parameters"] = compared_parameter_names(config.network.layers[l - 1], l > 1, w);
        layer["signs"] = s.signs;
        layer["order"] = s.order;
        layer["dominant"] = s.dominant;
        std::string adm;
        for (bool b : s.admissible) adm += b ? '1' : '0';
        layer["admissible"] = adm;
        j["layers"].push_back(layer);
    }
    return j;
}

Json build_fragment(const Config& config) {
    const Analysis a = analyze(config);
    Json j;
    j["name"] = config.name;
    j["solution_space"] = to_json(solution_data(a));
    j["layers"] = Json::array();
    for (int l = 1; l <= config.network.size(); ++l) {
        const Presentation& w = a.covers[l - 1];
        Json layer;
        layer["layer"] = l;
        layer["states"] = w.state_labels;
        std::string letters;
        for (int x : w.state_letter) letters += x < 0 ? '?' : letter_char(x);
        layer["letters"] = letters;
        layer["incidence"] = rows_of(w.incidence);
        layer["symbolic"] = w.symbolic().strings();
        j["layers"].push_back(layer);
    }
    return j;
}

Json entropy_fragment(const Config& config) {
    const Analysis a = analyze(config);
    Json j;
    j["name"] = config.name;
    j["solution_space"] = {{"rho", round12(rho_of(a.space_entropy))}, {"entropy", round12(a.space_entropy)}};
    j["layers"] = Json::array();
    for (int l = 1; l <= config.network.size(); ++l) {
        const double h = a.entropy[l - 1];
        Json layer;
        layer["layer"] = l;
        layer["rho"] = round12(rho_of(h));
        layer["entropy"] = round12(h);
        j["layers"].push_back(layer);
    }
    return j;
}

Json measure_fragment(const Config& config, int k_max) {
    const Analysis a = analyze(config);
    Json j;
    j["name"] = config.name;
    j["layers"] = Json::array();
    j["projections"] = Json::array();
    for (int l = 1; l <= config.network.size(); ++l) {
        const LayerData d = layer_data(a, l);
        Json layer;
        layer["layer"] = l;
        layer["maximal_measure"] = d.measure ? to_json(*d.measure) : Json(nullptr);
        j["layers"].push_back(layer);
        j["projections"].push_back(to_json(projection_data(a, l, k_max)));
    }
    return j;
}

Json dimension_fragment(const Config& config) {
    const Analysis a = analyze(config);
    Json j;
    j["name"] = config.name;
    j["layers"] = Json::array();
    for (int l = 1; l <= config.network.size(); ++l) {
        const double h = a.entropy[l - 1];
        Json layer;
        layer["layer"] = l;
        layer["entropy"] = round12(h);
        layer["cover_alphabet"] = a.covers[l - 1].size();
        layer["cover"] = round12(dim_of(h, a.covers[l - 1].size()));
        layer["space"] = round12(dim_of(h, 2));
        j["layers"].push_back(layer);
    }
    return j;
}

Json factor_fragment(const Config& config, int i, int j, int k_max) {
    return to_json(pair_data(analyze(config), i, j, k_max));
}

Json markov_fragment(const Config& config, int i, int j, int k_max) {
    const Analysis a = analyze(config);
    if (i == 0) return to_json(projection_data(a, j, k_max));
    const PairData p = pair_data(a, i, j, k_max);
    if (p.certificate) return to_json(*p.certificate);
    CertificateData none;
    none.source = i;
    none.target = j;
    return to_json(none);
}

FractalSpec render_spec(const Config& config, int layer, int depth, int resolution) {
    const Analysis a = analyze(config);
    FractalSpec s;
    s.depth = depth;
    s.resolution = resolution;
    if (layer == 0) {
        s.mode = FractalMode::States;
        std::vector<int> letters(a.core.rows(), 0);
        s.presentation = vertex_presentation(a.core, letters);
    } else {
        check_layer(a, layer);
        s.presentation = a.covers[layer - 1];
    }
    return s;
}

}  // namespace mcnn
