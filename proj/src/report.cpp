#include "mcnn/report.hpp"

#include "mcnn/config.hpp"
#include "mcnn/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace mcnn {

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;  // no negative zero
}

std::vector<double> round12(const std::vector<double>& v) {
    std::vector<double> r;
    r.reserve(v.size());
    for (double x : v) r.push_back(round12(x));
    return r;
}

namespace {

template <class T>
Json opt(const std::optional<T>& v) {
    if (!v) return nullptr;
    return Json(*v);
}

template <class T>
Json opt_obj(const std::optional<T>& v) {
    if (!v) return nullptr;
    return to_json(*v);
}

template <class T>
std::optional<T> get_opt(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<T>();
}

template <class T>
T get(const Json& j, const char* key) {
    return j.at(key).get<T>();
}

MeasureData measure_from(const Json& j) {
    return {get<std::vector<double>>(j, "stationary"), get<std::vector<std::vector<double>>>(j, "kernel")};
}

std::optional<MeasureData> opt_measure(const Json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return measure_from(j.at(key));
}

SyncData sync_from(const Json& j) {
    SyncData s;
    s.word = get_opt<std::string>(j, "word");
    s.all_length_k = get_opt<int>(j, "all_length_k");
    s.max_len = get<int>(j, "max_len");
    s.degree_star = get<int>(j, "degree_star");
    s.magic_word = get<std::string>(j, "magic_word");
    s.magic_coordinate = get<int>(j, "magic_coordinate");
    s.degree_cap = get<int>(j, "degree_cap");
    s.degree_bounded = get<bool>(j, "degree_bounded");
    return s;
}

SolutionData solution_from(const Json& j) {
    SolutionData s;
    s.basic_set = get<std::vector<std::string>>(j, "basic_set");
    s.states = get<std::vector<std::string>>(j, "states");
    s.transition = get<std::vector<std::vector<int>>>(j, "transition");
    s.essential = get<std::vector<int>>(j, "essential");
    s.rho = get<double>(j, "rho");
    s.entropy = get<double>(j, "entropy");
    return s;
}

LayerData layer_from(const Json& j) {
    LayerData l;
    l.layer = get<int>(j, "layer");
    l.basic_set = get<std::vector<std::string>>(j, "basic_set");
    const auto& c = j.at("cover");
    l.cover_states = get<std::vector<std::string>>(c, "states");
    l.cover_letters = get<std::string>(c, "letters");
    l.incidence = get<std::vector<std::vector<int>>>(c, "incidence");
    l.symbolic = get<std::vector<std::vector<std::string>>>(c, "symbolic");
    l.irreducible = get<bool>(c, "irreducible");
    l.mixing = get<bool>(c, "mixing");
    l.period = get<int>(c, "period");
    l.rho = get<double>(j, "rho");
    l.entropy = get<double>(j, "entropy");
    l.measure = opt_measure(j, "maximal_measure");
    const auto& d = j.at("dimension");
    l.cover_alphabet = get<int>(d, "cover_alphabet");
    l.dim_cover = get<double>(d, "cover");
    l.dim_space = get<double>(d, "space");
    l.sync = sync_from(j.at("sync"));
    return l;
}

UniformityData uniformity_from(const Json& j) {
    UniformityData u;
    u.uniform = get<bool>(j, "uniform");
    u.rho_m = get<double>(j, "rho_m");
    u.rho_source = get<double>(j, "rho_source");
    u.rho_target = get<double>(j, "rho_target");
    u.ratio_target_source = get<double>(j, "ratio_target_source");
    u.ratio_source_target = get<double>(j, "ratio_source_target");
    u.spectral_match = get<bool>(j, "spectral_match");
    u.measure_entropy = get<double>(j, "measure_entropy");
    u.target_entropy = get<double>(j, "target_entropy");
    return u;
}

CertificateData certificate_from(const Json& j) {
    CertificateData c;
    c.source = get<int>(j, "source");
    c.target = get<int>(j, "target");
    c.map = get<std::vector<int>>(j, "map");
    c.found = get<bool>(j, "found");
    c.order = get<int>(j, "order");
    c.canonical = get<bool>(j, "canonical");
    c.words = get<std::vector<std::vector<int>>>(j, "words");
    c.rays = get<std::vector<std::vector<double>>>(j, "rays");
    c.kernel = get<std::vector<std::vector<double>>>(j, "kernel");
    c.rho = get<double>(j, "rho");
    c.measure = opt_measure(j, "measure");
    if (!j.at("uniformity").is_null()) c.uniformity = uniformity_from(j.at("uniformity"));
    return c;
}

DimensionRelation dimension_from(const Json& j) {
    DimensionRelation d;
    d.kind = get<std::string>(j, "kind");
    d.predicted = get_opt<double>(j, "predicted");
    d.actual = get_opt<double>(j, "actual");
    d.holds = get<bool>(j, "holds");
    return d;
}

PairData pair_from(const Json& j) {
    PairData p;
    p.source = get<int>(j, "source");
    p.target = get<int>(j, "target");
    p.relation = get<std::string>(j, "relation");
    p.evidence = get<std::string>(j, "evidence");
    p.h_source = get<double>(j, "h_source");
    p.h_target = get<double>(j, "h_target");
    p.equal_entropy = get<bool>(j, "equal_entropy");
    p.symbolic_e = get_opt<std::vector<std::vector<int>>>(j, "symbolic_E");
    p.incidence_e = get_opt<std::vector<std::vector<int>>>(j, "incidence_E");
    p.state_map = get_opt<std::vector<int>>(j, "state_map");
    p.letter_map = get_opt<std::string>(j, "letter_map");
    const auto& per = j.at("periodic");
    p.n_max = get<int>(per, "n_max");
    p.source_traces = get<std::vector<std::string>>(per, "source_traces");
    p.target_traces = get<std::vector<std::string>>(per, "target_traces");
    p.factor_periodic = get<bool>(per, "factor_periodic");
    p.embedding = get<bool>(per, "embedding");
    p.intertwiner_condition = get_opt<bool>(j, "intertwiner_condition");
    p.entropy_gap_condition = get_opt<bool>(j, "entropy_gap_condition");
    p.source_sync = sync_from(j.at("source_sync"));
    p.target_sync = sync_from(j.at("target_sync"));
    if (!j.at("certificate").is_null()) p.certificate = certificate_from(j.at("certificate"));
    p.dimension = dimension_from(j.at("dimension"));
    return p;
}

Provenance provenance_from(const Json& j) {
    Provenance p;
    p.tool = get<std::string>(j, "tool");
    p.version = get<std::string>(j, "version");
    p.boundary = get<std::string>(j, "boundary");
    const auto& t = j.at("tolerances");
    p.spectral_tolerance = get<double>(t, "spectral");
    p.boundary_tolerance = get<double>(t, "boundary");
    p.markov_tolerance = get<double>(t, "markov");
    p.markov_order = get<int>(j, "markov_order");
    for (const auto& l : j.at("layers")) p.layers.push_back(parse_layer(nlohmann::json::parse(l.dump())));
    return p;
}

}  // namespace

Json to_json(const MeasureData& m) {
    Json j;
    j["stationary"] = m.stationary;
    j["kernel"] = m.kernel;
    return j;
}

Json to_json(const SyncData& s) {
    Json j;
    j["word"] = opt(s.word);
    j["all_length_k"] = opt(s.all_length_k);
    j["max_len"] = s.max_len;
    j["degree_star"] = s.degree_star;
    j["magic_word"] = s.magic_word;
    j["magic_coordinate"] = s.magic_coordinate;
    j["degree_cap"] = s.degree_cap;
    j["degree_bounded"] = s.degree_bounded;
    return j;
}

Json to_json(const SolutionData& s) {
    Json j;
    j["basic_set"] = s.basic_set;
    j["states"] = s.states;
    j["transition"] = s.transition;
    j["essential"] = s.essential;
    j["rho"] = s.rho;
    j["entropy"] = s.entropy;
    return j;
}

Json to_json(const LayerData& l) {
    Json j;
    j["layer"] = l.layer;
    j["basic_set"] = l.basic_set;
    Json c;
    c["states"] = l.cover_states;
    c["letters"] = l.cover_letters;
    c["incidence"] = l.incidence;
    c["symbolic"] = l.symbolic;
    c["irreducible"] = l.irreducible;
    c["mixing"] = l.mixing;
    c["period"] = l.period;
    j["cover"] = c;
    j["rho"] = l.rho;
    j["entropy"] = l.entropy;
    j["maximal_measure"] = opt_obj(l.measure);
    Json d;
    d["cover_alphabet"] = l.cover_alphabet;
    d["cover"] = l.dim_cover;
    d["space"] = l.dim_space;
    j["dimension"] = d;
    j["sync"] = to_json(l.sync);
    return j;
}

Json to_json(const UniformityData& u) {
    Json j;
    j["uniform"] = u.uniform;
    j["rho_m"] = u.rho_m;
    j["rho_source"] = u.rho_source;
    j["rho_target"] = u.rho_target;
    j["ratio_target_source"] = u.ratio_target_source;
    j["ratio_source_target"] = u.ratio_source_target;
    j["spectral_match"] = u.spectral_match;
    j["measure_entropy"] = u.measure_entropy;
    j["target_entropy"] = u.target_entropy;
    return j;
}

Json to_json(const CertificateData& c) {
    Json j;
    j["source"] = c.source;
    j["target"] = c.target;
    j["map"] = c.map;
    j["found"] = c.found;
    j["order"] = c.order;
    j["canonical"] = c.canonical;
    j["words"] = c.words;
    j["rays"] = c.rays;
    j["kernel"] = c.kernel;
    j["rho"] = c.rho;
    j["measure"] = opt_obj(c.measure);
    j["uniformity"] = opt_obj(c.uniformity);
    return j;
}

Json to_json(const DimensionRelation& d) {
    Json j;
    j["kind"] = d.kind;
    j["predicted"] = opt(d.predicted);
    j["actual"] = opt(d.actual);
    j["holds"] = d.holds;
    return j;
}

Json to_json(const PairData& p) {
    Json j;
    j["source"] = p.source;
    j["target"] = p.target;
    j["relation"] = p.relation;
    j["evidence"] = p.evidence;
    j["h_source"] = p.h_source;
    j["h_target"] = p.h_target;
    j["equal_entropy"] = p.equal_entropy;
    j["symbolic_E"] = opt(p.symbolic_e);
    j["incidence_E"] = opt(p.incidence_e);
    j["state_map"] = opt(p.state_map);
    j["letter_map"] = opt(p.letter_map);
    Json per;
    per["n_max"] = p.n_max;
    per["source_traces"] = p.source_traces;
    per["target_traces"] = p.target_traces;
    per["factor_periodic"] = p.factor_periodic;
    per["embedding"] = p.embedding;
    j["periodic"] = per;
    j["intertwiner_condition"] = opt(p.intertwiner_condition);
    j["entropy_gap_condition"] = opt(p.entropy_gap_condition);
    j["source_sync"] = to_json(p.source_sync);
    j["target_sync"] = to_json(p.target_sync);
    j["certificate"] = opt_obj(p.certificate);
    j["dimension"] = to_json(p.dimension);
    return j;
}

Json to_json(const Provenance& p) {
    Json j;
    j["tool"] = p.tool;
    j["version"] = p.version;
    j["boundary"] = p.boundary;
    Json t;
    t["spectral"] = p.spectral_tolerance;
    t["boundary"] = p.boundary_tolerance;
    t["markov"] = p.markov_tolerance;
    j["tolerances"] = t;
    j["markov_order"] = p.markov_order;
    j["layers"] = Json::array();
    for (const auto& l : p.layers) j["layers"].push_back(layer_to_json(l));
    return j;
}

Json to_json(const AnalysisReport& r) {
    Json j;
    j["name"] = r.name;
    j["provenance"] = to_json(r.provenance);
    j["solution_space"] = to_json(r.solution);
    j["layers"] = Json::array();
    for (const auto& l : r.layers) j["layers"].push_back(to_json(l));
    j["projections"] = Json::array();
    for (const auto& c : r.projections) j["projections"].push_back(to_json(c));
    j["pairs"] = Json::array();
    for (const auto& p : r.pairs) j["pairs"].push_back(to_json(p));
    return j;
}

AnalysisReport report_from_json(const Json& j) {
    try {
        AnalysisReport r;
        r.name = get<std::string>(j, "name");
        r.provenance = provenance_from(j.at("provenance"));
        r.solution = solution_from(j.at("solution_space"));
        for (const auto& l : j.at("layers")) r.layers.push_back(layer_from(l));
        for (const auto& c : j.at("projections")) r.projections.push_back(certificate_from(c));
        for (const auto& p : j.at("pairs")) r.pairs.push_back(pair_from(p));
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Config, std::string("malformed report: ") + e.what());
    }
}

std::string serialize(const AnalysisReport& r) {
    return to_json(r).dump(2) + "\n";
}

AnalysisReport parse_report(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Config, std::string("malformed report: ") + e.what());
    }
    return report_from_json(j);
}

}  // namespace mcnn
