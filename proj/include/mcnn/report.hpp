#pragma once

#include "mcnn/templates.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace mcnn {

inline constexpr const char* kToolName = "mcnn";
inline constexpr const char* kToolVersion = "1.0.0";

// numbers in reports carry 12 significant digits
double round12(double x);
std::vector<double> round12(const std::vector<double>& v);

using Json = nlohmann::ordered_json;

struct MeasureData {
    std::vector<double> stationary;
    std::vector<std::vector<double>> kernel;
    bool operator==(const MeasureData&) const = default;
};

struct SyncData {
    std::optional<std::string> word;
    std::optional<int> all_length_k;
    int max_len = 0;
    int degree_star = 0;
    std::string magic_word;
    int magic_coordinate = 0;
    int degree_cap = 0;
    bool degree_bounded = false;
    bool operator==(const SyncData&) const = default;
};

struct SolutionData {
    std::vector<std::string> basic_set;
    std::vector<std::string> states;
    std::vector<std::vector<int>> transition;
    std::vector<int> essential;
    double rho = 0;
    double entropy = 0;
    bool operator==(const SolutionData&) const = default;
};

struct LayerData {
    int layer = 0;
    std::vector<std::string> basic_set;
    std::vector<std::string> cover_states;  // grouped solution-space states
    std::string cover_letters;              // letter carried by each cover state
    std::vector<std::vector<int>> incidence;
    std::vector<std::vector<std::string>> symbolic;
    bool irreducible = false;
    bool mixing = false;
    int period = 0;
    double rho = 0;
    double entropy = 0;
    std::optional<MeasureData> measure;
    int cover_alphabet = 0;
    double dim_cover = 0;  // W
    double dim_space = 0;  // Y
    SyncData sync;
    bool operator==(const LayerData&) const = default;
};

struct UniformityData {
    bool uniform = false;
    double rho_m = 0;
    double rho_source = 0;
    double rho_target = 0;
    double ratio_target_source = 0;
    double ratio_source_target = 0;
    bool spectral_match = false;
    double measure_entropy = 0;
    double target_entropy = 0;
    bool operator==(const UniformityData&) const = default;
};

struct CertificateData {
    int source = 0;  // 0 = solution space, otherwise the cover layer
    int target = 0;
    std::vector<int> map;  // source state -> target symbol
    bool found = false;
    int order = 0;
    bool canonical = false;
    std::vector<std::vector<int>> words;
    std::vector<std::vector<double>> rays;
    std::vector<std::vector<double>> kernel;
    double rho = 0;
    std::optional<MeasureData> measure;
    std::optional<UniformityData> uniformity;
    bool operator==(const CertificateData&) const = default;
};

struct DimensionRelation {
    std::string kind = "none";  // equal-entropy, uniform-factor, none
    std::optional<double> predicted;
    std::optional<double> actual;
    bool holds = false;
    bool operator==(const DimensionRelation&) const = default;
};

struct PairData {
    int source = 0;
    int target = 0;
    std::string relation;
    std::string evidence;
    double h_source = 0;
    double h_target = 0;
    bool equal_entropy = false;
    std::optional<std::vector<std::vector<int>>> symbolic_e;
    std::optional<std::vector<std::vector<int>>> incidence_e;
    std::optional<std::vector<int>> state_map;
    std::optional<std::string> letter_map;  // images of '-' and '+', '?' when unused
    int n_max = 0;
    std::vector<std::string> source_traces;  // tr(T^n), exact
    std::vector<std::string> target_traces;
    bool factor_periodic = false;
    bool embedding = false;
    std::optional<bool> intertwiner_condition;
    std::optional<bool> entropy_gap_condition;
    SyncData source_sync;
    SyncData target_sync;
    std::optional<CertificateData> certificate;
    DimensionRelation dimension;
    bool operator==(const PairData&) const = default;
};

struct Provenance {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    std::string boundary;
    double spectral_tolerance = 0;
    double boundary_tolerance = 0;
    double markov_tolerance = 0;
    int markov_order = 0;
    std::vector<LayerTemplate> layers;
    bool operator==(const Provenance&) const = default;
};

struct AnalysisReport {
    std::string name;
    Provenance provenance;
    SolutionData solution;
    std::vector<LayerData> layers;
    std::vector<CertificateData> projections;  // solution space onto each layer
    std::vector<PairData> pairs;
    bool operator==(const AnalysisReport&) const = default;
};

Json to_json(const MeasureData& m);
Json to_json(const SyncData& s);
Json to_json(const SolutionData& s);
Json to_json(const LayerData& l);
Json to_json(const UniformityData& u);
Json to_json(const CertificateData& c);
Json to_json(const DimensionRelation& d);
Json to_json(const PairData& p);
Json to_json(const Provenance& p);
Json to_json(const AnalysisReport& r);

AnalysisReport report_from_json(const Json& j);
std::string serialize(const AnalysisReport& r);  // two-space indent, trailing newline
AnalysisReport parse_report(const std::string& text);

}  // namespace mcnn
