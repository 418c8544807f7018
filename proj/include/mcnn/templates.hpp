#pragma once

#include <compare>
#include <set>
#include <string>
#include <vector>

namespace mcnn {

inline constexpr double kBoundaryTol = 1e-9;

struct LayerTemplate {
    int d = 1;
    std::vector<double> feedback;  // a_{-d} .. a_d
    std::vector<double> control;   // b_{-d} .. b_d, all zero without input
    double threshold = 0.0;

    double a(int k) const { return feedback[k + d]; }
    double b(int k) const { return control[k + d]; }
    bool has_control() const;
    void validate() const;

    static LayerTemplate smcnn(double a, double a_r, double z);
    static LayerTemplate smcnn(double a, double a_r, double b, double b_r, double z);

    bool operator==(const LayerTemplate&) const = default;
};

// Reject: inequalities within eps_b of equality are an error.
// Include: closed inequalities, margin > -eps_b is admissible.
enum class BoundaryPolicy { Reject, Include };

struct NetworkTemplate {
    std::vector<LayerTemplate> layers;
    BoundaryPolicy boundary = BoundaryPolicy::Reject;

    int size() const { return static_cast<int>(layers.size()); }
    void validate() const;
    bool operator==(const NetworkTemplate&) const = default;
};

// Column offsets lo..hi (relative to the center cell) spanned by a pattern.
struct PatternWindow {
    int lo = 0;
    int hi = 1;
    int width() const { return hi - lo + 1; }
    int center() const { return -lo; }
    bool operator==(const PatternWindow&) const = default;
};

PatternWindow pattern_window(const NetworkTemplate& t);

// rows x cols array of +-1, row-major, row 0 is the top (highest layer).
struct LocalPattern {
    int rows = 0;
    int cols = 0;
    std::vector<signed char> cells;

    int at(int r, int c) const { return cells[r * cols + c]; }
    int bit(int r, int c) const { return cells[r * cols + c] > 0 ? 1 : 0; }
    std::string str() const;  // rows joined by '/', e.g. "++/-+"
    static LocalPattern parse(const std::string& s);

    auto operator<=>(const LocalPattern&) const = default;
};

struct BasicSet {
    int rows = 0;
    int cols = 0;
    std::set<LocalPattern> patterns;

    std::size_t size() const { return patterns.size(); }
    bool contains(const LocalPattern& p) const { return patterns.count(p) != 0; }
    std::vector<std::string> strings() const;
    void insert(LocalPattern p);

    bool operator==(const BasicSet&) const = default;
};

// Admissibility margin of one pattern: output row on top, input row (if any) below.
double pattern_margin(const LayerTemplate& t, const LocalPattern& p, PatternWindow w);

BasicSet layer_admissible_patterns(const LayerTemplate& t, bool has_input, PatternWindow w,
                                   BoundaryPolicy policy = BoundaryPolicy::Reject,
                                   double eps_b = kBoundaryTol);
// SMCNN convenience with the default window (center, right neighbour).
BasicSet layer_admissible_patterns(const LayerTemplate& t, bool has_input,
                                   BoundaryPolicy policy = BoundaryPolicy::Reject,
                                   double eps_b = kBoundaryTol);

// basic_sets[0] is layer 1. Throws EmptyComposition when nothing survives.
BasicSet compose_network(const std::vector<BasicSet>& basic_sets);

std::vector<BasicSet> layer_basic_sets(const NetworkTemplate& t, double eps_b = kBoundaryTol);
BasicSet network_basic_set(const NetworkTemplate& t, double eps_b = kBoundaryTol);

struct LayerSignature {
    std::vector<int> signs;         // sign of each compared parameter
    std::vector<int> order;         // indices of compared parameters by descending magnitude
    bool dominant = false;          // largest magnitude exceeds the sum of the rest
    std::vector<bool> admissible;   // per candidate pattern, enumeration order
    bool operator==(const LayerSignature&) const = default;
    auto operator<=>(const LayerSignature&) const = default;
};

struct RegionSignature {
    std::vector<LayerSignature> layers;
    bool operator==(const RegionSignature&) const = default;
    auto operator<=>(const RegionSignature&) const = default;
};

// Names of the compared parameters of one layer, e.g. "a_1", "b_0".
std::vector<std::string> compared_parameter_names(const LayerTemplate& t, bool has_input,
                                                  PatternWindow w);

RegionSignature classify_region(const NetworkTemplate& t, double eps_b = kBoundaryTol);

}  // namespace mcnn
