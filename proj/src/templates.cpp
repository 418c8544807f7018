#include "mcnn/templates.hpp"
#include "mcnn/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace mcnn {

bool LayerTemplate::has_control() const {
    return std::any_of(control.begin(), control.end(), [](double v) { return v != 0.0; });
}

void LayerTemplate::validate() const {
    if (d < 1) throw Error(ErrorKind::Config, "neighbourhood radius must be positive");
    const auto n = static_cast<std::size_t>(2 * d + 1);
    if (feedback.size() != n || control.size() != n)
        throw Error(ErrorKind::Config, "feedback and control need 2d+1 entries each");
    auto finite = [](double v) { return std::isfinite(v); };
    if (!std::all_of(feedback.begin(), feedback.end(), finite) ||
        !std::all_of(control.begin(), control.end(), finite) || !std::isfinite(threshold))
        throw Error(ErrorKind::Config, "template parameters must be finite");
}

LayerTemplate LayerTemplate::smcnn(double a, double a_r, double z) {
    return {1, {0.0, a, a_r}, {0.0, 0.0, 0.0}, z};
}

LayerTemplate LayerTemplate::smcnn(double a, double a_r, double b, double b_r, double z) {
    return {1, {0.0, a, a_r}, {0.0, b, b_r}, z};
}

void NetworkTemplate::validate() const {
    if (layers.empty()) throw Error(ErrorKind::Config, "network needs at least one layer");
    for (const auto& l : layers) l.validate();
    if (layers.front().has_control())
        throw Error(ErrorKind::Config, "layer 1 takes no input; its control must be zero");
}

PatternWindow pattern_window(const NetworkTemplate& t) {
    PatternWindow w{0, 0};
    for (const auto& l : t.layers) {
        for (int k = -l.d; k <= l.d; ++k) {
            bool used = (k != 0 && l.a(k) != 0.0) || l.b(k) != 0.0;
            if (!used) continue;
            w.lo = std::min(w.lo, k);
            w.hi = std::max(w.hi, k);
        }
    }
    // transitions need at least two columns
    if (w.width() < 2) w.hi = w.lo + 1;
    return w;
}

std::string LocalPattern::str() const {
    std::string s;
    for (int r = 0; r < rows; ++r) {
        if (r) s.push_back('/');
        for (int c = 0; c < cols; ++c) s.push_back(at(r, c) > 0 ? '+' : '-');
    }
    return s;
}

LocalPattern LocalPattern::parse(const std::string& s) {
    LocalPattern p;
    std::stringstream ss(s);
    std::string row;
    while (std::getline(ss, row, '/')) {
        if (p.rows == 0) p.cols = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != p.cols || row.empty())
            throw Error(ErrorKind::Config, "ragged pattern '" + s + "'");
        for (char c : row) {
            if (c != '+' && c != '-') throw Error(ErrorKind::Config, "bad pattern '" + s + "'");
            p.cells.push_back(c == '+' ? 1 : -1);
        }
        ++p.rows;
    }
    return p;
}

std::vector<std::string> BasicSet::strings() const {
    std::vector<std::string> out;
    for (const auto& p : patterns) out.push_back(p.str());
    return out;
}

void BasicSet::insert(LocalPattern p) {
    if (patterns.empty() && rows == 0) {
        rows = p.rows;
        cols = p.cols;
    }
    if (p.rows != rows || p.cols != cols) throw Error(ErrorKind::Config, "pattern shape mismatch");
    patterns.insert(std::move(p));
}

namespace {

// All rows x cols patterns, in the order of LocalPattern comparison.
std::vector<LocalPattern> all_patterns(int rows, int cols) {
    const int n = rows * cols;
    std::vector<LocalPattern> out;
    out.reserve(std::size_t{1} << n);
    for (unsigned code = 0; code < (1u << n); ++code) {
        LocalPattern p{rows, cols, std::vector<signed char>(n)};
        for (int i = 0; i < n; ++i) p.cells[i] = (code >> (n - 1 - i)) & 1u ? 1 : -1;
        out.push_back(std::move(p));
    }
    return out;
}

bool admissible(double margin, BoundaryPolicy policy, double eps_b, const LocalPattern& p) {
    if (std::abs(margin) <= eps_b) {
        if (policy == BoundaryPolicy::Reject) {
            std::ostringstream os;
            os << "pattern " << p.str() << " has margin " << margin << " within " << eps_b
               << " of equality";
            throw Error(ErrorKind::BoundaryParameter, os.str());
        }
        return true;
    }
    return margin > 0.0;
}

}  // namespace

double pattern_margin(const LayerTemplate& t, const LocalPattern& p, PatternWindow w) {
    const int c0 = w.center();
    const int s = p.at(0, c0);
    double field = t.threshold;
    for (int c = 0; c < p.cols; ++c) {
        const int k = c + w.lo;
        if (std::abs(k) > t.d) continue;
        if (k != 0) field += t.a(k) * p.at(0, c);
        if (p.rows > 1) field += t.b(k) * p.at(1, c);
    }
    return t.a(0) - 1.0 + s * field;
}

BasicSet layer_admissible_patterns(const LayerTemplate& t, bool has_input, PatternWindow w,
                                   BoundaryPolicy policy, double eps_b) {
    t.validate();
    if (!has_input && t.has_control())
        throw Error(ErrorKind::Config, "layer without input has a nonzero control template");
    BasicSet out;
    out.rows = has_input ? 2 : 1;
    out.cols = w.width();
    for (auto& p : all_patterns(out.rows, out.cols))
        if (admissible(pattern_margin(t, p, w), policy, eps_b, p)) out.patterns.insert(std::move(p));
    return out;
}

BasicSet layer_admissible_patterns(const LayerTemplate& t, bool has_input, BoundaryPolicy policy,
                                   double eps_b) {
    return layer_admissible_patterns(t, has_input, PatternWindow{}, policy, eps_b);
}

BasicSet compose_network(const std::vector<BasicSet>& sets) {
    if (sets.empty()) throw Error(ErrorKind::Config, "no layers to compose");
    if (sets[0].rows != 1)
        throw Error(ErrorKind::Config, "layer 1 patterns must have a single row");
    const int cols = sets[0].cols;
    for (std::size_t l = 1; l < sets.size(); ++l)
        if (sets[l].rows != 2 || sets[l].cols != cols)
            throw Error(ErrorKind::Config, "layer patterns need an input row and equal width");

    // stacks stored top = current highest layer
    std::vector<LocalPattern> stacks(sets[0].patterns.begin(), sets[0].patterns.end());
    for (std::size_t l = 1; l < sets.size(); ++l) {
        std::vector<LocalPattern> next;
        for (const auto& s : stacks) {
            for (const auto& q : sets[l].patterns) {
                if (!std::equal(q.cells.begin() + cols, q.cells.end(), s.cells.begin())) continue;
                LocalPattern p{s.rows + 1, cols, {}};
                p.cells.assign(q.cells.begin(), q.cells.begin() + cols);
                p.cells.insert(p.cells.end(), s.cells.begin(), s.cells.end());
                next.push_back(std::move(p));
            }
        }
        stacks = std::move(next);
    }
    BasicSet out;
    out.rows = static_cast<int>(sets.size());
    out.cols = cols;
    out.patterns.insert(stacks.begin(), stacks.end());
    if (out.patterns.empty()) throw Error(ErrorKind::EmptyComposition, "no composed pattern survives");
    return out;
}

std::vector<BasicSet> layer_basic_sets(const NetworkTemplate& t, double eps_b) {
    t.validate();
    const PatternWindow w = pattern_window(t);
    std::vector<BasicSet> sets;
    for (int l = 0; l < t.size(); ++l)
        sets.push_back(layer_admissible_patterns(t.layers[l], l > 0, w, t.boundary, eps_b));
    return sets;
}

BasicSet network_basic_set(const NetworkTemplate& t, double eps_b) {
    return compose_network(layer_basic_sets(t, eps_b));
}

namespace {

struct Param {
    std::string name;
    double value;
};

std::vector<Param> compared_parameters(const LayerTemplate& t, bool has_input, PatternWindow w) {
    std::vector<Param> ps;
    for (int k = w.lo; k <= w.hi; ++k)
        if (k != 0 && std::abs(k) <= t.d) ps.push_back({"a_" + std::to_string(k), t.a(k)});
    if (has_input)
        for (int k = w.lo; k <= w.hi; ++k)
            if (std::abs(k) <= t.d) ps.push_back({"b_" + std::to_string(k), t.b(k)});
    return ps;
}

}  // namespace

std::vector<std::string> compared_parameter_names(const LayerTemplate& t, bool has_input,
                                                  PatternWindow w) {
    std::vector<std::string> names;
    for (const auto& p : compared_parameters(t, has_input, w)) names.push_back(p.name);
    return names;
}

RegionSignature classify_region(const NetworkTemplate& t, double eps_b) {
    t.validate();
    const PatternWindow w = pattern_window(t);
    RegionSignature sig;
    for (int l = 0; l < t.size(); ++l) {
        const auto& lt = t.layers[l];
        const bool has_input = l > 0;
        const auto ps = compared_parameters(lt, has_input, w);
        const std::string where = "layer " + std::to_string(l + 1);

        bool all_zero = lt.threshold == 0.0 && lt.a(0) == 0.0;
        for (const auto& p : ps) all_zero = all_zero && p.value == 0.0;
        if (all_zero) throw Error(ErrorKind::DegenerateTemplate, where + ": all parameters are zero");

        LayerSignature ls;
        std::vector<double> mags;
        for (const auto& p : ps) {
            if (std::abs(p.value) <= eps_b)
                throw Error(ErrorKind::DegenerateTemplate, where + ": " + p.name + " is zero");
            ls.signs.push_back(p.value > 0 ? 1 : -1);
            mags.push_back(std::abs(p.value));
        }
        ls.order.resize(ps.size());
        std::iota(ls.order.begin(), ls.order.end(), 0);
        std::stable_sort(ls.order.begin(), ls.order.end(),
                         [&](int x, int y) { return mags[x] > mags[y]; });
        for (std::size_t i = 1; i < ls.order.size(); ++i)
            if (mags[ls.order[i - 1]] - mags[ls.order[i]] <= eps_b)
                throw Error(ErrorKind::DegenerateTemplate,
                            where + ": |" + ps[ls.order[i - 1]].name + "| ties |" +
                                ps[ls.order[i]].name + "|");
        if (!ps.empty()) {
            const double top = mags[ls.order[0]];
            const double rest = std::accumulate(mags.begin(), mags.end(), 0.0) - top;
            if (ps.size() > 1 && std::abs(top - rest) <= eps_b)
                throw Error(ErrorKind::DegenerateTemplate, where + ": dominance tie");
            ls.dominant = top > rest;
        }
        for (const auto& p : all_patterns(has_input ? 2 : 1, w.width()))
            ls.admissible.push_back(admissible(pattern_margin(lt, p, w), t.boundary, eps_b, p));
        sig.layers.push_back(std::move(ls));
    }
    return sig;
}

}  // namespace mcnn
