#pragma once

#include "mcnn/exact.hpp"
#include "mcnn/templates.hpp"
#include "mcnn/types.hpp"

#include <string>
#include <vector>

namespace mcnn {

inline constexpr int kOracleWordLimit = 18;

struct TransitionMatrix {
    IMatrix entries;
    std::vector<std::string> state_labels;
    int layers = 0;   // rows of the underlying patterns
    int columns = 1;  // columns per state (window width - 1)

    int size() const { return static_cast<int>(entries.rows()); }
    // letter of layer l (1-based) in the last column of state s
    int letter(int s, int layer) const;
};

// Raw matrix over all 2^(n*(w-1)) states; EmptyShift if trimming would empty it.
TransitionMatrix build_transition_matrix(const BasicSet& b);

// States surviving iterated removal of zero in/out degree, ascending.
std::vector<int> essential_states(const IMatrix& a);
IMatrix restrict_matrix(const IMatrix& a, const std::vector<int>& states);
TransitionMatrix trim_essential(const TransitionMatrix& t);

struct SymbolicMatrix {
    int n = 0;
    std::vector<std::vector<int>> entries;  // n*n formal sums, sorted symbol ids; empty = null

    const std::vector<int>& at(int p, int q) const { return entries[p * n + q]; }
    std::vector<int>& at(int p, int q) { return entries[p * n + q]; }
    std::string entry_string(int p, int q) const;  // "a1+a3", or "0" for the null entry
    std::vector<std::vector<std::string>> strings() const;
    bool right_resolving() const;
    bool operator==(const SymbolicMatrix&) const = default;
};

SymbolicMatrix parse_symbolic(const std::vector<std::vector<std::string>>& rows);

struct Edge {
    int src = 0;
    int dst = 0;
    int alpha = 0;   // two-block index 2*letter(src) + letter(dst)
    int letter = 0;  // right letter of the two-block
    bool operator==(const Edge&) const = default;
};

struct Presentation {
    IMatrix incidence;
    std::vector<Edge> edges;
    std::vector<int> state_letter;          // -1 when not uniform
    std::vector<std::vector<int>> members;  // raw states grouped by each state
    std::vector<std::string> state_labels;
    int layer = 0;
    bool determinized = false;

    int size() const { return static_cast<int>(incidence.rows()); }
    SymbolicMatrix symbolic() const;
    bool is_deterministic() const;
    int successor(int s, int letter) const;  // -1 if none; deterministic presentations only
};

Presentation layer_labeled_graph(const TransitionMatrix& t, int layer);
Presentation subset_construction(const Presentation& g);
// W(l): subset construction of the layer-l labeled graph
Presentation layer_cover(const TransitionMatrix& t, int layer);
// restriction to essential states (edges and labels kept)
Presentation essential_part(const Presentation& g);
// vertex shift whose states carry letters; edges labeled by the target letter
Presentation vertex_presentation(const IMatrix& a, const std::vector<int>& letters);

struct WordCount {
    int k = 0;
    BigInt count = 0;
};

WordCount count_words(const Presentation& p, int k, int k_oracle = kOracleWordLimit);
// distinct label words of length k in lexicographic order ('-' < '+')
std::vector<std::vector<int>> enumerate_words(const Presentation& p, int k,
                                              int k_oracle = kOracleWordLimit);

BigInt periodic_counts(const IMatrix& t, int n);

struct StructureFlags {
    bool irreducible = false;
    bool mixing = false;
    int period = 0;  // 0 when not irreducible
    bool operator==(const StructureFlags&) const = default;
};

std::vector<std::vector<int>> strongly_connected_components(const IMatrix& a);
StructureFlags structure_flags(const IMatrix& t);
int graph_period(const IMatrix& t);  // gcd of cycle lengths of an irreducible matrix

std::string matrix_dump(const IMatrix& a);
std::string graph_description(const Presentation& p);

}  // namespace mcnn
