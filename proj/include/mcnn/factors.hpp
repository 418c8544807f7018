#pragma once

#include "mcnn/exact.hpp"
#include "mcnn/shifts.hpp"
#include "mcnn/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mcnn {

// 0/1 matrix with exactly one 1 per row; row p maps source state p to column f(p)
struct FactorLikeMatrix {
    IMatrix entries;

    int rows() const { return static_cast<int>(entries.rows()); }
    int cols() const { return static_cast<int>(entries.cols()); }
    std::vector<int> state_map() const;
    static FactorLikeMatrix from_map(const std::vector<int>& f, int cols);
    bool operator==(const FactorLikeMatrix& o) const { return entries == o.entries; }
};

bool is_factor_like(const IMatrix& e);

// S_i E == E S_j as formal sums
bool intertwines_symbolic(const SymbolicMatrix& si, const SymbolicMatrix& sj, const FactorLikeMatrix& e);
bool intertwines_incidence(const IMatrix& ti, const IMatrix& tj, const FactorLikeMatrix& e);

// first solution in lexicographic order of the row map, or none
std::optional<FactorLikeMatrix> search_factor_like_symbolic(const SymbolicMatrix& si, const SymbolicMatrix& sj);
std::optional<FactorLikeMatrix> search_factor_like_incidence(const IMatrix& ti, const IMatrix& tj);

struct OneBlockMap {
    std::vector<int> image;  // -1 where the source symbol is unused
    int target_size = 0;

    int operator()(int s) const { return image.at(s); }
    int size() const { return static_cast<int>(image.size()); }
    bool operator==(const OneBlockMap&) const = default;
};

OneBlockMap induced_state_map(const FactorLikeMatrix& e);
// letter map '-'/'+' -> '-'/'+'; IncompatibleLabels unless S_i E = E S_j
OneBlockMap induced_label_map(const FactorLikeMatrix& e, const Presentation& ci, const Presentation& cj);

inline constexpr int kDegreeWordCap = 12;

struct SyncReport {
    std::optional<std::vector<int>> word;  // shortest synchronizing word
    std::optional<int> all_length_k;       // least k with every length-k word synchronizing
    int max_len = 0;
    int degree_star = 0;                   // 0 when the language is empty
    std::vector<int> magic_word;
    int magic_coordinate = 0;              // 0-based position in the magic word
    int degree_cap = kDegreeWordCap;
    bool degree_bounded = false;           // d* > 1 only within the cap
};

// states reached by reading w from every state (first letter selects, later letters step)
std::vector<int> terminal_states(const Presentation& cover, const std::vector<int>& w);
bool is_synchronizing(const Presentation& cover, const std::vector<int>& w);

// max_len < 0 picks 2^states (capped at 4096)
SyncReport synchronizing_analysis(const Presentation& cover, int max_len = -1, int degree_cap = kDegreeWordCap);

inline constexpr int kPeriodicCap = 30;

int default_n_max(const IMatrix& tx, const IMatrix& ty);
bool entropies_equal(const IMatrix& tx, const IMatrix& ty, double tol = 1e-9);
bool embedding_condition(const IMatrix& tx, const IMatrix& ty, int n_max);
bool factor_periodic_condition(const IMatrix& tx, const IMatrix& ty, int n_max);

enum class Relation { FSEFiniteToOne, InfiniteToOneExists, EmbeddingExists, NoneFound };
const char* relation_name(Relation r);
Relation parse_relation(const std::string& s);

struct FactorDecision {
    int source = 0;
    int target = 0;
    Relation relation = Relation::NoneFound;
    std::string evidence;  // symbolic-intertwiner, incidence-intertwiner, factor-periodic, embedding, none
    double h_source = 0.0;
    double h_target = 0.0;
    bool equal_entropy = false;
    std::optional<FactorLikeMatrix> symbolic;
    std::optional<FactorLikeMatrix> incidence;
    int n_max = 0;
    std::vector<BigInt> source_periodic;  // tr(T^n), n = 1..n_max
    std::vector<BigInt> target_periodic;
    bool factor_periodic = false;
    bool embedding = false;
    // auxiliary hypotheses against the solution space (absent when not supplied)
    std::optional<bool> intertwiner_condition;   // h(source) = h(Y) and T_source F = F T
    std::optional<bool> entropy_gap_condition;   // h(source) < h(Y)
    SyncReport source_sync;
    SyncReport target_sync;
};

// covers are used as given (trim them first); solution_space is the essential T of Y
FactorDecision classify_relation(const Presentation& source, const Presentation& target, int i, int j,
                                 const IMatrix* solution_space = nullptr);

}  // namespace mcnn
