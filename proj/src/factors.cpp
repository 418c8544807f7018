#include "mcnn/factors.hpp"

#include "mcnn/error.hpp"
#include "mcnn/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace mcnn {

std::vector<int> FactorLikeMatrix::state_map() const {
    std::vector<int> f(rows(), -1);
    for (int p = 0; p < rows(); ++p)
        for (int c = 0; c < cols(); ++c)
            if (entries(p, c) == 1) f[p] = c;
    return f;
}

FactorLikeMatrix FactorLikeMatrix::from_map(const std::vector<int>& f, int cols) {
    FactorLikeMatrix e;
    e.entries = IMatrix::Zero(static_cast<int>(f.size()), cols);
    for (std::size_t p = 0; p < f.size(); ++p) e.entries(static_cast<int>(p), f[p]) = 1;
    return e;
}

bool is_factor_like(const IMatrix& e) {
    if ((e.array() < 0).any()) return false;
    for (int p = 0; p < e.rows(); ++p)
        if (e.row(p).sum() != 1) return false;
    return true;
}

namespace {

std::vector<int> merged(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    return a;
}

std::vector<int> row_labels(const SymbolicMatrix& s, int p) {
    std::vector<int> all;
    for (int q = 0; q < s.n; ++q) all = merged(std::move(all), s.at(p, q));
    return all;
}

bool symbolic_row_ok(const SymbolicMatrix& si, const SymbolicMatrix& sj, const std::vector<int>& f, int p) {
    std::vector<std::vector<int>> lhs(sj.n);
    for (int q = 0; q < si.n; ++q)
        if (!si.at(p, q).empty()) lhs[f[q]] = merged(std::move(lhs[f[q]]), si.at(p, q));
    for (int c = 0; c < sj.n; ++c)
        if (lhs[c] != sj.at(f[p], c)) return false;
    return true;
}

bool incidence_row_ok(const IMatrix& ti, const IMatrix& tj, const std::vector<int>& f, int p) {
    std::vector<long long> lhs(tj.cols(), 0);
    for (int q = 0; q < ti.cols(); ++q) lhs[f[q]] += ti(p, q);
    for (int c = 0; c < tj.cols(); ++c)
        if (lhs[c] != tj(f[p], c)) return false;
    return true;
}

// Backtracking over row maps f: rows -> cols in lexicographic order. Row p is
// checked once f(p) and f(q) are fixed for every q in its support.
std::optional<std::vector<int>> search_maps(int n, const std::vector<std::vector<int>>& cand,
                                            const std::vector<std::vector<int>>& support,
                                            const std::function<bool(const std::vector<int>&, int)>& row_ok) {
    std::vector<std::vector<int>> ready(n);
    for (int p = 0; p < n; ++p) {
        int k = p;
        for (int q : support[p]) k = std::max(k, q);
        ready[k].push_back(p);
    }
    std::vector<int> f(n, -1);
    std::function<bool(int)> go = [&](int k) {
        if (k == n) return true;
        for (int c : cand[k]) {
            f[k] = c;
            bool ok = true;
            for (int p : ready[k])
                if (!row_ok(f, p)) {
                    ok = false;
                    break;
                }
            if (ok && go(k + 1)) return true;
        }
        f[k] = -1;
        return false;
    };
    if (go(0)) return f;
    return std::nullopt;
}

}  // namespace

bool intertwines_symbolic(const SymbolicMatrix& si, const SymbolicMatrix& sj, const FactorLikeMatrix& e) {
    if (e.rows() != si.n || e.cols() != sj.n || !is_factor_like(e.entries)) return false;
    const auto f = e.state_map();
    for (int p = 0; p < si.n; ++p)
        if (!symbolic_row_ok(si, sj, f, p)) return false;
    return true;
}

bool intertwines_incidence(const IMatrix& ti, const IMatrix& tj, const FactorLikeMatrix& e) {
    if (e.rows() != ti.rows() || e.cols() != tj.rows() || !is_factor_like(e.entries)) return false;
    const IMatrix lhs = ti * e.entries;
    const IMatrix rhs = e.entries * tj;
    return lhs == rhs;
}

std::optional<FactorLikeMatrix> search_factor_like_symbolic(const SymbolicMatrix& si, const SymbolicMatrix& sj) {
    if (si.n == 0 || sj.n == 0) return std::nullopt;
    std::vector<std::vector<int>> cand(si.n), support(si.n);
    std::vector<std::vector<int>> target_rows(sj.n);
    for (int c = 0; c < sj.n; ++c) target_rows[c] = row_labels(sj, c);
    for (int p = 0; p < si.n; ++p) {
        const auto labels = row_labels(si, p);
        for (int c = 0; c < sj.n; ++c)
            if (labels == target_rows[c]) cand[p].push_back(c);
        for (int q = 0; q < si.n; ++q)
            if (!si.at(p, q).empty()) support[p].push_back(q);
    }
    auto f = search_maps(si.n, cand, support,
                         [&](const std::vector<int>& m, int p) { return symbolic_row_ok(si, sj, m, p); });
    if (!f) return std::nullopt;
    return FactorLikeMatrix::from_map(*f, sj.n);
}

std::optional<FactorLikeMatrix> search_factor_like_incidence(const IMatrix& ti, const IMatrix& tj) {
    if (ti.rows() == 0 || tj.rows() == 0) return std::nullopt;
    const int n = static_cast<int>(ti.rows());
    std::vector<std::vector<int>> cand(n), support(n);
    for (int p = 0; p < n; ++p) {
        for (int c = 0; c < tj.rows(); ++c)
            if (ti.row(p).sum() == tj.row(c).sum()) cand[p].push_back(c);
        for (int q = 0; q < n; ++q)
            if (ti(p, q)) support[p].push_back(q);
    }
    auto f = search_maps(n, cand, support,
                         [&](const std::vector<int>& m, int p) { return incidence_row_ok(ti, tj, m, p); });
    if (!f) return std::nullopt;
    return FactorLikeMatrix::from_map(*f, static_cast<int>(tj.rows()));
}

OneBlockMap induced_state_map(const FactorLikeMatrix& e) {
    return {e.state_map(), e.cols()};
}

OneBlockMap induced_label_map(const FactorLikeMatrix& e, const Presentation& ci, const Presentation& cj) {
    if (!intertwines_symbolic(ci.symbolic(), cj.symbolic(), e))
        throw Error(ErrorKind::IncompatibleLabels, "E does not intertwine the symbolic matrices");
    OneBlockMap m{{-1, -1}, 2};
    const auto f = e.state_map();
    for (int p = 0; p < ci.size(); ++p) {
        const int a = ci.state_letter[p], b = cj.state_letter[f[p]];
        if (a < 0 || b < 0) continue;
        if (m.image[a] >= 0 && m.image[a] != b)
            throw Error(ErrorKind::IncompatibleLabels, "state map is not letter-consistent");
        m.image[a] = b;
    }
    return m;
}

namespace {

using Subset = std::vector<int>;

struct Automaton {
    const Presentation& g;
    std::vector<std::vector<int>> first;          // states presenting a one-letter word
    std::vector<std::vector<std::vector<int>>> next;  // next[s][a] = targets on letter a

    explicit Automaton(const Presentation& p) : g(p), first(2), next(p.size(), std::vector<std::vector<int>>(2)) {
        std::vector<std::array<bool, 2>> in(p.size(), {false, false});
        for (const auto& e : p.edges) {
            next[e.src][e.letter].push_back(e.dst);
            in[e.dst][e.letter] = true;
        }
        for (int s = 0; s < p.size(); ++s)
            for (int a = 0; a < 2; ++a) {
                const int l = p.state_letter.empty() ? -1 : p.state_letter[s];
                if (l >= 0 ? l == a : in[s][a]) first[a].push_back(s);
            }
    }

    Subset step(const Subset& s, int a) const {
        std::vector<bool> hit(g.size(), false);
        for (int u : s)
            for (int v : next[u][a]) hit[v] = true;
        Subset r;
        for (int v = 0; v < g.size(); ++v)
            if (hit[v]) r.push_back(v);
        return r;
    }

    Subset full() const {
        Subset r(g.size());
        std::iota(r.begin(), r.end(), 0);
        return r;
    }

    // reading a letter from the initial (full) set selects, afterwards steps
    Subset read(const Subset& s, int a, bool initial) const { return initial ? first[a] : step(s, a); }
};

}  // namespace

std::vector<int> terminal_states(const Presentation& cover, const std::vector<int>& w) {
    const Automaton au(cover);
    Subset s = au.full();
    for (std::size_t i = 0; i < w.size() && !s.empty(); ++i) s = au.read(s, w[i], i == 0);
    return s;
}

bool is_synchronizing(const Presentation& cover, const std::vector<int>& w) {
    return terminal_states(cover, w).size() == 1;
}

SyncReport synchronizing_analysis(const Presentation& cover, int max_len, int degree_cap) {
    const Automaton au(cover);
    const int n = cover.size();
    SyncReport r;
    r.max_len = max_len >= 0 ? max_len : (n >= 12 ? 4096 : (1 << n));
    r.degree_cap = degree_cap;
    if (n == 0) return r;

    // shortest synchronizing word: BFS over subsets, letters tried in order
    {
        std::map<Subset, std::vector<int>> seen;
        std::queue<Subset> todo;
        const Subset start = au.full();
        if (start.size() == 1) r.word = std::vector<int>{};
        seen[start] = {};
        todo.push(start);
        while (!r.word && !todo.empty()) {
            const Subset cur = todo.front();
            todo.pop();
            const auto w = seen[cur];
            for (int a = 0; a < 2 && !r.word; ++a) {
                Subset nxt = au.read(cur, a, w.empty());
                if (nxt.empty() || seen.count(nxt)) continue;
                auto nw = w;
                nw.push_back(a);
                if (nxt.size() == 1) r.word = nw;
                seen[nxt] = nw;
                todo.push(nxt);
            }
        }
    }

    // least k with every word of length k synchronizing
    {
        std::set<Subset> level{au.full()};
        for (int k = 0; k <= r.max_len && !level.empty(); ++k) {
            if (std::all_of(level.begin(), level.end(), [](const Subset& s) { return s.size() == 1; })) {
                r.all_length_k = k;
                break;
            }
            std::set<Subset> nxt;
            for (const auto& s : level)
                for (int a = 0; a < 2; ++a) {
                    Subset t = au.read(s, a, k == 0);
                    if (!t.empty()) nxt.insert(std::move(t));
                }
            level = std::move(nxt);
        }
    }

    // d* = min over words and coordinates of the number of states the
    // presenting paths can occupy there
    int best = 0;
    std::vector<int> w;
    std::vector<Subset> fwd;
    std::function<bool(int)> dfs = [&](int len) {
        if (static_cast<int>(w.size()) == len) {
            // walk backwards: states at i with letter w_i and an edge into the set at i+1
            std::vector<Subset> bwd(len);
            bwd[len - 1] = fwd[len - 1];
            for (int i = len - 2; i >= 0; --i)
                for (int s : fwd[i])
                    for (int v : au.next[s][w[i + 1]])
                        if (std::binary_search(bwd[i + 1].begin(), bwd[i + 1].end(), v)) {
                            bwd[i].push_back(s);
                            break;
                        }
            for (int i = 0; i < len; ++i) {
                const int d = static_cast<int>(bwd[i].size());
                if (d > 0 && (best == 0 || d < best)) {
                    best = d;
                    r.magic_word = w;
                    r.magic_coordinate = i;
                }
            }
            return best == 1;
        }
        for (int a = 0; a < 2; ++a) {
            Subset s = au.read(fwd.empty() ? au.full() : fwd.back(), a, fwd.empty());
            if (s.empty()) continue;
            w.push_back(a);
            fwd.push_back(std::move(s));
            const bool done = dfs(len);
            w.pop_back();
            fwd.pop_back();
            if (done) return true;
        }
        return false;
    };
    for (int len = 1; len <= degree_cap; ++len)
        if (dfs(len)) break;
    r.degree_star = best;
    r.degree_bounded = best > 1;
    return r;
}

int default_n_max(const IMatrix& tx, const IMatrix& ty) {
    const int px = std::max(1, structure_flags(tx).period);
    const int py = std::max(1, structure_flags(ty).period);
    const long long n = static_cast<long long>(std::lcm(px, py)) * std::max(tx.rows(), ty.rows());
    return static_cast<int>(std::clamp<long long>(n, 1, kPeriodicCap));
}

bool entropies_equal(const IMatrix& tx, const IMatrix& ty, double tol) {
    const double hx = topological_entropy(tx), hy = topological_entropy(ty);
    if (std::isinf(hx) || std::isinf(hy)) return std::isinf(hx) && std::isinf(hy);
    if (std::abs(hx - hy) > tol) return false;
    const Poly g = poly_gcd(characteristic_polynomial(tx), characteristic_polynomial(ty));
    if (degree(g) < 1) return false;
    return poly_relative_residual(g, std::exp(hx)) <= 1e-9;
}

bool embedding_condition(const IMatrix& tx, const IMatrix& ty, int n_max) {
    if (entropies_equal(tx, ty)) return false;
    if (!(topological_entropy(tx) < topological_entropy(ty))) return false;
    const auto qx = least_period_counts(tx, n_max);
    const auto qy = least_period_counts(ty, n_max);
    for (int n = 0; n < n_max; ++n)
        if (qx[n] > qy[n]) return false;
    return true;
}

bool factor_periodic_condition(const IMatrix& tx, const IMatrix& ty, int n_max) {
    const auto px = trace_powers(tx, n_max);
    const auto py = trace_powers(ty, n_max);
    for (int n = 1; n <= n_max; ++n) {
        if (px[n - 1] == 0) continue;
        bool found = false;
        for (int m = 1; m <= n && !found; ++m)
            if (n % m == 0 && py[m - 1] > 0) found = true;
        if (!found) return false;
    }
    // beyond n_max: P_n(X) is nonempty for all large multiples of per(X), and
    // P_m(Y) only for multiples of per(Y), so per(Y) must divide per(X)
    const auto fx = structure_flags(tx), fy = structure_flags(ty);
    if (fx.irreducible && fy.irreducible && fx.period % fy.period != 0) return false;
    return true;
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::FSEFiniteToOne: return "FSE-finite-to-one";
        case Relation::InfiniteToOneExists: return "infinite-to-one-exists";
        case Relation::EmbeddingExists: return "embedding-exists";
        case Relation::NoneFound: return "none-found";
    }
    return "none-found";
}

Relation parse_relation(const std::string& s) {
    for (auto r : {Relation::FSEFiniteToOne, Relation::InfiniteToOneExists, Relation::EmbeddingExists,
                   Relation::NoneFound})
        if (s == relation_name(r)) return r;
    throw Error(ErrorKind::Config, "unknown relation: " + s);
}

FactorDecision classify_relation(const Presentation& source, const Presentation& target, int i, int j,
                                 const IMatrix* solution_space) {
    FactorDecision d;
    d.source = i;
    d.target = j;
    const IMatrix& tx = source.incidence;
    const IMatrix& ty = target.incidence;
    d.h_source = topological_entropy(tx);
    d.h_target = topological_entropy(ty);
    d.equal_entropy = entropies_equal(tx, ty);
    d.n_max = default_n_max(tx, ty);
    d.source_periodic = trace_powers(tx, d.n_max);
    d.target_periodic = trace_powers(ty, d.n_max);
    d.source_sync = synchronizing_analysis(source);
    d.target_sync = synchronizing_analysis(target);

    if (d.equal_entropy) {
        d.symbolic = search_factor_like_symbolic(source.symbolic(), target.symbolic());
        if (!d.symbolic) d.incidence = search_factor_like_incidence(tx, ty);
    } else {
        if (d.h_source > d.h_target) {
            d.factor_periodic = factor_periodic_condition(tx, ty, d.n_max);
            d.embedding = embedding_condition(ty, tx, d.n_max);
        } else {
            d.embedding = embedding_condition(tx, ty, d.n_max);
        }
    }

    if (d.symbolic) {
        d.relation = Relation::FSEFiniteToOne;
        d.evidence = "symbolic-intertwiner";
    } else if (d.incidence) {
        d.relation = Relation::FSEFiniteToOne;
        d.evidence = "incidence-intertwiner";
    } else if (d.factor_periodic) {
        d.relation = Relation::InfiniteToOneExists;
        d.evidence = "factor-periodic";
    } else if (d.embedding) {
        d.relation = Relation::EmbeddingExists;
        d.evidence = "embedding";
    } else {
        d.relation = Relation::NoneFound;
        d.evidence = "none";
    }

    if (solution_space) {
        const double hy = topological_entropy(*solution_space);
        const bool same = entropies_equal(tx, *solution_space);
        d.intertwiner_condition = same && search_factor_like_incidence(tx, *solution_space).has_value();
        d.entropy_gap_condition = !same && d.h_source < hy;
    }
    return d;
}

}  // namespace mcnn
