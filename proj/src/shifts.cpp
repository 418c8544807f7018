#include "mcnn/shifts.hpp"
#include "mcnn/error.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>

namespace mcnn {

namespace {

int column_index(const LocalPattern& p, int c) {
    // layer l sits on row n - l; layer 1 is the least significant bit
    int idx = 0;
    for (int r = 0; r < p.rows; ++r) idx = 2 * idx + p.bit(r, c);
    return idx;
}

std::string column_label(int idx, int layers) {
    std::string s;
    for (int l = layers; l >= 1; --l) s.push_back(letter_char((idx >> (l - 1)) & 1));
    return s;
}

}  // namespace

int TransitionMatrix::letter(int s, int layer) const {
    const int v = 1 << layers;
    return ((s % v) >> (layer - 1)) & 1;
}

TransitionMatrix build_transition_matrix(const BasicSet& b) {
    if (b.rows < 1 || b.cols < 2) throw Error(ErrorKind::Config, "patterns need at least two columns");
    TransitionMatrix t;
    t.layers = b.rows;
    t.columns = b.cols - 1;
    const int v = 1 << b.rows;
    int n = 1;
    for (int c = 0; c < t.columns; ++c) n *= v;
    if (n > 4096) throw Error(ErrorKind::OracleLimit, "too many transition states");
    t.entries = IMatrix::Zero(n, n);
    for (const auto& p : b.patterns) {
        int from = 0, to = 0;
        for (int c = 0; c + 1 < b.cols; ++c) from = from * v + column_index(p, c);
        for (int c = 1; c < b.cols; ++c) to = to * v + column_index(p, c);
        t.entries(from, to) = 1;
    }
    for (int s = 0; s < n; ++s) {
        std::string label;
        int rest = s;
        std::vector<int> cols(t.columns);
        for (int c = t.columns - 1; c >= 0; --c) {
            cols[c] = rest % v;
            rest /= v;
        }
        for (int c = 0; c < t.columns; ++c) {
            if (c) label.push_back('|');
            label += column_label(cols[c], b.rows);
        }
        t.state_labels.push_back(label);
    }
    if (essential_states(t.entries).empty())
        throw Error(ErrorKind::EmptyShift, "no bi-infinite sequence satisfies the basic set");
    return t;
}

std::vector<int> essential_states(const IMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int s = 0; s < n; ++s) {
            if (!alive[s]) continue;
            bool in = false, out = false;
            for (int u = 0; u < n; ++u) {
                if (!alive[u]) continue;
                in = in || a(u, s) != 0;
                out = out || a(s, u) != 0;
            }
            if (!in || !out) {
                alive[s] = false;
                changed = true;
            }
        }
    }
    std::vector<int> kept;
    for (int s = 0; s < n; ++s)
        if (alive[s]) kept.push_back(s);
    return kept;
}

IMatrix restrict_matrix(const IMatrix& a, const std::vector<int>& states) {
    const int m = static_cast<int>(states.size());
    IMatrix r(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) r(i, j) = a(states[i], states[j]);
    return r;
}

TransitionMatrix trim_essential(const TransitionMatrix& t) {
    const auto kept = essential_states(t.entries);
    if (kept.empty()) throw Error(ErrorKind::EmptyShift, "trimming removes every state");
    TransitionMatrix r = t;
    r.entries = restrict_matrix(t.entries, kept);
    r.state_labels.clear();
    for (int s : kept) r.state_labels.push_back(t.state_labels[s]);
    return r;
}

std::string SymbolicMatrix::entry_string(int p, int q) const {
    const auto& e = at(p, q);
    if (e.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) s.push_back('+');
        s += "a" + std::to_string(e[i]);
    }
    return s;
}

std::vector<std::vector<std::string>> SymbolicMatrix::strings() const {
    std::vector<std::vector<std::string>> rows(n);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) rows[p].push_back(entry_string(p, q));
    return rows;
}

bool SymbolicMatrix::right_resolving() const {
    for (int p = 0; p < n; ++p) {
        std::vector<int> row;
        for (int q = 0; q < n; ++q) row.insert(row.end(), at(p, q).begin(), at(p, q).end());
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end()) return false;
    }
    return true;
}

SymbolicMatrix parse_symbolic(const std::vector<std::vector<std::string>>& rows) {
    SymbolicMatrix s;
    s.n = static_cast<int>(rows.size());
    s.entries.resize(s.n * s.n);
    for (int p = 0; p < s.n; ++p) {
        if (static_cast<int>(rows[p].size()) != s.n) throw Error(ErrorKind::Config, "symbolic matrix not square");
        for (int q = 0; q < s.n; ++q) {
            const auto& txt = rows[p][q];
            if (txt == "0" || txt.empty()) continue;
            std::stringstream ss(txt);
            std::string tok;
            while (std::getline(ss, tok, '+')) {
                if (tok.size() < 2 || tok[0] != 'a') throw Error(ErrorKind::Config, "bad symbol '" + tok + "'");
                s.at(p, q).push_back(std::stoi(tok.substr(1)));
            }
            std::sort(s.at(p, q).begin(), s.at(p, q).end());
        }
    }
    return s;
}

SymbolicMatrix Presentation::symbolic() const {
    SymbolicMatrix s;
    s.n = size();
    s.entries.resize(s.n * s.n);
    for (const auto& e : edges) s.at(e.src, e.dst).push_back(e.alpha);
    for (auto& v : s.entries) std::sort(v.begin(), v.end());
    return s;
}

bool Presentation::is_deterministic() const {
    std::vector<int> seen(2 * size(), 0);
    for (const auto& e : edges)
        if (++seen[2 * e.src + e.letter] > 1) return false;
    return true;
}

int Presentation::successor(int s, int letter) const {
    for (const auto& e : edges)
        if (e.src == s && e.letter == letter) return e.dst;
    return -1;
}

Presentation layer_labeled_graph(const TransitionMatrix& t, int layer) {
    if (layer < 1 || layer > t.layers) throw Error(ErrorKind::Config, "layer index out of range");
    Presentation g;
    g.incidence = t.entries;
    g.layer = layer;
    g.state_labels = t.state_labels;
    for (int s = 0; s < t.size(); ++s) {
        g.state_letter.push_back(t.letter(s, layer));
        g.members.push_back({s});
    }
    for (int p = 0; p < t.size(); ++p)
        for (int q = 0; q < t.size(); ++q)
            if (t.entries(p, q))
                g.edges.push_back({p, q, 2 * t.letter(p, layer) + t.letter(q, layer), t.letter(q, layer)});
    return g;
}

Presentation vertex_presentation(const IMatrix& a, const std::vector<int>& letters) {
    Presentation g;
    g.incidence = a;
    g.state_letter = letters;
    for (int s = 0; s < a.rows(); ++s) {
        g.members.push_back({s});
        g.state_labels.push_back(std::to_string(s));
    }
    for (int p = 0; p < a.rows(); ++p)
        for (int q = 0; q < a.cols(); ++q)
            if (a(p, q)) g.edges.push_back({p, q, 2 * letters[p] + letters[q], letters[q]});
    return g;
}

namespace {

using Subset = std::vector<int>;

Subset step(const Presentation& g, const Subset& s, int letter,
            const std::vector<std::vector<Edge>>& out) {
    std::vector<bool> hit(g.size(), false);
    for (int u : s)
        for (const auto& e : out[u])
            if (e.letter == letter) hit[e.dst] = true;
    Subset r;
    for (int v = 0; v < g.size(); ++v)
        if (hit[v]) r.push_back(v);
    return r;
}

std::vector<std::vector<Edge>> out_edges(const Presentation& g) {
    std::vector<std::vector<Edge>> out(g.size());
    for (const auto& e : g.edges) out[e.src].push_back(e);
    return out;
}

}  // namespace

Presentation essential_part(const Presentation& g) {
    const auto kept = essential_states(g.incidence);
    std::vector<int> index(g.size(), -1);
    for (std::size_t i = 0; i < kept.size(); ++i) index[kept[i]] = static_cast<int>(i);
    Presentation r;
    r.incidence = restrict_matrix(g.incidence, kept);
    r.layer = g.layer;
    r.determinized = g.determinized;
    for (int s : kept) {
        r.state_letter.push_back(g.state_letter[s]);
        r.members.push_back(g.members.empty() ? std::vector<int>{s} : g.members[s]);
        r.state_labels.push_back(g.state_labels.empty() ? std::to_string(s) : g.state_labels[s]);
    }
    for (const auto& e : g.edges)
        if (index[e.src] >= 0 && index[e.dst] >= 0)
            r.edges.push_back({index[e.src], index[e.dst], e.alpha, e.letter});
    return r;
}

Presentation subset_construction(const Presentation& g) {
    const auto out = out_edges(g);
    Subset full(g.size());
    std::iota(full.begin(), full.end(), 0);

    std::map<Subset, int> id;
    std::vector<Subset> subsets;
    struct Arc {
        int src, dst, letter;
    };
    std::vector<Arc> arcs;
    std::queue<int> todo;
    id[full] = 0;
    subsets.push_back(full);
    todo.push(0);
    while (!todo.empty()) {
        const int cur = todo.front();
        todo.pop();
        for (int a = 0; a < 2; ++a) {
            Subset nxt = step(g, subsets[cur], a, out);
            if (nxt.empty()) continue;
            auto [it, fresh] = id.emplace(nxt, static_cast<int>(subsets.size()));
            if (fresh) {
                subsets.push_back(nxt);
                todo.push(it->second);
            }
            arcs.push_back({cur, it->second, a});
        }
    }

    const int n = static_cast<int>(subsets.size());
    IMatrix adj = IMatrix::Zero(n, n);
    for (const auto& a : arcs) adj(a.src, a.dst) = 1;
    auto kept = essential_states(adj);
    std::sort(kept.begin(), kept.end(), [&](int x, int y) {
        if (subsets[x].size() != subsets[y].size()) return subsets[x].size() < subsets[y].size();
        return subsets[x] < subsets[y];
    });
    std::vector<int> index(n, -1);
    for (std::size_t i = 0; i < kept.size(); ++i) index[kept[i]] = static_cast<int>(i);

    Presentation c;
    const int m = static_cast<int>(kept.size());
    c.incidence = IMatrix::Zero(m, m);
    c.layer = g.layer;
    c.determinized = true;
    for (int k : kept) {
        const auto& s = subsets[k];
        int letter = g.state_letter[s.front()];
        for (int u : s)
            if (g.state_letter[u] != letter) letter = -1;
        c.state_letter.push_back(letter);
        Subset mem;
        std::string label = "{";
        for (std::size_t i = 0; i < s.size(); ++i) {
            const auto& gm = g.members.empty() ? Subset{s[i]} : g.members[s[i]];
            mem.insert(mem.end(), gm.begin(), gm.end());
            if (i) label.push_back(',');
            label += g.state_labels.empty() ? std::to_string(s[i]) : g.state_labels[s[i]];
        }
        std::sort(mem.begin(), mem.end());
        mem.erase(std::unique(mem.begin(), mem.end()), mem.end());
        c.members.push_back(mem);
        c.state_labels.push_back(label + "}");
    }
    for (const auto& a : arcs) {
        const int p = index[a.src], q = index[a.dst];
        if (p < 0 || q < 0) continue;
        c.incidence(p, q) = 1;
        const int lp = c.state_letter[p] < 0 ? 0 : c.state_letter[p];
        c.edges.push_back({p, q, 2 * lp + a.letter, a.letter});
    }
    std::sort(c.edges.begin(), c.edges.end(), [](const Edge& x, const Edge& y) {
        return std::tie(x.src, x.dst) < std::tie(y.src, y.dst);
    });
    if (m == 0) throw Error(ErrorKind::EmptyShift, "cover is empty after trimming");
    return c;
}

Presentation layer_cover(const TransitionMatrix& t, int layer) {
    return subset_construction(layer_labeled_graph(t, layer));
}

WordCount count_words(const Presentation& p, int k, int k_oracle) {
    if (k > k_oracle)
        throw Error(ErrorKind::OracleLimit, "word length " + std::to_string(k) + " exceeds oracle limit");
    const Presentation e = essential_part(p);
    WordCount wc{k, 0};
    if (e.size() == 0) return wc;
    const auto out = out_edges(e);
    Subset full(e.size());
    std::iota(full.begin(), full.end(), 0);
    std::map<Subset, BigInt> layer{{full, 1}};
    for (int i = 0; i < k; ++i) {
        std::map<Subset, BigInt> next;
        for (const auto& [s, c] : layer)
            for (int a = 0; a < 2; ++a) {
                Subset t = step(e, s, a, out);
                if (!t.empty()) next[t] += c;
            }
        layer = std::move(next);
    }
    for (const auto& [s, c] : layer) wc.count += c;
    return wc;
}

std::vector<std::vector<int>> enumerate_words(const Presentation& p, int k, int k_oracle) {
    if (k > k_oracle)
        throw Error(ErrorKind::OracleLimit, "word length " + std::to_string(k) + " exceeds oracle limit");
    const Presentation e = essential_part(p);
    std::vector<std::vector<int>> words;
    if (e.size() == 0) return words;
    const auto out = out_edges(e);
    Subset full(e.size());
    std::iota(full.begin(), full.end(), 0);
    std::vector<int> w;
    std::function<void(const Subset&)> dfs = [&](const Subset& s) {
        if (static_cast<int>(w.size()) == k) {
            words.push_back(w);
            return;
        }
        for (int a = 0; a < 2; ++a) {
            Subset t = step(e, s, a, out);
            if (t.empty()) continue;
            w.push_back(a);
            dfs(t);
            w.pop_back();
        }
    };
    dfs(full);
    return words;
}

BigInt periodic_counts(const IMatrix& t, int n) {
    if (n < 1 || n > 30) throw Error(ErrorKind::OracleLimit, "period must lie in 1..30");
    return trace_power(t, n);
}

std::vector<std::vector<int>> strongly_connected_components(const IMatrix& a) {
    const int n = static_cast<int>(a.rows());
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<bool> on(n, false);
    std::vector<std::vector<int>> comps;
    int counter = 0;
    std::function<void(int)> visit = [&](int v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        on[v] = true;
        for (int w = 0; w < n; ++w) {
            if (!a(v, w)) continue;
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (on[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::vector<int> c;
            int w;
            do {
                w = stack.back();
                stack.pop_back();
                on[w] = false;
                c.push_back(w);
            } while (w != v);
            std::sort(c.begin(), c.end());
            comps.push_back(std::move(c));
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);
    std::sort(comps.begin(), comps.end());
    return comps;
}

int graph_period(const IMatrix& t) {
    const int n = static_cast<int>(t.rows());
    if (n == 0) return 0;
    std::vector<int> level(n, -1);
    std::queue<int> q;
    level[0] = 0;
    q.push(0);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int v = 0; v < n; ++v)
            if (t(u, v) && level[v] < 0) {
                level[v] = level[u] + 1;
                q.push(v);
            }
    }
    int g = 0;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            if (t(u, v) && level[u] >= 0 && level[v] >= 0) g = std::gcd(g, std::abs(level[u] + 1 - level[v]));
    return g;
}

StructureFlags structure_flags(const IMatrix& t) {
    StructureFlags f;
    const int n = static_cast<int>(t.rows());
    if (n == 0) return f;
    const auto comps = strongly_connected_components(t);
    f.irreducible = comps.size() == 1 && (n > 1 || t(0, 0) != 0);
    if (!f.irreducible) return f;
    f.period = graph_period(t);
    f.mixing = f.period == 1;
    return f;
}

std::string matrix_dump(const IMatrix& a) {
    std::ostringstream os;
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) os << (j ? " " : "") << a(i, j);
        os << '\n';
    }
    return os.str();
}

std::string graph_description(const Presentation& p) {
    std::ostringstream os;
    os << "states " << p.size() << '\n';
    for (int s = 0; s < p.size(); ++s) {
        os << "state " << s << ' ' << (p.state_labels.empty() ? std::to_string(s) : p.state_labels[s]);
        if (p.state_letter[s] >= 0) os << " letter " << letter_char(p.state_letter[s]);
        os << '\n';
    }
    for (const auto& e : p.edges)
        os << "edge " << e.src << ' ' << e.dst << " a" << e.alpha << ' ' << letter_char(e.letter) << '\n';
    return os.str();
}

}  // namespace mcnn
