#include "mcnn/measures.hpp"

#include "mcnn/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>

namespace mcnn {

LinearRepresentation pushforward_representation(const IMatrix& support, const OneBlockMap& phi,
                                                const MarkovMeasure<double>& mu) {
    const auto n = support.rows();
    if (phi.size() != n) throw Error(ErrorKind::SupportMismatch, "map size differs from the state count");
    if (mu.kernel.rows() != n || mu.kernel.cols() != n || mu.stationary.size() != n)
        throw Error(ErrorKind::SupportMismatch, "measure size differs from the state count");
    for (int s = 0; s < n; ++s)
        if (phi(s) < 0 || phi(s) >= phi.target_size) throw Error(ErrorKind::SupportMismatch, "map is not total");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (mu.kernel(i, j) != 0.0 && support(i, j) == 0)
                throw Error(ErrorKind::SupportMismatch, "measure charges a forbidden transition");

    LinearRepresentation rep;
    rep.x = mu.stationary;
    rep.y = DVec::Ones(n);
    for (int a = 0; a < phi.target_size; ++a) {
        DMatrix q = mu.kernel;
        for (int j = 0; j < n; ++j)
            if (phi(j) != a) q.col(j).setZero();
        rep.kernels.push_back(std::move(q));
    }
    return rep;
}

double cylinder_probability(const LinearRepresentation& rep, const std::vector<int>& word) {
    DRowVec v = rep.x;
    for (int a : word) {
        if (a < 0 || a >= static_cast<int>(rep.kernels.size())) return 0.0;
        v = v * rep.kernels[a];
    }
    return v * rep.y;
}

IMatrix BlockFamily::masked(int j1, int j2) const {
    IMatrix b = block(j1, j2);
    for (int p = 0; p < width; ++p) {
        if (p < static_cast<int>(fibers[j1].size()) && !essential[fibers[j1][p]]) b.row(p).setZero();
        if (p < static_cast<int>(fibers[j2].size()) && !essential[fibers[j2][p]]) b.col(p).setZero();
    }
    return b;
}

BlockFamily build_block_family(const OneBlockMap& phi, const IMatrix& tx) {
    if (phi.size() != tx.rows()) throw Error(ErrorKind::SupportMismatch, "map size differs from the state count");
    BlockFamily f;
    f.symbols = phi.target_size;
    f.source = tx;
    f.fibers.resize(f.symbols);
    for (int s = 0; s < phi.size(); ++s) {
        if (phi(s) < 0 || phi(s) >= f.symbols) throw Error(ErrorKind::SupportMismatch, "map is not total");
        f.fibers[phi(s)].push_back(s);
    }
    for (const auto& e : f.fibers) f.width = std::max(f.width, static_cast<int>(e.size()));
    // pseudo vertices: zero rows/columns at the tail of each fiber
    for (int j1 = 0; j1 < f.symbols; ++j1)
        for (int j2 = 0; j2 < f.symbols; ++j2) {
            IMatrix b = IMatrix::Zero(f.width, f.width);
            for (std::size_t p = 0; p < f.fibers[j1].size(); ++p)
                for (std::size_t q = 0; q < f.fibers[j2].size(); ++q)
                    b(static_cast<int>(p), static_cast<int>(q)) = tx(f.fibers[j1][p], f.fibers[j2][q]) ? 1 : 0;
            f.blocks.push_back(std::move(b));
        }
    const auto ess = essential_states(tx);
    f.essential.assign(tx.rows(), false);
    for (int s : ess) f.essential[s] = true;
    return f;
}

namespace {

using Word = std::vector<int>;

// images of essential source paths with `len` states
std::set<Word> target_words(const BlockFamily& n, const std::vector<int>& phi, int len) {
    std::set<Word> out;
    const int states = static_cast<int>(n.source.rows());
    Word w;
    std::function<void(int)> go = [&](int s) {
        w.push_back(phi[s]);
        if (static_cast<int>(w.size()) == len) {
            out.insert(w);
        } else {
            for (int t = 0; t < states; ++t)
                if (n.essential[t] && n.source(s, t)) go(t);
        }
        w.pop_back();
    };
    for (int s = 0; s < states; ++s)
        if (n.essential[s]) go(s);
    return out;
}

DRowVec first_nonzero_normalized(DRowVec v, double eps) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) > eps) return v / v(i);
    return v;
}

// left eigenvector for the eigenvalue of largest real part
std::optional<DRowVec> left_perron(const DMatrix& p, double eps) {
    Eigen::EigenSolver<DMatrix> es(p.transpose());
    const auto vals = es.eigenvalues();
    Eigen::Index best = 0;
    for (Eigen::Index i = 1; i < vals.size(); ++i)
        if (vals(i).real() > vals(best).real() + eps) best = i;
    if (vals(best).real() <= eps) return std::nullopt;
    DRowVec v = es.eigenvectors().col(best).real().transpose();
    if (v.cwiseAbs().maxCoeff() <= eps) return std::nullopt;
    v /= v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) < eps) v(i) = 0.0;
    return first_nonzero_normalized(v, eps);
}

// u = m v; returns m, or nothing when u is not a multiple of v
std::optional<double> proportion(const DRowVec& u, const DRowVec& v, double eps) {
    const double vv = v.squaredNorm();
    if (vv == 0.0) return std::nullopt;
    const double m = u.dot(v) / vv;
    const double scale = std::max({1.0, u.cwiseAbs().maxCoeff(), std::abs(m) * v.cwiseAbs().maxCoeff()});
    if ((u - m * v).cwiseAbs().maxCoeff() > eps * scale) return std::nullopt;
    return m;
}

std::optional<MarkovCertificate> try_order(const BlockFamily& n, const std::vector<int>& phi, int k, double eps) {
    const auto kw = target_words(n, phi, k);
    const auto kw1 = target_words(n, phi, k + 1);
    if (kw.empty()) return std::nullopt;
    std::vector<Word> words(kw.begin(), kw.end());
    std::map<Word, int> index;
    for (std::size_t i = 0; i < words.size(); ++i) index[words[i]] = static_cast<int>(i);
    const int w = static_cast<int>(words.size());

    struct Arc {
        int src, dst;
    };
    std::vector<Arc> arcs;
    IMatrix adj = IMatrix::Zero(w, w);
    std::vector<std::vector<int>> out(w);
    for (const auto& big : kw1) {
        const int a = index.at(Word(big.begin(), big.end() - 1));
        const int b = index.at(Word(big.begin() + 1, big.end()));
        arcs.push_back({a, b});
        adj(a, b) = 1;
        out[a].push_back(b);
    }

    std::vector<DMatrix> blk(n.symbols * n.symbols);
    for (int j1 = 0; j1 < n.symbols; ++j1)
        for (int j2 = 0; j2 < n.symbols; ++j2) blk[j1 * n.symbols + j2] = n.masked(j1, j2).cast<double>();
    auto step = [&](int a, int b) -> const DMatrix& { return blk[words[a].back() * n.symbols + words[b].back()]; };

    // seed one word per cyclic component from the Perron ray of its cycle product
    std::vector<std::optional<DRowVec>> ray(w);
    auto comps = strongly_connected_components(adj);
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end());
    std::queue<int> todo;
    for (const auto& c : comps) {
        const int j0 = c.front();
        // shortest cycle through j0 by BFS
        std::vector<int> parent(w, -1);
        std::queue<int> q;
        q.push(j0);
        int last = -1;
        while (!q.empty() && last < 0) {
            const int u = q.front();
            q.pop();
            for (int v : out[u]) {
                if (v == j0) {
                    last = u;
                    break;
                }
                if (parent[v] < 0) {
                    parent[v] = u;
                    q.push(v);
                }
            }
        }
        if (last < 0) continue;  // transient word, filled by propagation
        std::vector<int> cyc{j0};
        for (int u = last; u != j0; u = parent[u]) cyc.push_back(u);
        std::reverse(cyc.begin() + 1, cyc.end());
        cyc.push_back(j0);
        DMatrix prod = DMatrix::Identity(n.width, n.width);
        for (std::size_t t = 0; t + 1 < cyc.size(); ++t) prod = prod * step(cyc[t], cyc[t + 1]);
        auto seed = left_perron(prod, eps);
        if (!seed) return std::nullopt;
        ray[j0] = *seed;
        todo.push(j0);
    }
    while (!todo.empty()) {
        const int u = todo.front();
        todo.pop();
        for (int v : out[u]) {
            if (ray[v]) continue;
            DRowVec r = *ray[u] * step(u, v);
            if (r.cwiseAbs().maxCoeff() <= eps) return std::nullopt;
            ray[v] = first_nonzero_normalized(r, eps);
            todo.push(v);
        }
    }
    for (const auto& r : ray)
        if (!r) return std::nullopt;

    // verify every constraint
    for (const auto& a : arcs) {
        const DRowVec u = *ray[a.src] * step(a.src, a.dst);
        if (u.cwiseAbs().maxCoeff() <= eps) return std::nullopt;
        auto m = proportion(u, *ray[a.dst], eps);
        if (!m || *m <= 0.0) return std::nullopt;
    }

    MarkovCertificate c;
    c.order = k;
    c.words = words;
    for (const auto& r : ray) c.rays.push_back(*r);

    // canonical scale: V_J = l|_{j0} N ... N with l the source's left Perron vector
    std::vector<int> ess;
    for (int s = 0; s < n.source.rows(); ++s)
        if (n.essential[s]) ess.push_back(s);
    const IMatrix core = restrict_matrix(n.source, ess);
    if (!ess.empty() && structure_flags(core).irreducible) {
        const auto pd = perron<double>(core.cast<double>());
        DRowVec l = DRowVec::Zero(n.source.rows());
        for (std::size_t i = 0; i < ess.size(); ++i) l(ess[i]) = pd.left(static_cast<Eigen::Index>(i));
        std::vector<DRowVec> canon;
        for (int j = 0; j < w; ++j) {
            const auto& word = words[j];
            DRowVec v = DRowVec::Zero(n.width);
            for (std::size_t p = 0; p < n.fibers[word[0]].size(); ++p) v(static_cast<Eigen::Index>(p)) = l(n.fibers[word[0]][p]);
            for (int t = 0; t + 1 < k; ++t) v = v * blk[word[t] * n.symbols + word[t + 1]];
            if (!proportion(v, c.rays[j], eps) || v.cwiseAbs().maxCoeff() <= eps) break;
            canon.push_back(v);
        }
        if (static_cast<int>(canon.size()) == w) {
            c.rays = canon;
            c.canonical = true;
        }
    }
    double lead = 0.0;
    for (Eigen::Index i = 0; i < c.rays[0].size() && lead == 0.0; ++i)
        if (std::abs(c.rays[0](i)) > eps) lead = c.rays[0](i);
    for (auto& r : c.rays) r /= lead;

    c.kernel = DMatrix::Zero(w, w);
    for (const auto& a : arcs) {
        const DRowVec u = c.rays[a.src] * step(a.src, a.dst);
        auto m = proportion(u, c.rays[a.dst], eps);
        if (!m) return std::nullopt;
        c.kernel(a.src, a.dst) = *m;
    }
    if (!structure_flags(support(c.kernel)).irreducible) return std::nullopt;
    c.rho = perron<double>(c.kernel).rho;
    return c;
}

}  // namespace

std::optional<MarkovCertificate> check_markov_condition(const BlockFamily& n, int k_max, double eps) {
    if (k_max < 1) throw Error(ErrorKind::Config, "k_max must be at least 1");
    std::vector<int> phi(n.source.rows(), -1);
    for (int j = 0; j < n.symbols; ++j)
        for (int s : n.fibers[j]) phi[s] = j;
    for (int k = 1; k <= k_max; ++k)
        if (auto c = try_order(n, phi, k, eps)) return c;
    return std::nullopt;
}

MarkovMeasure<double> measure_from_certificate(const MarkovCertificate& c) {
    return maximal_measure_of<double>(c.kernel);
}

double certificate_cylinder(const MarkovCertificate& c, const MarkovMeasure<double>& m, const std::vector<int>& word) {
    const int k = c.order;
    const int w = static_cast<int>(c.words.size());
    if (static_cast<int>(word.size()) < k) {
        double s = 0.0;
        for (int j = 0; j < w; ++j)
            if (std::equal(word.begin(), word.end(), c.words[j].begin())) s += m.stationary(j);
        return s;
    }
    auto find = [&](std::size_t at) {
        const Word j(word.begin() + static_cast<long>(at), word.begin() + static_cast<long>(at) + k);
        const auto it = std::lower_bound(c.words.begin(), c.words.end(), j);
        return (it != c.words.end() && *it == j) ? static_cast<int>(it - c.words.begin()) : -1;
    };
    int cur = find(0);
    if (cur < 0) return 0.0;
    double p = m.stationary(cur);
    for (std::size_t t = 1; t + k <= word.size(); ++t) {
        const int nxt = find(t);
        if (nxt < 0) return 0.0;
        p *= m.kernel(cur, nxt);
        cur = nxt;
    }
    return p;
}

UniformityReport uniform_factor_test(const MarkovCertificate& c, double rho_source, double rho_target, double tol) {
    UniformityReport r;
    r.rho_m = c.rho;
    r.rho_source = rho_source;
    r.rho_target = rho_target;
    r.ratio_target_source = rho_target / rho_source;
    r.ratio_source_target = rho_source / rho_target;
    r.spectral_match = std::abs(r.rho_m - r.ratio_target_source) <= tol;
    r.measure_entropy = markov_entropy(measure_from_certificate(c));
    r.target_entropy = std::log(rho_target);
    r.uniform = std::abs(r.measure_entropy - r.target_entropy) <= tol;
    return r;
}

}  // namespace mcnn
