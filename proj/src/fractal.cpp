#include "mcnn/fractal.hpp"

#include "mcnn/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

namespace mcnn {

Rect expansion_rectangle(const std::vector<int>& block, int m) {
    if (block.size() % 2 == 0) throw Error(ErrorKind::Config, "central block must have odd length");
    if (m < 2) throw Error(ErrorKind::Config, "digit base must be at least 2");
    const int n = static_cast<int>(block.size()) / 2;
    double x = 0, y = 0, w = 1;
    for (int k = 0; k <= n; ++k) {
        w /= m;
        x += block[n + k] * w;
        y += block[n - k] * w;
    }
    return {x, y, x + w, y + w};
}

int FractalSpec::base() const {
    if (mode == FractalMode::States) return std::max(2, presentation.size());
    return 1 + *std::max_element(symbol_index.begin(), symbol_index.end());
}

namespace {

using Subset = std::vector<int>;

long long saturate(long long a, long long b, long long cap) { return std::min(cap, a + b); }

struct LetterWalk {
    const Presentation& p;
    std::vector<Subset> first;
    std::vector<std::vector<std::vector<int>>> next;

    explicit LetterWalk(const Presentation& g) : p(g), first(2), next(g.size(), std::vector<std::vector<int>>(2)) {
        for (const auto& e : g.edges) next[e.src][e.letter].push_back(e.dst);
        for (int s = 0; s < g.size(); ++s)
            if (g.state_letter[s] >= 0) first[g.state_letter[s]].push_back(s);
    }

    Subset step(const Subset& s, int a) const {
        std::vector<bool> hit(p.size(), false);
        for (int u : s)
            for (int v : next[u][a]) hit[v] = true;
        Subset r;
        for (int v = 0; v < p.size(); ++v)
            if (hit[v]) r.push_back(v);
        return r;
    }
};

Presentation prepared(const FractalSpec& spec) {
    if (spec.depth < 1) throw Error(ErrorKind::Config, "depth must be at least 1");
    Presentation p = essential_part(spec.presentation);
    if (spec.mode == FractalMode::Letters) {
        if (spec.symbol_index.size() != 2) throw Error(ErrorKind::Config, "symbol index needs two digits");
        for (int l : p.state_letter)
            if (l < 0) throw Error(ErrorKind::Config, "letter mode needs letters on states");
    }
    return p;
}

}  // namespace

long long count_blocks(const FractalSpec& spec) {
    const Presentation p = prepared(spec);
    const int len = 2 * spec.depth + 1;
    const long long cap = spec.budget + 1;
    if (p.size() == 0) return 0;
    if (spec.mode == FractalMode::States) {
        std::vector<long long> ways(p.size(), 1);
        for (int step = 1; step < len; ++step) {
            std::vector<long long> nxt(p.size(), 0);
            for (int s = 0; s < p.size(); ++s)
                for (int t = 0; t < p.size(); ++t)
                    if (p.incidence(s, t)) nxt[t] = saturate(nxt[t], ways[s], cap);
            ways = std::move(nxt);
        }
        long long total = 0;
        for (long long w : ways) total = saturate(total, w, cap);
        return total;
    }
    const LetterWalk walk(p);
    std::map<Subset, long long> level;
    for (int a = 0; a < 2; ++a)
        if (!walk.first[a].empty()) level[walk.first[a]] += 1;
    for (int step = 1; step < len; ++step) {
        std::map<Subset, long long> nxt;
        for (const auto& [s, c] : level)
            for (int a = 0; a < 2; ++a) {
                Subset t = walk.step(s, a);
                if (!t.empty()) nxt[t] = saturate(nxt[t], c, cap);
            }
        level = std::move(nxt);
    }
    long long total = 0;
    for (const auto& [s, c] : level) total = saturate(total, c, cap);
    return total;
}

std::vector<std::vector<int>> central_blocks(const FractalSpec& spec) {
    const long long count = count_blocks(spec);
    if (count > spec.budget)
        throw Error(ErrorKind::DepthLimit, "more than " + std::to_string(spec.budget) + " central blocks at depth " +
                                               std::to_string(spec.depth));
    const Presentation p = prepared(spec);
    const int n = spec.depth;
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(count));
    if (p.size() == 0) return out;

    if (spec.mode == FractalMode::States) {
        // backward paths of length n into the center times forward paths out of it
        std::vector<std::vector<int>> pred(p.size()), succ(p.size());
        for (int s = 0; s < p.size(); ++s)
            for (int t = 0; t < p.size(); ++t)
                if (p.incidence(s, t)) {
                    succ[s].push_back(t);
                    pred[t].push_back(s);
                }
        for (int c = 0; c < p.size(); ++c) {
            std::vector<std::vector<int>> back, fwd;
            std::vector<int> path;
            std::function<void(int, const std::vector<std::vector<int>>&, std::vector<std::vector<int>>&)> walk =
                [&](int s, const std::vector<std::vector<int>>& adj, std::vector<std::vector<int>>& sink) {
                    if (static_cast<int>(path.size()) == n) {
                        sink.push_back(path);
                        return;
                    }
                    for (int t : adj[s]) {
                        path.push_back(t);
                        walk(t, adj, sink);
                        path.pop_back();
                    }
                };
            walk(c, pred, back);
            walk(c, succ, fwd);
            for (const auto& b : back)
                for (const auto& f : fwd) {
                    std::vector<int> block(b.rbegin(), b.rend());
                    block.push_back(c);
                    block.insert(block.end(), f.begin(), f.end());
                    out.push_back(std::move(block));
                }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    const LetterWalk walk(p);
    const int len = 2 * n + 1;
    std::vector<int> word;
    std::function<void(const Subset&)> go = [&](const Subset& s) {
        if (static_cast<int>(word.size()) == len) {
            std::vector<int> digits;
            for (int a : word) digits.push_back(spec.symbol_index[a]);
            out.push_back(std::move(digits));
            return;
        }
        for (int a = 0; a < 2; ++a) {
            Subset t = word.empty() ? walk.first[a] : walk.step(s, a);
            if (t.empty()) continue;
            word.push_back(a);
            go(t);
            word.pop_back();
        }
    };
    go({});
    std::sort(out.begin(), out.end());
    return out;
}

FractalImage render(const FractalSpec& spec) {
    if (spec.resolution < 1) throw Error(ErrorKind::Config, "resolution must be positive");
    FractalImage img;
    img.base = spec.base();
    const auto blocks = central_blocks(spec);
    img.blocks = static_cast<long long>(blocks.size());
    const int r = spec.resolution;
    img.raster.width = r;
    img.raster.height = r;
    img.raster.pixels.assign(static_cast<std::size_t>(r) * r, 255);
    std::string digits;
    if (spec.mode == FractalMode::Letters)
        digits = std::string("-:") + std::to_string(spec.symbol_index[0]) + " +:" + std::to_string(spec.symbol_index[1]);
    else
        digits = "state order";
    img.raster.comment = "base " + std::to_string(img.base) + " depth " + std::to_string(spec.depth) + " digits " + digits;

    // coverage rounding, at least one pixel per rectangle
    auto span = [r](double a, double b) {
        int lo = static_cast<int>(std::lround(a * r));
        int hi = static_cast<int>(std::lround(b * r));
        lo = std::clamp(lo, 0, r - 1);
        hi = std::clamp(hi, lo + 1, r);
        return std::pair{lo, hi};
    };
    for (const auto& b : blocks) {
        const Rect q = expansion_rectangle(b, img.base);
        img.rects.push_back(q);
        const auto [c0, c1] = span(q.x0, q.x1);
        const auto [r0, r1] = span(1.0 - q.y1, 1.0 - q.y0);
        for (int y = r0; y < r1; ++y)
            for (int x = c0; x < c1; ++x) img.raster.pixels[static_cast<std::size_t>(y) * r + x] = 0;
    }
    return img;
}

void write_pgm(std::ostream& os, const Raster& r) {
    os << "P5\n";
    if (!r.comment.empty()) os << "# " << r.comment << "\n";
    os << r.width << " " << r.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(r.pixels.data()), static_cast<std::streamsize>(r.pixels.size()));
}

void write_rectangles(std::ostream& os, const std::vector<Rect>& rects) {
    char buf[128];
    for (const auto& q : rects) {
        std::snprintf(buf, sizeof buf, "%.12g %.12g %.12g %.12g\n", q.x0, q.y0, q.x1, q.y1);
        os << buf;
    }
}

}  // namespace mcnn
