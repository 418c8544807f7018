#include "mcnn/exact.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace mcnn {

BigMatrix to_big(const IMatrix& a) {
    BigMatrix m(a.rows(), std::vector<BigInt>(a.cols()));
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) m[i][j] = a(i, j);
    return m;
}

BigMatrix big_multiply(const BigMatrix& a, const BigMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
    BigMatrix c(n, std::vector<BigInt>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

std::vector<BigInt> trace_powers(const IMatrix& a, int n_max) {
    std::vector<BigInt> out;
    if (n_max < 1) return out;
    const BigMatrix base = to_big(a);
    BigMatrix p = base;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) p = big_multiply(p, base);
        BigInt t = 0;
        for (std::size_t i = 0; i < p.size(); ++i) t += p[i][i];
        out.push_back(t);
    }
    return out;
}

BigInt trace_power(const IMatrix& a, int n) {
    if (n == 0) return a.rows();
    return trace_powers(a, n).back();
}

namespace {
int moebius(int n) {
    int result = 1;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        n /= p;
        if (n % p == 0) return 0;
        result = -result;
    }
    if (n > 1) result = -result;
    return result;
}
}  // namespace

std::vector<BigInt> least_period_counts(const IMatrix& a, int n_max) {
    const auto tr = trace_powers(a, n_max);
    std::vector<BigInt> q(n_max);
    for (int n = 1; n <= n_max; ++n)
        for (int d = 1; d <= n; ++d)
            if (n % d == 0) q[n - 1] += moebius(n / d) * tr[d - 1];
    return q;
}

Poly characteristic_polynomial(const IMatrix& a) {
    const int n = static_cast<int>(a.rows());
    const BigMatrix A = to_big(a);
    // coefficients highest degree first while iterating
    std::vector<BigInt> p{1};
    for (int k = 1; k <= n; ++k) {
        const int m = k - 1;  // size of the leading block A'
        std::vector<BigInt> col(k + 1);
        col[0] = 1;
        col[1] = -A[m][m];
        // v = C, then repeatedly v = A' v; entries -R A'^i C
        std::vector<BigInt> v(m);
        for (int i = 0; i < m; ++i) v[i] = A[i][m];
        for (int t = 2; t <= k; ++t) {
            BigInt s = 0;
            for (int i = 0; i < m; ++i) s += A[m][i] * v[i];
            col[t] = -s;
            std::vector<BigInt> w(m);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) w[i] += A[i][j] * v[j];
            v = std::move(w);
        }
        // Toeplitz (k+1) x k times p
        std::vector<BigInt> next(k + 1);
        for (int i = 0; i <= k; ++i)
            for (int j = 0; j < k && j <= i; ++j) next[i] += col[i - j] * p[j];
        p = std::move(next);
    }
    return Poly(p.rbegin(), p.rend());
}

int degree(const Poly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

namespace {

void normalize(Poly& p) {
    p.resize(degree(p) + 1);
    if (p.empty()) return;
    BigInt g = 0;
    for (const auto& c : p) g = gcd(g, abs(c));
    if (g > 1)
        for (auto& c : p) c /= g;
    if (p.back() < 0)
        for (auto& c : p) c = -c;
}

// pseudo remainder of a by b
Poly prem(Poly a, const Poly& b) {
    const int db = degree(b);
    const BigInt lb = b[db];
    while (degree(a) >= db) {
        const int da = degree(a);
        const BigInt la = a[da];
        for (auto& c : a) c *= lb;
        for (int i = 0; i <= db; ++i) a[da - db + i] -= la * b[i];
        a.resize(da);
    }
    normalize(a);
    return a;
}

}  // namespace

Poly poly_gcd(Poly a, Poly b) {
    normalize(a);
    normalize(b);
    while (!b.empty()) {
        Poly r = prem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

double poly_eval(const Poly& p, double x) {
    double v = 0.0;
    for (int i = degree(p); i >= 0; --i) v = v * x + p[i].convert_to<double>();
    return v;
}

double poly_relative_residual(const Poly& p, double x) {
    double scale = 0.0, pw = 1.0;
    for (int i = 0; i <= degree(p); ++i, pw *= std::abs(x)) scale += std::abs(p[i].convert_to<double>()) * pw;
    return scale > 0 ? std::abs(poly_eval(p, x)) / scale : 0.0;
}

std::string poly_string(const Poly& p) {
    std::ostringstream os;
    bool first = true;
    for (int i = degree(p); i >= 0; --i) {
        if (p[i] == 0) continue;
        BigInt c = p[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        c = abs(c);
        if (c != 1 || i == 0) os << c;
        if (i > 0) os << "x";
        if (i > 1) os << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

}  // namespace mcnn
