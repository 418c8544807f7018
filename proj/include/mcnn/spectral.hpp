#pragma once

#include "mcnn/error.hpp"
#include "mcnn/shifts.hpp"
#include "mcnn/types.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace mcnn {

inline constexpr double kSpectralTol = 1e-12;
inline constexpr int kMaxPowerIterations = 100000;

// MCNN_TOLERANCE overrides the default when set to a positive number
double spectral_tolerance();

template <class Scalar>
struct PerronData {
    Scalar rho{};
    Vec<Scalar> right;     // B r = rho r
    RowVec<Scalar> left;   // l B = rho l, sum l = 1, l r = 1
    int iterations = 0;
};

enum class Side { Right, Left };

template <class Scalar>
struct MarkovMeasure {
    RowVec<Scalar> stationary;
    Mat<Scalar> kernel;
    Side side = Side::Right;
};

struct DimensionResult {
    double entropy = 0.0;
    int alphabet_size = 2;
    double dimension = 0.0;
};

template <class Scalar>
IMatrix support(const Mat<Scalar>& b) {
    return (b.array() != Scalar(0)).template cast<int>();
}

namespace detail {

// Dominant eigenvector of a nonnegative irreducible matrix by power iteration
// on B + I, which has a strictly dominant eigenvalue even for periodic B.
template <class Scalar>
Vec<Scalar> perron_right(const Mat<Scalar>& b, Scalar eps, int max_iter, int& iters) {
    const auto n = b.rows();
    const Mat<Scalar> shifted = b + Mat<Scalar>::Identity(n, n);
    Vec<Scalar> x = Vec<Scalar>::Ones(n) / Scalar(n);
    for (iters = 1; iters <= max_iter; ++iters) {
        Vec<Scalar> y = shifted * x;
        y /= y.sum();
        const Scalar diff = (y - x).cwiseAbs().sum();
        x = std::move(y);
        if (diff <= eps) return x;
    }
    throw Error(ErrorKind::NoConvergence, "power iteration did not reach the tolerance");
}

// Two steps of shifted inverse iteration just above rho; removes the slow
// tail left by the power iteration's stopping rule.
template <class Scalar>
Vec<Scalar> polish(const Mat<Scalar>& b, Vec<Scalar> x, Scalar rho) {
    const auto n = b.rows();
    const Scalar shift = rho * (Scalar(1) + std::sqrt(std::numeric_limits<Scalar>::epsilon()));
    const auto qr = (b - shift * Mat<Scalar>::Identity(n, n)).colPivHouseholderQr();
    for (int step = 0; step < 2; ++step) {
        Vec<Scalar> y = qr.solve(x);
        const Scalar s = y.sum();
        if (!std::isfinite(static_cast<double>(s)) || s == Scalar(0)) break;
        y /= s;
        if ((y.array() < Scalar(0)).any() || !y.allFinite()) break;
        x = std::move(y);
    }
    return x;
}

}  // namespace detail

template <class Scalar>
PerronData<Scalar> perron(const Mat<Scalar>& b, Scalar eps = Scalar(kSpectralTol),
                          int max_iter = kMaxPowerIterations) {
    if (b.rows() != b.cols() || b.rows() == 0) throw Error(ErrorKind::NotIrreducible, "matrix is empty or not square");
    if ((b.array() < Scalar(0)).any()) throw Error(ErrorKind::NotIrreducible, "matrix has negative entries");
    if (!structure_flags(support(b)).irreducible) throw Error(ErrorKind::NotIrreducible, "matrix is reducible");

    PerronData<Scalar> d;
    int it_r = 0, it_l = 0;
    d.right = detail::perron_right<Scalar>(b, eps, max_iter, it_r);
    const Mat<Scalar> bt = b.transpose();
    d.left = detail::perron_right<Scalar>(bt, eps, max_iter, it_l).transpose();
    d.iterations = std::max(it_r, it_l);
    d.rho = (d.left * b * d.right).value() / (d.left * d.right).value();
    d.right = detail::polish<Scalar>(b, d.right, d.rho);
    d.left = detail::polish<Scalar>(bt, Vec<Scalar>(d.left.transpose()), d.rho).transpose();
    d.rho = (d.left * b * d.right).value() / (d.left * d.right).value();
    d.left /= d.left.sum();
    d.right /= (d.left * d.right).value();
    return d;
}

// (1/rho) D^-1 B D with D = diag(r)
template <class Scalar>
Mat<Scalar> stochasticize(const Mat<Scalar>& b, Scalar eps = Scalar(kSpectralTol)) {
    const auto pd = perron<Scalar>(b, eps);
    Mat<Scalar> p(b.rows(), b.cols());
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j) p(i, j) = b(i, j) * pd.right(j) / (pd.rho * pd.right(i));
    return p;
}

// Parry measure: P = stoch(B), p_i = l_i r_i
template <class Scalar>
MarkovMeasure<Scalar> maximal_measure_of(const Mat<Scalar>& b, Scalar eps = Scalar(kSpectralTol)) {
    const auto pd = perron<Scalar>(b, eps);
    MarkovMeasure<Scalar> m;
    m.kernel.resize(b.rows(), b.cols());
    for (Eigen::Index i = 0; i < b.rows(); ++i)
        for (Eigen::Index j = 0; j < b.cols(); ++j)
            m.kernel(i, j) = b(i, j) * pd.right(j) / (pd.rho * pd.right(i));
    m.stationary = pd.left.cwiseProduct(pd.right.transpose());
    m.stationary /= m.stationary.sum();
    return m;
}

template <class Scalar>
Scalar markov_entropy(const MarkovMeasure<Scalar>& m) {
    Scalar h(0);
    for (Eigen::Index i = 0; i < m.kernel.rows(); ++i)
        for (Eigen::Index j = 0; j < m.kernel.cols(); ++j) {
            const Scalar q = m.kernel(i, j);
            if (q > Scalar(0)) h -= m.stationary(i) * q * std::log(q);
        }
    return h;
}

MarkovMeasure<double> maximal_measure(const IMatrix& t, double eps = kSpectralTol);
// left-sided companion (q, Q) built from the transpose
MarkovMeasure<double> maximal_measure_left(const IMatrix& t, double eps = kSpectralTol);

double spectral_radius(const IMatrix& t, double eps = kSpectralTol);
// log of the largest spectral radius over irreducible components; -inf when empty
double topological_entropy(const IMatrix& t, double eps = kSpectralTol);

DimensionResult hausdorff_dimension(double entropy, int alphabet_size);

}  // namespace mcnn
