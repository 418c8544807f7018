#include <doctest.h>

#include "mcnn/spectral.hpp"
#include "oracles.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdlib>
#include <random>

using namespace mcnn;

namespace {

const double g = (1 + std::sqrt(5.0)) / 2;

DMatrix dmat(std::initializer_list<std::initializer_list<double>> rows) {
    DMatrix m(rows.size(), rows.begin()->size());
    int i = 0;
    for (auto r : rows) {
        int j = 0;
        for (double v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}

Presentation cover(const std::string& f, int layer) {
    return layer_cover(build_transition_matrix(network_basic_set(oracle::load(f))), layer);
}

double eigen_radius(const DMatrix& m) {
    Eigen::EigenSolver<DMatrix> es(m);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("perron on small matrices") {
    auto gm = perron<double>(dmat({{0, 1}, {1, 1}}));
    CHECK(std::abs(gm.rho - g) < 1e-12);
    CHECK(std::abs(gm.left.sum() - 1) < 1e-14);
    CHECK(std::abs(gm.left.dot(gm.right.transpose()) - 1) < 1e-12);
    CHECK((dmat({{0, 1}, {1, 1}}) * gm.right - gm.rho * gm.right).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((gm.left * dmat({{0, 1}, {1, 1}}) - gm.rho * gm.left).cwiseAbs().maxCoeff() < 1e-12);

    auto one = perron<double>(dmat({{1}}));
    CHECK(one.rho == doctest::Approx(1.0));
    CHECK(one.right(0) == doctest::Approx(1.0));
    CHECK(one.left(0) == doctest::Approx(1.0));

    auto rho = perron<double>(cover("ex4_2.json", 1).incidence.cast<double>()).rho;
    CHECK(std::abs(rho * rho * rho - rho - 1) < 1e-12);
    CHECK(rho == doctest::Approx(1.3247).epsilon(1e-4));
}

TEST_CASE("perron handles periodic matrices and rejects reducible ones") {
    auto p = perron<double>(dmat({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
    CHECK(std::abs(p.rho - 1) < 1e-12);
    CHECK_THROWS_AS(perron<double>(dmat({{1, 1}, {0, 1}})), Error);
    CHECK_THROWS_AS(perron<double>(dmat({{0}})), Error);
}

TEST_CASE("perron is generic over the scalar type") {
    Mat<long double> m(2, 2);
    m << 0, 1, 1, 1;
    auto p = perron<long double>(m, 1e-15L);
    CHECK(std::abs(static_cast<double>(p.rho) - g) < 1e-14);
    Mat<float> f(2, 2);
    f << 0, 1, 1, 1;
    CHECK(perron<float>(f, 1e-6f).rho == doctest::Approx(g).epsilon(1e-5));
}

TEST_CASE("stochasticization") {
    auto p = stochasticize<double>(dmat({{0, 1 / g}, {g, 1}}));
    CHECK((p - dmat({{0, 1}, {2 - g, g - 1}})).cwiseAbs().maxCoeff() < 1e-12);
    auto s = dmat({{0.2, 0.8}, {0.5, 0.5}});
    CHECK((stochasticize<double>(s) - s).cwiseAbs().maxCoeff() < 1e-12);
    auto w2 = stochasticize<double>(cover("ex4_4.json", 2).incidence.cast<double>());
    CHECK((w2 - dmat({{0, 2 - g, g - 1}, {1, 0, 0}, {0, 2 - g, g - 1}})).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("maximal measures of the examples") {
    auto w1 = maximal_measure(cover("ex4_2.json", 1).incidence);
    const double p1[] = {0.1770, 0.4115, 0.4115};
    for (int i = 0; i < 3; ++i) CHECK(std::abs(w1.stationary(i) - p1[i]) < 1e-4);
    CHECK(std::abs(w1.kernel(1, 0) - 0.4302) < 1e-4);
    CHECK(std::abs(w1.kernel(1, 2) - 0.5698) < 1e-4);
    CHECK(w1.kernel(0, 2) == doctest::Approx(1.0));
    CHECK(w1.kernel(2, 1) == doctest::Approx(1.0));

    auto w2 = maximal_measure(cover("ex4_2.json", 2).incidence);
    const double p2[] = {0.1770, 0.1770, 0.4115, 0.2345};
    for (int i = 0; i < 4; ++i) CHECK(std::abs(w2.stationary(i) - p2[i]) < 1e-4);

    auto full = maximal_measure(IMatrix::Ones(2, 2));
    CHECK(full.stationary(0) == doctest::Approx(0.5));
    CHECK(full.kernel(1, 0) == doctest::Approx(0.5));

    auto w3 = maximal_measure(cover("ex4_3.json", 2).incidence);
    const double p3[] = {0.1888, 0.0658, 0.2294, 0.3524, 0.1636};
    for (int i = 0; i < 5; ++i) CHECK(std::abs(w3.stationary(i) - p3[i]) < 1e-4);
    CHECK(std::abs(w3.kernel(0, 0) - 0.5357) < 1e-4);
    CHECK(std::abs(w3.kernel(2, 1) - 0.2870) < 1e-4);

    auto w4 = maximal_measure(cover("ex4_4.json", 1).incidence);
    const double p4[] = {0.0994, 0.2822, 0.6184};
    for (int i = 0; i < 3; ++i) CHECK(std::abs(w4.stationary(i) - p4[i]) < 1e-4);
    CHECK(std::abs(w4.kernel(2, 1) - 0.4563) < 1e-4);

    auto left = maximal_measure_left(cover("ex4_2.json", 1).incidence);
    CHECK(left.side == Side::Left);
    CHECK((left.stationary - w1.stationary).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("markov entropy") {
    auto gm = maximal_measure((IMatrix(2, 2) << 0, 1, 1, 1).finished());
    CHECK(std::abs(markov_entropy(gm) - std::log(g)) < 1e-12);
    CHECK(markov_entropy(gm) == doctest::Approx(0.4812).epsilon(1e-4));
    auto full = maximal_measure(IMatrix::Ones(2, 2));
    CHECK(std::abs(markov_entropy(full) - std::log(2.0)) < 1e-12);
    auto w1 = maximal_measure(cover("ex4_4.json", 1).incidence);
    const double h = markov_entropy(w1);
    const double rho = std::exp(h);
    CHECK(std::abs(rho * rho * rho - rho * rho - rho - 1) < 1e-9);
    CHECK(h == doctest::Approx(0.6093).epsilon(1e-4));
}

TEST_CASE("topological entropy") {
    CHECK(std::abs(topological_entropy(cover("ex4_1.json", 2).incidence) - std::log(g)) < 1e-12);
    CHECK(std::abs(topological_entropy(IMatrix::Ones(5, 5)) - std::log(5.0)) < 1e-12);
    IMatrix chain = IMatrix::Zero(3, 3);
    chain(0, 1) = chain(1, 2) = 1;
    CHECK(std::isinf(topological_entropy(chain)));
    CHECK(topological_entropy(chain) < 0);
    // reducible: max over components
    IMatrix red = IMatrix::Zero(4, 4);
    red(0, 0) = red(0, 1) = red(1, 0) = 1;      // golden mean block
    red(1, 2) = 1;                              // bridge
    red(2, 2) = red(2, 3) = red(3, 2) = red(3, 3) = 1;  // full 2-shift block
    CHECK(std::abs(topological_entropy(red) - std::log(2.0)) < 1e-12);
    CHECK_THROWS_AS(maximal_measure(red), Error);
}

TEST_CASE("hausdorff dimension") {
    CHECK(std::abs(hausdorff_dimension(std::log(g), 2).dimension - 1.3885) < 1e-4);
    CHECK(hausdorff_dimension(std::log(2.0), 2).dimension == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(std::abs(hausdorff_dimension(std::log(g), 3).dimension - 0.8760) < 1e-4);
    auto d = hausdorff_dimension(0.3, 4);
    CHECK(hausdorff_dimension(0.6, 4).dimension == doctest::Approx(2 * d.dimension));
    for (int m = 2; m <= 7; ++m)
        CHECK(hausdorff_dimension(topological_entropy(IMatrix::Ones(m, m)), m).dimension ==
              doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(hausdorff_dimension(0.1, 1), Error);
}

TEST_CASE("variational principle on random irreducible matrices") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<int> size(1, 8);
    std::uniform_real_distribution<double> dens(0.2, 0.7);
    for (int trial = 0; trial < 100; ++trial) {
        const IMatrix a = oracle::random_irreducible(rng, size(rng), dens(rng));
        const DMatrix d = a.cast<double>();
        const auto pd = perron<double>(d);
        CHECK(std::abs(pd.rho - eigen_radius(d)) < 1e-9);
        const auto mu = maximal_measure(a);
        CHECK(std::abs(markov_entropy(mu) - std::log(pd.rho)) < 1e-9);
        const DMatrix p = stochasticize<double>(d);
        CHECK((p.rowwise().sum().array() - 1).abs().maxCoeff() < 1e-12);
        CHECK(std::abs(eigen_radius(p) - 1) < 1e-9);
        CHECK((support(p) == a));
        CHECK((mu.stationary * mu.kernel - mu.stationary).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("cylinder-sum entropy approaches the closed form") {
    for (auto f : {"ex4_1.json", "ex4_2.json", "ex4_3.json", "ex4_4.json"}) {
        auto c = cover(f, 2);
        auto mu = maximal_measure(c.incidence);
        const double h = markov_entropy(mu);
        std::vector<int> id(c.size());
        for (int i = 0; i < c.size(); ++i) id[i] = i;
        double prev_rate = 1e9, prev_h = 0;
        for (int n = 1; n <= 8; ++n) {
            double hn = 0;
            for (const auto& w : oracle::all_words(c.size(), n)) {
                const double m = oracle::path_sum(mu, id, w);
                if (m > 0) hn -= m * std::log(m);
            }
            const double rate = hn / n;
            CHECK(rate <= prev_rate + 1e-6);
            CHECK(rate >= h - 1e-9);
            if (n > 1) CHECK(std::abs(hn - prev_h - h) < 1e-9);
            prev_rate = rate;
            prev_h = hn;
        }
    }
}

TEST_CASE("tolerance override from the environment") {
    CHECK(spectral_tolerance() == kSpectralTol);
    setenv("MCNN_TOLERANCE", "1e-10", 1);
    CHECK(spectral_tolerance() == 1e-10);
    setenv("MCNN_TOLERANCE", "junk", 1);
    CHECK_THROWS_AS(spectral_tolerance(), Error);
    unsetenv("MCNN_TOLERANCE");
}
