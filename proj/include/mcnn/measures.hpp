#pragma once

#include "mcnn/factors.hpp"
#include "mcnn/spectral.hpp"
#include "mcnn/types.hpp"

#include <optional>
#include <vector>

namespace mcnn {

// mu([i0 ... i_{n-1}]) = x P_{i0} ... P_{i_{n-1}} y
struct LinearRepresentation {
    DRowVec x;
    std::vector<DMatrix> kernels;  // one per target symbol
    DVec y;
};

// phi maps the states of `support` to target symbols; mu lives on the same states
LinearRepresentation pushforward_representation(const IMatrix& support, const OneBlockMap& phi,
                                                const MarkovMeasure<double>& mu);
double cylinder_probability(const LinearRepresentation& rep, const std::vector<int>& word);

struct BlockFamily {
    int symbols = 0;
    int width = 0;                          // largest fiber; blocks are width x width
    std::vector<std::vector<int>> fibers;   // source states per target symbol, ascending
    std::vector<IMatrix> blocks;            // N_{j1 j2} at j1*symbols + j2
    std::vector<bool> essential;            // per source state
    IMatrix source;

    const IMatrix& block(int j1, int j2) const { return blocks[j1 * symbols + j2]; }
    // block with rows/columns of inessential states cleared
    IMatrix masked(int j1, int j2) const;
};

BlockFamily build_block_family(const OneBlockMap& phi, const IMatrix& tx);

inline constexpr double kMarkovTol = 1e-9;
inline constexpr int kDefaultMarkovOrder = 4;

struct MarkovCertificate {
    int order = 0;
    std::vector<std::vector<int>> words;  // admissible target k-words, lexicographic
    std::vector<DRowVec> rays;            // V_J on the fiber of the last letter
    DMatrix kernel;                       // M(J, J') = m(J, J') over words
    double rho = 0.0;                     // spectral radius of M
    bool canonical = false;               // rays scaled by the source's left Perron vector
};

std::optional<MarkovCertificate> check_markov_condition(const BlockFamily& n, int k_max = kDefaultMarkovOrder,
                                                        double eps = kMarkovTol);

// Markov measure over target k-words: stoch(M) and its stationary vector
MarkovMeasure<double> measure_from_certificate(const MarkovCertificate& c);
double certificate_cylinder(const MarkovCertificate& c, const MarkovMeasure<double>& m, const std::vector<int>& word);

struct UniformityReport {
    bool uniform = false;
    double rho_m = 0.0;
    double rho_source = 0.0;
    double rho_target = 0.0;
    double ratio_target_source = 0.0;
    double ratio_source_target = 0.0;
    bool spectral_match = false;  // |rho(M) - rho_target/rho_source| <= tol
    double measure_entropy = 0.0;
    double target_entropy = 0.0;
};

UniformityReport uniform_factor_test(const MarkovCertificate& c, double rho_source, double rho_target,
                                     double tol = kMarkovTol);

}  // namespace mcnn
