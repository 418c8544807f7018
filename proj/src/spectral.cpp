#include "mcnn/spectral.hpp"

#include <cstdlib>

namespace mcnn {

double spectral_tolerance() {
    if (const char* env = std::getenv("MCNN_TOLERANCE")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && *end == '\0' && v > 0.0 && std::isfinite(v)) return v;
        throw Error(ErrorKind::Config, std::string("MCNN_TOLERANCE is not a positive number: ") + env);
    }
    return kSpectralTol;
}

MarkovMeasure<double> maximal_measure(const IMatrix& t, double eps) {
    return maximal_measure_of<double>(t.cast<double>(), eps);
}

MarkovMeasure<double> maximal_measure_left(const IMatrix& t, double eps) {
    auto m = maximal_measure_of<double>(t.transpose().cast<double>(), eps);
    m.side = Side::Left;
    return m;
}

double spectral_radius(const IMatrix& t, double eps) {
    return perron<double>(t.cast<double>(), eps).rho;
}

double topological_entropy(const IMatrix& t, double eps) {
    const auto kept = essential_states(t);
    if (kept.empty()) return -std::numeric_limits<double>::infinity();
    const IMatrix e = restrict_matrix(t, kept);
    double best = 0.0;
    bool any = false;
    for (const auto& comp : strongly_connected_components(e)) {
        const IMatrix c = restrict_matrix(e, comp);
        if (!structure_flags(c).irreducible) continue;
        const double rho = spectral_radius(c, eps);
        best = any ? std::max(best, rho) : rho;
        any = true;
    }
    if (!any) return -std::numeric_limits<double>::infinity();
    return std::log(best);
}

DimensionResult hausdorff_dimension(double entropy, int alphabet_size) {
    if (alphabet_size < 2) throw Error(ErrorKind::Config, "alphabet needs at least two symbols");
    if (entropy < 0.0) throw Error(ErrorKind::Config, "entropy must be nonnegative");
    return {entropy, alphabet_size, 2.0 * entropy / std::log(static_cast<double>(alphabet_size))};
}

}  // namespace mcnn
