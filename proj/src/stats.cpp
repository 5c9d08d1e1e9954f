#include "fadinglab/stats.hpp"

#include <algorithm>
#include <cmath>

namespace fadinglab::stats {

std::vector<double> equal_probability_edges(const models::ShadowedParams& p, int nbins) {
    if (nbins < 2) throw DomainError("equal_probability_edges: need nbins >= 2");
    // Bracket the far tail first, then bisect each quantile.
    double hi = p.gamma_bar;
    while (models::cdf_numeric(p, hi, 1e-9) < 1.0 - 0.5 / nbins) hi *= 2.0;
    std::vector<double> edges;
    edges.reserve(nbins - 1);
    for (int k = 1; k < nbins; ++k) {
        const double target = static_cast<double>(k) / nbins;
        double lo = 0.0, up = hi;
        for (int it = 0; it < 200 && (up - lo) > 1e-12 * (1.0 + up); ++it) {
            double mid = 0.5 * (lo + up);
            if (models::cdf_numeric(p, mid, 1e-10) < target)
                lo = mid;
            else
                up = mid;
        }
        edges.push_back(0.5 * (lo + up));
    }
    return edges;
}

ChiSquareResult chi_square_equal_bins(const std::vector<double>& samples,
                                      const std::vector<double>& interior_edges) {
    const int nbins = static_cast<int>(interior_edges.size()) + 1;
    if (samples.empty()) throw DomainError("chi_square_equal_bins: empty sample");
    std::vector<long> counts(nbins, 0);
    for (double x : samples) {
        auto it = std::upper_bound(interior_edges.begin(), interior_edges.end(), x);
        ++counts[it - interior_edges.begin()];
    }
    const double expected = static_cast<double>(samples.size()) / nbins;
    double stat = 0.0;
    for (long c : counts) {
        double d = c - expected;
        stat += d * d / expected;
    }
    ChiSquareResult r;
    r.statistic = stat;
    r.dof = nbins - 1;
    r.p_value = specfun::gamma_q(0.5 * r.dof, 0.5 * stat);
    return r;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw DomainError("ks_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

double ks_distance_model(std::vector<double> samples, const models::ShadowedParams& p) {
    if (samples.empty()) throw DomainError("ks_distance_model: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    // Evaluating the quadrature CDF at every sample would be wasteful; a few
    // hundred evenly spaced order statistics pin the supremum well enough.
    const std::size_t checks = std::min<std::size_t>(samples.size(), 512);
    for (std::size_t k = 0; k < checks; ++k) {
        std::size_t idx = (k * samples.size()) / checks;
        double f = models::cdf_numeric(p, samples[idx], 1e-9);
        double lo = idx / n, hi = (idx + 1.0) / n;
        d = std::max({d, std::abs(f - lo), std::abs(hi - f)});
    }
    return d;
}

} // namespace fadinglab::stats
