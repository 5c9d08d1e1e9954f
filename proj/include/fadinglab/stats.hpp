#pragma once

// Goodness-of-fit helpers for sampler validation: equal-probability binning
// against the numeric CDF, chi-square tail probability, two-sample KS.

#include <vector>

#include "fadinglab/channel_models.hpp"

namespace fadinglab::stats {

// Interior bin edges (nbins-1 values) splitting the distribution into bins of
// probability 1/nbins each, found by bisection on the numeric CDF.
std::vector<double> equal_probability_edges(const models::ShadowedParams& p, int nbins);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

// Chi-square statistic of samples against equal-probability bins delimited by
// the interior edges (implicit outer edges 0 and +inf).
ChiSquareResult chi_square_equal_bins(const std::vector<double>& samples,
                                      const std::vector<double>& interior_edges);

// Two-sample Kolmogorov-Smirnov distance sup |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

// One-sample KS distance against the numeric CDF of the master distribution.
double ks_distance_model(std::vector<double> samples, const models::ShadowedParams& p);

} // namespace fadinglab::stats
