#pragma once

// Generative Monte Carlo draws of instantaneous SNR. Two physical
// constructions (a common complex shadowing factor across clusters, and
// per-cluster i.i.d. shadowing) plus a Poisson-Gamma conditional mixture that
// extends the family to arbitrary real cluster counts.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fadinglab/channel_models.hpp"

namespace fadinglab::sampler {

using models::ShadowedParams;

// Sum of mu clusters, each a circular complex scatter component plus a
// deterministic dominant amplitude scaled by one shared complex shadowing
// factor xi with |xi|^2 ~ Gamma(m, m).
struct CommonShadow {
    int mu;                                  // integer cluster count
    double sigma2;                           // per-component scatter variance
    std::vector<std::complex<double>> rho;   // dominant amplitude per cluster
    double m;                                // shadowing severity

    void validate() const;
    double derived_kappa() const;            // sum |rho_i|^2 / (2 sigma2 mu)
};

// Per-cluster independent shadowing factors xi_i, |xi_i|^2 ~ Gamma(m_hat,
// m_hat), all clusters sharing one dominant magnitude. The resulting
// distribution has m = mu * m_hat.
struct IidShadow {
    int mu;
    double sigma2;
    double rho_magnitude;
    double m_hat;

    void validate() const;
    // Total dominant power over total scattered power,
    // mu |rho|^2 / (2 sigma2 mu).
    double derived_kappa() const;
    double derived_m() const { return mu * m_hat; }
};

struct SampleBatch {
    std::vector<double> snr_values;   // linear SNR, all >= 0
    std::uint64_t seed = 0;
    std::string model_tag;
    double gamma_bar_target = 1.0;
};

// Draws from the common-shadowing construction; deterministic given seed.
SampleBatch sample_common_shadow(const CommonShadow& model, double gamma_bar,
                                 std::size_t count, std::uint64_t seed);

// Draws from the i.i.d.-shadowing construction; deterministic given seed.
SampleBatch sample_iid_shadow(const IidShadow& model, double gamma_bar,
                              std::size_t count, std::uint64_t seed);

// Arbitrary-mu workhorse: draw the shadow power S ~ Gamma(m, m), a cluster
// excess N ~ Poisson(mu kappa S), then gamma ~ Gamma(mu + N, mu(1+kappa)/gbar).
SampleBatch sample_conditional(const ShadowedParams& p, std::size_t count,
                               std::uint64_t seed);

// Unit-shadow slice of the conditional construction (S fixed at 1): exact
// kappa-mu draws.
SampleBatch sample_kappa_mu(double kappa, double mu, double gamma_bar,
                            std::size_t count, std::uint64_t seed);

// CSV column of SNR values plus a JSON sidecar (model, seed, gamma_bar,
// count) at path + ".json".
void write_batch_csv(const SampleBatch& batch, const std::string& path);

} // namespace fadinglab::sampler
