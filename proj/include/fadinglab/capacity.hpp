#pragma once

// High-SNR ergodic capacity: closed-form capacity losses relative to AWGN for
// the whole model family, the asymptote log2(gbar) - L, and quadrature /
// Monte Carlo estimators of the exact ergodic capacity that validate it.

#include "fadinglab/channel_models.hpp"
#include "fadinglab/sampler.hpp"

namespace fadinglab::capacity {

using models::FadingModel;
using models::SeriesControl;

// Capacity loss L in bps/Hz relative to the AWGN channel; L >= 0, with
// equality only in the no-fading limit. Independent of gamma_bar.
struct CapacityLoss {
    double loss_bits;
    FadingModel model;
};

struct EstimateCI {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t n_samples = 0;
};

// L for the kappa-mu shadowed channel:
//   -log2(e) psi(mu) - log2((mu k + m)/(mu m (1+k)))
//   + log2(e) k(mu-m)/(mu k + m) 3F2(1,1,mu-m+1; 2,mu+1; mu k/(mu k + m)).
// The 3F2 argument approaches 1 for large kappa with small m; points beyond
// the series budget raise NonConvergence.
CapacityLoss loss_kappa_mu_shadowed(double kappa, double mu, double m,
                                    const SeriesControl& ctrl = {});

// L for the kappa-mu channel (2F2 form). The alternating series is replaced
// by an equivalent integral representation once cancellation would cost more
// digits than the tolerance allows.
CapacityLoss loss_kappa_mu(double kappa, double mu, const SeriesControl& ctrl = {});

// L for the eta-mu channel, format 1. eta > 1 is mapped through the symmetry
// eta -> 1/eta, keeping the series argument inside [0, 1).
CapacityLoss loss_eta_mu(double eta, double mu, const SeriesControl& ctrl = {});

// Per-model closed forms (one-sided Gaussian, Rayleigh, Nakagami-m, Hoyt,
// Rician, kappa-mu, eta-mu, Rician shadowed, kappa-mu shadowed).
CapacityLoss loss_table(const FadingModel& model, const SeriesControl& ctrl = {});

// log2(gamma_bar) - L(model), asymptotically exact in the high-SNR regime.
double asymptotic_capacity(const FadingModel& model, double gamma_bar,
                           const SeriesControl& ctrl = {});

// Exact ergodic capacity int log2(1+g) f(g) dg by adaptive quadrature,
// absolute error <= tol.
double ergodic_capacity_quadrature(const FadingModel& model, double gamma_bar,
                                   double tol = 1e-9, const SeriesControl& ctrl = {});

// Sample mean and standard error of log2(1+g) over a batch.
EstimateCI ergodic_capacity_mc(const sampler::SampleBatch& batch);

// Independent validation oracle for the loss formulas: Richardson-
// extrapolated central difference of the amount-of-fading order derivative
// at n = 0 (step 1e-4). Routes through the Gauss-series moments only, never
// through the closed forms above.
double loss_finite_difference(double kappa, double mu, double m,
                              const SeriesControl& ctrl = {});

} // namespace fadinglab::capacity
