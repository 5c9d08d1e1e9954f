#pragma once

// Analytic layer of the kappa-mu shadowed fading family: parameter records,
// the reduction map from classic/generalized models onto the master
// distribution, power PDFs, moments, amount of fading and a numeric CDF.
//
// Everything works on power (instantaneous-SNR) densities; gamma_bar is the
// mean SNR in linear units.

#include <string>
#include <variant>

#include "fadinglab/specfun.hpp"

namespace fadinglab::models {

using specfun::SeriesControl;

// Parameters of the master distribution: kappa >= 0 is the dominant-to-
// scattered power ratio, mu > 0 the cluster number (real extension allowed),
// m > 0 the Nakagami shadowing severity of the dominant components.
struct ShadowedParams {
    double kappa;
    double mu;
    double m;
    double gamma_bar;

    ShadowedParams(double kappa_, double mu_, double m_, double gamma_bar_)
        : kappa(kappa_), mu(mu_), m(m_), gamma_bar(gamma_bar_) {
        if (!(kappa >= 0.0)) throw DomainError("ShadowedParams: kappa must be >= 0");
        if (!(mu > 0.0)) throw DomainError("ShadowedParams: mu must be > 0");
        if (!(m > 0.0)) throw DomainError("ShadowedParams: m must be > 0");
        if (!(gamma_bar > 0.0)) throw DomainError("ShadowedParams: gamma_bar must be > 0");
    }
};

// Numeric surrogates for the limit rows of the reduction table ("m -> inf",
// "kappa -> 0" have no representable parameter value).
struct LimitPolicy {
    double m_infinity = 1e6;
    double kappa_zero = 1e-9;

    void validate() const {
        if (!(m_infinity >= 1e3)) throw DomainError("LimitPolicy: m_infinity must be >= 1e3");
        if (!(kappa_zero > 0.0 && kappa_zero <= 1e-6))
            throw DomainError("LimitPolicy: kappa_zero must be in (0, 1e-6]");
    }
};

struct OneSidedGaussian { double gamma_bar = 1.0; };
struct Rayleigh         { double gamma_bar = 1.0; };
struct NakagamiM        { double m; double gamma_bar = 1.0; };
struct NakagamiQ        { double q; double gamma_bar = 1.0; };      // q in (0, 1]
struct Rician           { double K; double gamma_bar = 1.0; };      // K >= 0
struct KappaMu          { double kappa; double mu; double gamma_bar = 1.0; };
struct EtaMu            { double eta; double mu; double gamma_bar = 1.0; }; // format 1
struct RicianShadowed   { double K; double m; double gamma_bar = 1.0; };
struct KappaMuShadowed  { double kappa; double mu; double m; double gamma_bar = 1.0; };

using FadingModel = std::variant<OneSidedGaussian, Rayleigh, NakagamiM, NakagamiQ,
                                 Rician, KappaMu, EtaMu, RicianShadowed,
                                 KappaMuShadowed>;

// Throws DomainError if the variant's native parameters are outside its
// domain (e.g. Hoyt q > 1 is rejected rather than symmetrized).
void validate(const FadingModel& model);

// Short display name, e.g. "rician(K=10)".
std::string model_label(const FadingModel& model);

double mean_snr(const FadingModel& model);
FadingModel with_mean_snr(FadingModel model, double gamma_bar);

// Reduction map onto the master distribution. Exact rows map identically
// (eta-mu uses the format-1 symmetry eta -> 1/eta first when eta > 1); limit
// rows use the policy surrogates. For the one-sided Gaussian / Rayleigh /
// Nakagami-m rows both derivations are combined: kappa takes the kappa_zero
// surrogate and m = mu, which makes the reduced PDF exact for any kappa.
ShadowedParams reduce_to_shadowed(const FadingModel& model, const LimitPolicy& policy = {});

// Power PDF of the kappa-mu shadowed distribution, evaluated in log space so
// the tail stays representable far beyond gamma_bar. At gamma = 0 the density
// is +inf for mu < 1 (integrable singularity), finite for mu = 1 and 0 above.
double pdf_kappa_mu_shadowed(const ShadowedParams& p, double gamma,
                             const SeriesControl& ctrl = {});

// Power PDF of the kappa-mu distribution (Bessel form).
double pdf_kappa_mu(double kappa, double mu, double gamma_bar, double gamma,
                    const SeriesControl& ctrl = {});

// Power PDF of the eta-mu distribution, format 1. Symmetric under
// eta -> 1/eta; eta > 1 is evaluated through that symmetry.
double pdf_eta_mu(double eta, double mu, double gamma_bar, double gamma,
                  const SeriesControl& ctrl = {});

// Gamma density with shape alpha and rate beta.
double pdf_gamma_dist(double alpha, double beta, double w);

// Native density of any model variant at its own gamma_bar.
double pdf_model(const FadingModel& model, double gamma, const SeriesControl& ctrl = {});

// n-th raw moment E[gamma^n], n > 0 (integer orders terminate the Gauss
// series; real orders are allowed).
double moment(const ShadowedParams& p, double n, const SeriesControl& ctrl = {});

// n-th order amount of fading E[gamma^n]/gamma_bar^n - 1.
double amount_of_fading(const ShadowedParams& p, double n, const SeriesControl& ctrl = {});

// P(gamma' <= gamma) by adaptive quadrature of the PDF, absolute error <= tol.
double cdf_numeric(const ShadowedParams& p, double gamma, double tol = 1e-10,
                   const SeriesControl& ctrl = {});

} // namespace fadinglab::models
