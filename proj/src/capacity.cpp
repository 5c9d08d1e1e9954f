#include "fadinglab/capacity.hpp"

#include <cmath>

#include "fadinglab/quadrature.hpp"

namespace fadinglab::capacity {

namespace {

constexpr double kLog2e = 1.4426950408889634074;  // log2(e)

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

// x * 2F2(1,1; 2,mu+1; -x). The plain series loses ~x*log2(e) bits to
// cancellation, so beyond a modest argument it is evaluated through
//   x 2F2(1,1;2,mu+1;-x) = mu int_0^1 (1 - e^(-x t)) / t (1-t)^(mu-1) dt,
// whose integrand is positive.
double kappa_series_term(double mu, double x, const SeriesControl& ctrl) {
    if (x == 0.0) return 0.0;
    if (x <= 12.0)
        return x * specfun::hyp_pfq(specfun::PFQParams({1.0, 1.0}, {2.0, mu + 1.0}, -x),
                                    ctrl);
    auto f = [&](double t) { return -std::expm1(-x * t) / t * std::pow(1.0 - t, mu - 1.0); };
    return mu * quadrature::integrate_finite(f, 0.0, 1.0, 1e-13);
}

} // namespace

CapacityLoss loss_kappa_mu_shadowed(double kappa, double mu, double m,
                                    const SeriesControl& ctrl) {
    if (!(kappa >= 0.0)) throw DomainError("loss_kappa_mu_shadowed: kappa must be >= 0");
    if (!(mu > 0.0)) throw DomainError("loss_kappa_mu_shadowed: mu must be > 0");
    if (!(m > 0.0)) throw DomainError("loss_kappa_mu_shadowed: m must be > 0");
    double loss = -kLog2e * specfun::digamma(mu) -
                  std::log2((mu * kappa + m) / (mu * m * (1.0 + kappa)));
    if (kappa > 0.0 && mu != m) {
        const double x = mu * kappa / (mu * kappa + m);
        double f32 = specfun::hyp_pfq(
            specfun::PFQParams({1.0, 1.0, mu - m + 1.0}, {2.0, mu + 1.0}, x), ctrl);
        loss += kLog2e * kappa * (mu - m) / (mu * kappa + m) * f32;
    }
    return {loss, models::KappaMuShadowed{kappa, mu, m, 1.0}};
}

CapacityLoss loss_kappa_mu(double kappa, double mu, const SeriesControl& ctrl) {
    if (!(kappa >= 0.0)) throw DomainError("loss_kappa_mu: kappa must be >= 0");
    if (!(mu > 0.0)) throw DomainError("loss_kappa_mu: mu must be > 0");
    // kappa * 2F2(1,1;2,mu+1;-mu kappa) == kappa_series_term(mu, mu kappa) / mu
    double loss = -kLog2e * specfun::digamma(mu) + std::log2(mu) + std::log2(1.0 + kappa) -
                  kLog2e * kappa_series_term(mu, mu * kappa, ctrl) / mu;
    return {loss, models::KappaMu{kappa, mu, 1.0}};
}

CapacityLoss loss_eta_mu(double eta, double mu, const SeriesControl& ctrl) {
    if (!(eta > 0.0)) throw DomainError("loss_eta_mu: eta must be > 0");
    if (!(mu > 0.0)) throw DomainError("loss_eta_mu: mu must be > 0");
    const double model_eta = eta;
    if (eta > 1.0) eta = 1.0 / eta;  // format-1 symmetry
    double loss = -kLog2e * specfun::digamma(2.0 * mu) + std::log2(mu) +
                  std::log2(1.0 + eta);
    if (eta != 1.0) {
        double f32 = specfun::hyp_pfq(
            specfun::PFQParams({1.0, 1.0, mu + 1.0}, {2.0, 2.0 * mu + 1.0}, 1.0 - eta),
            ctrl);
        loss += kLog2e * (1.0 - eta) / 2.0 * f32;
    }
    return {loss, models::EtaMu{model_eta, mu, 1.0}};
}

CapacityLoss loss_table(const FadingModel& model, const SeriesControl& ctrl) {
    models::validate(model);
    double loss = std::visit(overloaded{
        [&](const models::OneSidedGaussian&) {
            return 1.0 + specfun::kEulerGamma * kLog2e;
        },
        [&](const models::Rayleigh&) { return specfun::kEulerGamma * kLog2e; },
        [&](const models::NakagamiM& v) {
            return std::log2(v.m) - kLog2e * specfun::digamma(v.m);
        },
        [&](const models::NakagamiQ& v) {
            const double q2 = v.q * v.q;
            return 1.0 + specfun::kEulerGamma * kLog2e +
                   std::log2((1.0 + q2) / ((1.0 + v.q) * (1.0 + v.q)));
        },
        [&](const models::Rician& v) {
            if (v.K == 0.0) return specfun::kEulerGamma * kLog2e;  // Rayleigh limit
            return std::log2(1.0 + 1.0 / v.K) -
                   kLog2e * specfun::upper_incomplete_gamma(0.0, v.K, ctrl);
        },
        [&](const models::KappaMu& v) {
            return loss_kappa_mu(v.kappa, v.mu, ctrl).loss_bits;
        },
        [&](const models::EtaMu& v) {
            return loss_eta_mu(v.eta, v.mu, ctrl).loss_bits;
        },
        [&](const models::RicianShadowed& v) {
            double loss_rs = specfun::kEulerGamma * kLog2e -
                             std::log2((v.K + v.m) / (v.m * (1.0 + v.K)));
            if (v.K > 0.0 && v.m != 1.0) {
                double f32 = specfun::hyp_pfq(
                    specfun::PFQParams({1.0, 1.0, 2.0 - v.m}, {2.0, 2.0},
                                       v.K / (v.K + v.m)),
                    ctrl);
                loss_rs += kLog2e * v.K * (1.0 - v.m) / (v.K + v.m) * f32;
            }
            return loss_rs;
        },
        [&](const models::KappaMuShadowed& v) {
            return loss_kappa_mu_shadowed(v.kappa, v.mu, v.m, ctrl).loss_bits;
        },
    }, model);
    return {loss, model};
}

double asymptotic_capacity(const FadingModel& model, double gamma_bar,
                           const SeriesControl& ctrl) {
    if (!(gamma_bar > 0.0)) throw DomainError("asymptotic_capacity: gamma_bar must be > 0");
    return std::log2(gamma_bar) - loss_table(model, ctrl).loss_bits;
}

double ergodic_capacity_quadrature(const FadingModel& model, double gamma_bar,
                                   double tol, const SeriesControl& ctrl) {
    if (!(gamma_bar > 0.0))
        throw DomainError("ergodic_capacity_quadrature: gamma_bar must be > 0");
    const FadingModel scaled = models::with_mean_snr(model, gamma_bar);
    auto f = [&](double g) {
        return std::log2(1.0 + g) * models::pdf_model(scaled, g, ctrl);
    };
    return quadrature::integrate_upper(f, 0.0, gamma_bar, tol);
}

EstimateCI ergodic_capacity_mc(const sampler::SampleBatch& batch) {
    const auto& xs = batch.snr_values;
    if (xs.empty()) throw DomainError("ergodic_capacity_mc: batch must be non-empty");
    double mean = 0.0;
    for (double x : xs) mean += std::log2(1.0 + x);
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        double d = std::log2(1.0 + x) - mean;
        ss += d * d;
    }
    double sd = xs.size() > 1 ? std::sqrt(ss / (xs.size() - 1.0)) : 0.0;
    return {mean, sd / std::sqrt(static_cast<double>(xs.size())), xs.size()};
}

double loss_finite_difference(double kappa, double mu, double m,
                              const SeriesControl& ctrl) {
    if (!(kappa >= 0.0) || !(mu > 0.0) || !(m > 0.0))
        throw DomainError("loss_finite_difference: invalid parameters");
    // Normalized moment E[g^n]/gbar^n continued to the small negative orders
    // the centered difference needs.
    auto af = [&](double n) {
        const double x = mu * kappa / (mu * kappa + m);
        double gauss =
            specfun::hyp_pfq(specfun::PFQParams({mu - m, -n}, {mu}, x), ctrl);
        return std::exp(specfun::ln_gamma(mu + n) - specfun::ln_gamma(mu) +
                        n * std::log((mu * kappa + m) / (mu * m * (1.0 + kappa)))) *
                   gauss -
               1.0;
    };
    const double h = 1e-4;
    const double d_h = (af(h) - af(-h)) / (2.0 * h);
    const double d_h2 = (af(h / 2.0) - af(-h / 2.0)) / h;
    return -kLog2e * (4.0 * d_h2 - d_h) / 3.0;
}

} // namespace fadinglab::capacity
