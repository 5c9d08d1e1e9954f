#include "fadinglab/channel_models.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fadinglab/quadrature.hpp"

namespace fadinglab::models {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts> struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts> overloaded(Ts...) -> overloaded<Ts...>;

void require_gbar(double gamma_bar) {
    if (!(gamma_bar > 0.0)) throw DomainError("fading model: gamma_bar must be > 0");
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

} // namespace

void validate(const FadingModel& model) {
    std::visit(overloaded{
        [](const OneSidedGaussian& v) { require_gbar(v.gamma_bar); },
        [](const Rayleigh& v) { require_gbar(v.gamma_bar); },
        [](const NakagamiM& v) {
            require_gbar(v.gamma_bar);
            if (!(v.m > 0.0)) throw DomainError("nakagami: m must be > 0");
        },
        [](const NakagamiQ& v) {
            require_gbar(v.gamma_bar);
            if (!(v.q > 0.0 && v.q <= 1.0))
                throw DomainError("hoyt: q must be in (0, 1]");
        },
        [](const Rician& v) {
            require_gbar(v.gamma_bar);
            if (!(v.K >= 0.0)) throw DomainError("rician: K must be >= 0");
        },
        [](const KappaMu& v) {
            require_gbar(v.gamma_bar);
            if (!(v.kappa >= 0.0)) throw DomainError("kappa-mu: kappa must be >= 0");
            if (!(v.mu > 0.0)) throw DomainError("kappa-mu: mu must be > 0");
        },
        [](const EtaMu& v) {
            require_gbar(v.gamma_bar);
            if (!(v.eta > 0.0)) throw DomainError("eta-mu: eta must be > 0");
            if (!(v.mu > 0.0)) throw DomainError("eta-mu: mu must be > 0");
        },
        [](const RicianShadowed& v) {
            require_gbar(v.gamma_bar);
            if (!(v.K >= 0.0)) throw DomainError("rician shadowed: K must be >= 0");
            if (!(v.m > 0.0)) throw DomainError("rician shadowed: m must be > 0");
        },
        [](const KappaMuShadowed& v) {
            require_gbar(v.gamma_bar);
            if (!(v.kappa >= 0.0)) throw DomainError("kappa-mu shadowed: kappa must be >= 0");
            if (!(v.mu > 0.0)) throw DomainError("kappa-mu shadowed: mu must be > 0");
            if (!(v.m > 0.0)) throw DomainError("kappa-mu shadowed: m must be > 0");
        },
    }, model);
}

std::string model_label(const FadingModel& model) {
    return std::visit(overloaded{
        [](const OneSidedGaussian&) { return std::string("osg"); },
        [](const Rayleigh&) { return std::string("rayleigh"); },
        [](const NakagamiM& v) { return "nakagami(m=" + fmt(v.m) + ")"; },
        [](const NakagamiQ& v) { return "hoyt(q=" + fmt(v.q) + ")"; },
        [](const Rician& v) { return "rician(K=" + fmt(v.K) + ")"; },
        [](const KappaMu& v) {
            return "kmu(kappa=" + fmt(v.kappa) + ",mu=" + fmt(v.mu) + ")";
        },
        [](const EtaMu& v) {
            return "emu(eta=" + fmt(v.eta) + ",mu=" + fmt(v.mu) + ")";
        },
        [](const RicianShadowed& v) {
            return "rs(K=" + fmt(v.K) + ",m=" + fmt(v.m) + ")";
        },
        [](const KappaMuShadowed& v) {
            return "kms(kappa=" + fmt(v.kappa) + ",mu=" + fmt(v.mu) +
                   ",m=" + fmt(v.m) + ")";
        },
    }, model);
}

double mean_snr(const FadingModel& model) {
    return std::visit([](const auto& v) { return v.gamma_bar; }, model);
}

FadingModel with_mean_snr(FadingModel model, double gamma_bar) {
    std::visit([&](auto& v) { v.gamma_bar = gamma_bar; }, model);
    return model;
}

ShadowedParams reduce_to_shadowed(const FadingModel& model, const LimitPolicy& policy) {
    policy.validate();
    validate(model);
    return std::visit(overloaded{
        [&](const OneSidedGaussian& v) {
            return ShadowedParams(policy.kappa_zero, 0.5, 0.5, v.gamma_bar);
        },
        [&](const Rayleigh& v) {
            return ShadowedParams(policy.kappa_zero, 1.0, 1.0, v.gamma_bar);
        },
        [&](const NakagamiM& v) {
            return ShadowedParams(policy.kappa_zero, v.m, v.m, v.gamma_bar);
        },
        [&](const NakagamiQ& v) {
            double kappa = (1.0 - v.q * v.q) / (2.0 * v.q * v.q);
            return ShadowedParams(kappa, 1.0, 0.5, v.gamma_bar);
        },
        [&](const Rician& v) {
            return ShadowedParams(v.K, 1.0, policy.m_infinity, v.gamma_bar);
        },
        [&](const KappaMu& v) {
            return ShadowedParams(v.kappa, v.mu, policy.m_infinity, v.gamma_bar);
        },
        [&](const EtaMu& v) {
            double eta = v.eta > 1.0 ? 1.0 / v.eta : v.eta;  // format-1 symmetry
            double kappa = (1.0 - eta) / (2.0 * eta);
            return ShadowedParams(kappa, 2.0 * v.mu, v.mu, v.gamma_bar);
        },
        [&](const RicianShadowed& v) {
            return ShadowedParams(v.K, 1.0, v.m, v.gamma_bar);
        },
        [&](const KappaMuShadowed& v) {
            return ShadowedParams(v.kappa, v.mu, v.m, v.gamma_bar);
        },
    }, model);
}

double pdf_kappa_mu_shadowed(const ShadowedParams& p, double gamma,
                             const SeriesControl& ctrl) {
    if (gamma < 0.0) throw DomainError("pdf_kappa_mu_shadowed: gamma must be >= 0");
    const double kappa = p.kappa, mu = p.mu, m = p.m, gb = p.gamma_bar;
    // m^m / (mu kappa + m)^m written as -m log1p(mu kappa / m): stays exact
    // for the m -> inf surrogates.
    const double log_pref = mu * std::log(mu) + mu * std::log1p(kappa) -
                            m * std::log1p(mu * kappa / m) -
                            specfun::ln_gamma(mu) - std::log(gb);
    if (gamma == 0.0) {
        if (mu < 1.0) return kInf;
        if (mu > 1.0) return 0.0;
        return std::exp(log_pref);
    }
    const double x = gamma / gb;
    // The confluent factor grows like e^(c x); the surviving decay rate is
    // mu(1+k) - c = mu(1+k) m/(mu k + m). Combining it with the scaled form
    // keeps the tail free of inf - inf even at the extreme abscissae an
    // adaptive tail rule probes.
    const double net_rate = mu * (1.0 + kappa) * m / (mu * kappa + m);
    if (!(x < 1e200) || net_rate * x > 3000.0 * (1.0 + mu)) return 0.0;
    const double f1_arg = mu * mu * kappa * (1.0 + kappa) / (mu * kappa + m) * x;
    double log_f = log_pref + (mu - 1.0) * std::log(x) - net_rate * x +
                   specfun::ln_hyp_1f1_scaled(m, mu, f1_arg, ctrl);
    return std::exp(log_f);
}

double pdf_kappa_mu(double kappa, double mu, double gamma_bar, double gamma,
                    const SeriesControl& ctrl) {
    if (!(kappa >= 0.0)) throw DomainError("pdf_kappa_mu: kappa must be >= 0");
    if (!(mu > 0.0)) throw DomainError("pdf_kappa_mu: mu must be > 0");
    require_gbar(gamma_bar);
    if (gamma < 0.0) throw DomainError("pdf_kappa_mu: gamma must be >= 0");
    if (kappa == 0.0)  // limit form: Gamma(mu, mu/gamma_bar)
        return pdf_gamma_dist(mu, mu / gamma_bar, gamma);
    if (gamma == 0.0) {
        if (mu < 1.0) return kInf;
        if (mu > 1.0) return 0.0;
        return (1.0 + kappa) * std::exp(-kappa) / gamma_bar;
    }
    const double x = gamma / gamma_bar;
    const double bessel_arg = 2.0 * mu * std::sqrt(kappa * (1.0 + kappa) * x);
    const double net_exponent = mu * (1.0 + kappa) * x - bessel_arg;
    if (!(x < 1e200) || net_exponent > 3000.0 * (1.0 + mu)) return 0.0;
    double log_f = std::log(mu) + 0.5 * (mu + 1.0) * std::log1p(kappa) -
                   std::log(gamma_bar) - 0.5 * (mu - 1.0) * std::log(kappa) -
                   mu * kappa + 0.5 * (mu - 1.0) * std::log(x) - net_exponent +
                   specfun::ln_bessel_i_scaled(mu - 1.0, bessel_arg, ctrl);
    return std::exp(log_f);
}

double pdf_eta_mu(double eta, double mu, double gamma_bar, double gamma,
                  const SeriesControl& ctrl) {
    if (!(eta > 0.0)) throw DomainError("pdf_eta_mu: eta must be > 0");
    if (!(mu > 0.0)) throw DomainError("pdf_eta_mu: mu must be > 0");
    require_gbar(gamma_bar);
    if (gamma < 0.0) throw DomainError("pdf_eta_mu: gamma must be >= 0");
    if (eta > 1.0) eta = 1.0 / eta;  // format-1 symmetry
    if (eta == 1.0)  // degenerate limit: Gamma(2mu, 2mu/gamma_bar)
        return pdf_gamma_dist(2.0 * mu, 2.0 * mu / gamma_bar, gamma);
    if (gamma == 0.0) {
        if (mu < 0.5) return kInf;
        if (mu > 0.5) return 0.0;
        return (1.0 + eta) / (2.0 * std::sqrt(eta) * gamma_bar);
    }
    const double x = gamma / gamma_bar;
    const double h = 1.0 + eta;
    // exponent mu(1+eta)^2/(2 eta) minus Bessel growth mu(1-eta^2)/(2 eta)
    // leaves a net decay rate of exactly mu(1+eta).
    if (!(x < 1e200) || mu * h * x > 3000.0 * (1.0 + 2.0 * mu)) return 0.0;
    const double bessel_arg = mu * (1.0 - eta * eta) / (2.0 * eta) * x;
    double log_f = 0.5 * std::log(M_PI) + (mu + 0.5) * std::log(h) +
                   (mu + 0.5) * std::log(mu) - specfun::ln_gamma(mu) -
                   std::log(gamma_bar) - 0.5 * std::log(eta) -
                   (mu - 0.5) * std::log1p(-eta) + (mu - 0.5) * std::log(x) -
                   mu * h * x +
                   specfun::ln_bessel_i_scaled(mu - 0.5, bessel_arg, ctrl);
    return std::exp(log_f);
}

double pdf_gamma_dist(double alpha, double beta, double w) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw DomainError("pdf_gamma_dist: shape and rate must be > 0");
    if (w < 0.0) throw DomainError("pdf_gamma_dist: w must be >= 0");
    if (w == 0.0) {
        if (alpha < 1.0) return kInf;
        if (alpha > 1.0) return 0.0;
        return beta;
    }
    return std::exp(alpha * std::log(beta) - specfun::ln_gamma(alpha) +
                    (alpha - 1.0) * std::log(w) - beta * w);
}

double pdf_model(const FadingModel& model, double gamma, const SeriesControl& ctrl) {
    validate(model);
    return std::visit(overloaded{
        [&](const OneSidedGaussian& v) {
            return pdf_gamma_dist(0.5, 0.5 / v.gamma_bar, gamma);
        },
        [&](const Rayleigh& v) {
            return pdf_gamma_dist(1.0, 1.0 / v.gamma_bar, gamma);
        },
        [&](const NakagamiM& v) {
            return pdf_gamma_dist(v.m, v.m / v.gamma_bar, gamma);
        },
        [&](const NakagamiQ& v) {  // Hoyt = eta-mu format 1 at eta = q^2, mu = 1/2
            return pdf_eta_mu(v.q * v.q, 0.5, v.gamma_bar, gamma, ctrl);
        },
        [&](const Rician& v) {
            return pdf_kappa_mu(v.K, 1.0, v.gamma_bar, gamma, ctrl);
        },
        [&](const KappaMu& v) {
            return pdf_kappa_mu(v.kappa, v.mu, v.gamma_bar, gamma, ctrl);
        },
        [&](const EtaMu& v) {
            return pdf_eta_mu(v.eta, v.mu, v.gamma_bar, gamma, ctrl);
        },
        [&](const RicianShadowed& v) {
            return pdf_kappa_mu_shadowed(ShadowedParams(v.K, 1.0, v.m, v.gamma_bar),
                                         gamma, ctrl);
        },
        [&](const KappaMuShadowed& v) {
            return pdf_kappa_mu_shadowed(
                ShadowedParams(v.kappa, v.mu, v.m, v.gamma_bar), gamma, ctrl);
        },
    }, model);
}

namespace {

// E[g^n]/gbar^n = G(mu+n)/G(mu) ((mu k + m)/(mu m (1+k)))^n 2F1(mu-m,-n;mu;x)
double normalized_moment(const ShadowedParams& p, double n, const SeriesControl& ctrl) {
    if (!(n > 0.0)) throw DomainError("moment: order n must be > 0");
    const double kappa = p.kappa, mu = p.mu, m = p.m;
    const double x = mu * kappa / (mu * kappa + m);
    double gauss = specfun::hyp_pfq(specfun::PFQParams({mu - m, -n}, {mu}, x), ctrl);
    double scale = std::exp(specfun::ln_gamma(mu + n) - specfun::ln_gamma(mu) +
                            n * std::log((mu * kappa + m) / (mu * m * (1.0 + kappa))));
    return scale * gauss;
}

} // namespace

double moment(const ShadowedParams& p, double n, const SeriesControl& ctrl) {
    return std::pow(p.gamma_bar, n) * normalized_moment(p, n, ctrl);
}

double amount_of_fading(const ShadowedParams& p, double n, const SeriesControl& ctrl) {
    return normalized_moment(p, n, ctrl) - 1.0;
}

double cdf_numeric(const ShadowedParams& p, double gamma, double tol,
                   const SeriesControl& ctrl) {
    if (gamma < 0.0) throw DomainError("cdf_numeric: gamma must be >= 0");
    if (!(tol > 0.0)) throw DomainError("cdf_numeric: tol must be > 0");
    if (gamma == 0.0) return 0.0;
    auto f = [&](double t) { return pdf_kappa_mu_shadowed(p, t, ctrl); };
    return quadrature::integrate_finite(f, 0.0, gamma, tol);
}

} // namespace fadinglab::models
