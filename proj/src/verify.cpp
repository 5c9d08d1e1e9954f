#include "fadinglab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fadinglab/capacity.hpp"
#include "fadinglab/channel_models.hpp"
#include "fadinglab/quadrature.hpp"
#include "fadinglab/rng.hpp"
#include "fadinglab/specfun.hpp"

namespace fadinglab::verify {

namespace {

using namespace fadinglab;
using models::ShadowedParams;

struct Runner {
    std::vector<CheckResult>& results;
    std::optional<double> tol_override;

    // `observed` must end up <= tolerance to pass.
    void check(const std::string& name, double tolerance, double observed,
               const std::string& detail = "") {
        CheckResult r;
        r.name = name;
        r.tolerance = tol_override.value_or(tolerance);
        r.observed = observed;
        r.passed = std::isfinite(observed) && observed <= r.tolerance;
        r.detail = detail;
        results.push_back(r);
    }

    // For boolean invariants (monotonicity etc.): observed is 0 or 1, the
    // natural tolerance 0.5; an override below 0 forces a failure.
    void check_flag(const std::string& name, bool ok, const std::string& detail = "") {
        check(name, 0.5, ok ? 0.0 : 1.0, detail);
    }
};

double rel_err(double got, double want) {
    double scale = std::max(std::abs(want), 1e-300);
    return std::abs(got - want) / scale;
}

double uniform_in(rng::RandomStream& s, double lo, double hi) {
    return lo + (hi - lo) * s.uniform();
}

double normalization_integral(const ShadowedParams& p) {
    auto f = [&](double g) { return models::pdf_kappa_mu_shadowed(p, g); };
    return quadrature::integrate_upper(f, 0.0, p.gamma_bar * (1.0 + p.kappa), 1e-8);
}

void specfun_checks(Runner& run, std::uint64_t seed) {
    using specfun::hyp_pfq;
    using specfun::PFQParams;

    rng::RandomStream s(seed, 1);
    double worst_exp = 0.0, worst_kummer = 0.0, worst_zero = 0.0;
    for (int i = 0; i < 100; ++i) {
        double a = uniform_in(s, 0.2, 20.0);
        double z = uniform_in(s, 0.0, 30.0);
        worst_exp = std::max(worst_exp,
                             rel_err(hyp_pfq(PFQParams({a}, {a}, z)), std::exp(z)));
        double kum = std::pow(2.0, 2.0 * a - 1.0) *
                     std::exp(specfun::ln_gamma(a + 0.5)) * std::pow(z, 0.5 - a) *
                     std::exp(z / 2.0) * specfun::bessel_i(a - 0.5, z / 2.0);
        if (z > 0.0)
            worst_kummer = std::max(
                worst_kummer, rel_err(hyp_pfq(PFQParams({a}, {2.0 * a}, z)), kum));
        worst_zero = std::max(
            worst_zero,
            rel_err(hyp_pfq(PFQParams({a, -a / 2.0}, {a + 1.0}, 0.0)), 1.0));
    }
    run.check("specfun.identity.exp_collapse", 1e-9, worst_exp,
              "1F1(a;a;z) against e^z, 100 random points");
    run.check("specfun.identity.kummer_bessel", 1e-9, worst_kummer,
              "1F1(a;2a;z) against the Bessel form, 100 random points");
    run.check("specfun.identity.zero_argument", 1e-9, worst_zero,
              "pFq(...;0) = 1");

    // Monotone approach of the large-parameter limits at a = 1e2, 1e3, 1e4.
    bool mono_1f1 = true, mono_pow = true, mono_3f2 = true;
    for (int i = 0; i < 10; ++i) {
        double b = uniform_in(s, 0.5, 8.0);
        double z = uniform_in(s, 0.1, 10.0);
        double target = hyp_pfq(PFQParams({}, {b}, z));
        double prev = std::numeric_limits<double>::infinity();
        for (double a : {1e2, 1e3, 1e4}) {
            double d = std::abs(hyp_pfq(PFQParams({a}, {b}, z / a)) - target);
            if (!(d < prev)) mono_1f1 = false;
            prev = d;
        }
        double x = uniform_in(s, 0.1, 5.0);
        prev = std::numeric_limits<double>::infinity();
        for (double a : {1e2, 1e3, 1e4}) {
            double d = std::abs(std::pow(1.0 + x / a, -a) - std::exp(-x));
            if (!(d < prev)) mono_pow = false;
            prev = d;
        }
        double a1 = uniform_in(s, 0.5, 3.0), a2 = uniform_in(s, 0.5, 3.0);
        double b1 = uniform_in(s, 1.0, 5.0), b2 = uniform_in(s, 1.0, 5.0);
        double zz = uniform_in(s, -8.0, 8.0);
        double target2 = hyp_pfq(PFQParams({a1, a2}, {b1, b2}, zz));
        prev = std::numeric_limits<double>::infinity();
        for (double c : {1e2, 1e3, 1e4}) {
            double d = std::abs(hyp_pfq(PFQParams({a1, a2, c}, {b1, b2}, zz / c)) - target2);
            if (!(d < prev)) mono_3f2 = false;
            prev = d;
        }
    }
    run.check_flag("specfun.limit.1f1_to_0f1_monotone", mono_1f1);
    run.check_flag("specfun.limit.pow_to_exp_monotone", mono_pow);
    run.check_flag("specfun.limit.3f2_to_2f2_monotone", mono_3f2);

    double worst_psi = 0.0;
    for (int i = 0; i < 200; ++i) {
        double x = uniform_in(s, 1e-3, 50.0);
        // residual relative to the 1/x step
        worst_psi = std::max(worst_psi,
                             std::abs(specfun::digamma(x + 1.0) - specfun::digamma(x) -
                                      1.0 / x) *
                                 x);
    }
    run.check("specfun.digamma.recurrence", 1e-12, worst_psi,
              "psi(x+1) - psi(x) = 1/x over (0, 50]");
}

void model_checks(Runner& run, std::uint64_t seed) {
    rng::RandomStream s(seed, 2);

    double worst_norm = 0.0;
    for (int i = 0; i < 200; ++i) {
        ShadowedParams p(uniform_in(s, 0.0, 20.0), uniform_in(s, 0.5, 20.0),
                         uniform_in(s, 0.5, 20.0), 1.0);
        worst_norm = std::max(worst_norm, std::abs(normalization_integral(p) - 1.0));
    }
    run.check("models.pdf.normalization", 1e-6, worst_norm,
              "integral of the density over [0, inf), 200 random triples");

    // Exact reduction rows: native density equals the reduced density.
    const std::vector<double> grid = [] {
        std::vector<double> g;
        for (int i = 1; i <= 50; ++i) g.push_back(0.2 * i);
        return g;
    }();
    auto sup_rel = [&](const models::FadingModel& m) {
        ShadowedParams p = models::reduce_to_shadowed(m);
        double worst = 0.0;
        for (double g : grid)
            worst = std::max(worst, rel_err(models::pdf_kappa_mu_shadowed(p, g),
                                            models::pdf_model(m, g)));
        return worst;
    };
    double worst_exact = 0.0;
    worst_exact = std::max(worst_exact, sup_rel(models::OneSidedGaussian{1.0}));
    worst_exact = std::max(worst_exact, sup_rel(models::Rayleigh{1.0}));
    worst_exact = std::max(worst_exact, sup_rel(models::NakagamiM{2.7, 1.0}));
    worst_exact = std::max(worst_exact, sup_rel(models::NakagamiQ{0.4, 1.0}));
    worst_exact = std::max(worst_exact, sup_rel(models::EtaMu{0.5, 1.2, 1.0}));
    worst_exact = std::max(worst_exact, sup_rel(models::RicianShadowed{4.0, 1.3, 1.0}));
    run.check("models.table1.exact_rows", 1e-9, worst_exact,
              "native vs reduced density, 50-point grid");

    double worst_limit = 0.0;
    worst_limit = std::max(worst_limit, sup_rel(models::Rician{10.0, 1.0}));
    worst_limit = std::max(worst_limit, sup_rel(models::KappaMu{2.7, 2.4, 1.0}));
    run.check("models.table1.limit_rows", 1e-3, worst_limit,
              "m -> inf surrogate rows");

    // Exactness of the two identity reductions.
    double worst_c3 = 0.0;
    for (double g : grid)
        worst_c3 = std::max(
            worst_c3,
            rel_err(models::pdf_kappa_mu_shadowed(ShadowedParams(0.5, 2.4, 1.2, 1.0), g),
                    models::pdf_eta_mu(0.5, 1.2, 1.0, g)));
    run.check("models.reduction.eta_mu_identity", 1e-10, worst_c3,
              "m = mu/2 row is an identity");

    double worst_c4 = 0.0;
    for (double g : grid)
        worst_c4 = std::max(
            worst_c4,
            rel_err(models::pdf_kappa_mu_shadowed(ShadowedParams(2.0, 1.7, 1.7, 1.0), g),
                    models::pdf_gamma_dist(1.7, 1.7, g)));
    run.check("models.reduction.gamma_identity", 1e-10, worst_c4,
              "m = mu row collapses to Gamma(mu, mu)");

    // Moments against quadrature.
    double worst_mom = 0.0;
    for (int i = 0; i < 20; ++i) {
        ShadowedParams p(uniform_in(s, 0.0, 10.0), uniform_in(s, 0.5, 10.0),
                         uniform_in(s, 0.5, 10.0), 1.0);
        for (double n : {1.0, 2.0, 3.0, 4.0}) {
            auto f = [&](double g) {
                return std::pow(g, n) * models::pdf_kappa_mu_shadowed(p, g);
            };
            double quad =
                quadrature::integrate_upper(f, 0.0, (n + 1.0) * (1.0 + p.kappa), 1e-10);
            worst_mom = std::max(worst_mom, rel_err(models::moment(p, n), quad));
        }
    }
    run.check("models.moments.quadrature", 1e-8, worst_mom,
              "closed-form E[g^n] vs adaptive quadrature, n = 1..4");

    // Monotone convergence of the shadowed density toward the kappa-mu one.
    bool monotone = true;
    double prev = std::numeric_limits<double>::infinity();
    for (double m : {1e2, 1e3, 1e4}) {
        double sup = 0.0;
        for (double g : grid)
            sup = std::max(sup, std::abs(models::pdf_kappa_mu_shadowed(
                                             ShadowedParams(2.7, 2.4, m, 1.0), g) -
                                         models::pdf_kappa_mu(2.7, 2.4, 1.0, g)));
        if (!(sup < prev)) monotone = false;
        prev = sup;
    }
    run.check_flag("models.limit.kappa_mu_monotone", monotone,
                   "sup distance decreases over m = 1e2, 1e3, 1e4");
}

void capacity_checks(Runner& run, std::uint64_t seed) {
    rng::RandomStream s(seed, 3);

    double worst_fd = 0.0;
    int accepted = 0;
    while (accepted < 100) {
        double kappa = uniform_in(s, 0.0, 20.0);
        double mu = uniform_in(s, 0.5, 20.0);
        double m = uniform_in(s, 0.5, 20.0);
        if (mu * kappa / (mu * kappa + m) > 0.99) continue;
        ++accepted;
        double formula = capacity::loss_kappa_mu_shadowed(kappa, mu, m).loss_bits;
        double fd = capacity::loss_finite_difference(kappa, mu, m);
        worst_fd = std::max(worst_fd, std::abs(formula - fd));
    }
    run.check("capacity.loss.fd_oracle", 1e-5, worst_fd,
              "closed form vs Richardson finite difference, 100 triples");

    // Every closed-form row equals the master formula under the reduction map.
    auto reduction_gap = [&](const models::FadingModel& m) {
        ShadowedParams p = models::reduce_to_shadowed(m);
        return std::abs(capacity::loss_table(m).loss_bits -
                        capacity::loss_kappa_mu_shadowed(p.kappa, p.mu, p.m).loss_bits);
    };
    double worst_exact = 0.0;
    worst_exact = std::max(worst_exact, reduction_gap(models::OneSidedGaussian{1.0}));
    worst_exact = std::max(worst_exact, reduction_gap(models::Rayleigh{1.0}));
    worst_exact = std::max(worst_exact, reduction_gap(models::NakagamiM{3.4, 1.0}));
    worst_exact = std::max(worst_exact, reduction_gap(models::NakagamiQ{0.2, 1.0}));
    worst_exact = std::max(worst_exact, reduction_gap(models::EtaMu{0.5, 1.2, 1.0}));
    worst_exact =
        std::max(worst_exact, reduction_gap(models::RicianShadowed{10.0, 2.3, 1.0}));
    run.check("capacity.table2.exact_rows", 1e-9, worst_exact,
              "closed-form rows vs master formula under the reduction map");

    double worst_limit = 0.0;
    worst_limit = std::max(worst_limit, reduction_gap(models::Rician{10.0, 1.0}));
    worst_limit = std::max(worst_limit, reduction_gap(models::KappaMu{2.7, 2.4, 1.0}));
    run.check("capacity.table2.limit_rows", 1e-4, worst_limit,
              "m -> inf surrogate rows");

    double worst_sym = 0.0;
    for (double eta : {0.01, 0.1, 0.5})
        for (double mu : {0.5, 1.2, 3.0})
            worst_sym = std::max(
                worst_sym, std::abs(capacity::loss_eta_mu(eta, mu).loss_bits -
                                    capacity::loss_eta_mu(1.0 / eta, mu).loss_bits));
    run.check("capacity.eta_symmetry", 1e-9, worst_sym,
              "loss(eta) = loss(1/eta)");

    // kappa trends: increasing for m < mu, decreasing for m > mu, constant at
    // m = mu; loss decreasing in mu throughout.
    bool inc_ok = true, dec_ok = true;
    double const_spread = 0.0;
    bool mu_dec = true, nonneg = true;
    const std::vector<double> kappas = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 12.0, 16.0, 20.0};
    const std::vector<double> mus = {0.5, 0.7, 1.0, 1.5, 3.0, 20.0};
    for (double mu : mus) {
        if (mu > 0.5) {
            double prev = -std::numeric_limits<double>::infinity();
            for (double kappa : kappas) {
                double L = capacity::loss_kappa_mu_shadowed(kappa, mu, 0.5).loss_bits;
                if (!(L > prev)) inc_ok = false;
                if (L < 0.0) nonneg = false;
                prev = L;
            }
        }
        if (mu < 20.0) {
            double prev = std::numeric_limits<double>::infinity();
            for (double kappa : kappas) {
                double L = capacity::loss_kappa_mu_shadowed(kappa, mu, 20.0).loss_bits;
                if (!(L < prev)) dec_ok = false;
                if (L < 0.0) nonneg = false;
                prev = L;
            }
        }
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (double kappa : kappas) {
            double L = capacity::loss_kappa_mu_shadowed(kappa, mu, mu).loss_bits;
            lo = std::min(lo, L);
            hi = std::max(hi, L);
        }
        const_spread = std::max(const_spread, hi - lo);
    }
    for (double m : {0.5, 1.0, 3.0, 20.0})
        for (double kappa : {0.0, 1.0, 5.0, 20.0}) {
            double prev = std::numeric_limits<double>::infinity();
            for (double mu : mus) {
                double L = capacity::loss_kappa_mu_shadowed(kappa, mu, m).loss_bits;
                if (!(L < prev)) mu_dec = false;
                prev = L;
            }
        }
    run.check_flag("capacity.trend.kappa_increasing_m_below_mu", inc_ok);
    run.check_flag("capacity.trend.kappa_decreasing_m_above_mu", dec_ok);
    run.check("capacity.trend.kappa_constant_at_m_eq_mu", 1e-9, const_spread,
              "spread of the loss over kappa at m = mu");
    run.check_flag("capacity.trend.mu_decreasing", mu_dec);
    run.check_flag("capacity.loss.nonnegative", nonneg);

    // Asymptotic exactness: the gap shrinks between 20 and 40 dB.
    bool gap_ok = true;
    std::ostringstream signs;
    const std::vector<models::FadingModel> cases = {
        models::Rayleigh{1.0}, models::Rician{10.0, 1.0},
        models::KappaMu{2.7, 2.4, 1.0}, models::EtaMu{0.5, 1.2, 1.0},
        models::KappaMuShadowed{1.5, 1.2, 2.3, 1.0}};
    for (const auto& m : cases) {
        auto gap = [&](double db) {
            double gbar = std::pow(10.0, db / 10.0);
            return capacity::ergodic_capacity_quadrature(m, gbar, 1e-8) -
                   capacity::asymptotic_capacity(m, gbar);
        };
        double g20 = gap(20.0), g40 = gap(40.0);
        if (!(std::abs(g40) <= std::abs(g20))) gap_ok = false;
        signs << models::model_label(m) << ": gap(20dB)=" << g20
              << ", gap(40dB)=" << g40 << "; ";
    }
    run.check_flag("capacity.asymptote.gap_shrinks", gap_ok, signs.str());
}

} // namespace

std::vector<CheckResult> run_all_checks(const VerifyOptions& opts) {
    std::vector<CheckResult> results;
    Runner run{results, opts.tolerance_override};
    specfun_checks(run, opts.seed);
    model_checks(run, opts.seed);
    capacity_checks(run, opts.seed);
    return results;
}

nlohmann::json report_json(const std::vector<CheckResult>& results,
                           const VerifyOptions& opts) {
    bool all = true;
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& r : results) {
        all = all && r.passed;
        checks.push_back({{"name", r.name},
                          {"passed", r.passed},
                          {"tolerance", r.tolerance},
                          {"observed", r.observed},
                          {"detail", r.detail}});
    }
    return nlohmann::json{
        {"all_passed", all},
        {"seed", opts.seed},
        {"checks", checks},
        {"notes",
         {"figure 1 uses m = 1.5 for both the exact and asymptotic Nakagami "
          "curves",
          "the asymptote is validated by gap convergence only; the sign of the "
          "finite-SNR gap is reported, not asserted"}},
    };
}

} // namespace fadinglab::verify
