// Acceptance suite: one pass/fail line per criterion, exit code equal to the
// number of failed criteria. Tolerances are pinned in code next to each
// check.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fadinglab/capacity.hpp"
#include "fadinglab/channel_models.hpp"
#include "fadinglab/quadrature.hpp"
#include "fadinglab/rng.hpp"
#include "fadinglab/sampler.hpp"
#include "fadinglab/stats.hpp"

namespace fs = std::filesystem;
using namespace fadinglab;
using models::FadingModel;
using models::ShadowedParams;

namespace {

int g_failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    std::printf("%-4s criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title,
                detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

std::vector<double> grid50() {
    std::vector<double> g;
    for (int i = 1; i <= 50; ++i) g.push_back(0.2 * i);
    return g;
}

// ---------------------------------------------------------------------------
// 1. Loss anchors for the two parameter-free channels.
void criterion1() {
    double ray = capacity::loss_table(models::Rayleigh{1.0}).loss_bits;
    double osg = capacity::loss_table(models::OneSidedGaussian{1.0}).loss_bits;
    bool ok = std::abs(ray - 0.8327) <= 5e-4 && std::abs(osg - 1.8327) <= 5e-4;
    std::ostringstream d;
    d << "rayleigh=" << ray << ", one-sided gaussian=" << osg << ", tol 5e-4";
    report(1, "loss anchors", ok, d.str());
}

// 2. Exact reduction identities: densities to 1e-10, losses to 1e-9.
void criterion2() {
    double worst_pdf = 0.0;
    for (double g : grid50()) {
        worst_pdf = std::max(
            worst_pdf,
            rel(models::pdf_kappa_mu_shadowed(ShadowedParams(0.5, 2.4, 1.2, 1.0), g),
                models::pdf_eta_mu(0.5, 1.2, 1.0, g)));
        worst_pdf = std::max(
            worst_pdf,
            rel(models::pdf_kappa_mu_shadowed(ShadowedParams(2.0, 1.7, 1.7, 1.0), g),
                models::pdf_gamma_dist(1.7, 1.7, g)));
    }
    double worst_loss = std::abs(capacity::loss_eta_mu(0.5, 1.2).loss_bits -
                                 capacity::loss_kappa_mu_shadowed(0.5, 2.4, 1.2).loss_bits);
    const double nakagami17 = capacity::loss_table(models::NakagamiM{1.7, 1.0}).loss_bits;
    for (double kappa : {0.1, 1.0, 10.0})
        worst_loss = std::max(
            worst_loss, std::abs(capacity::loss_kappa_mu_shadowed(kappa, 1.7, 1.7).loss_bits -
                                 nakagami17));
    bool ok = worst_pdf <= 1e-10 && worst_loss <= 1e-9;
    std::ostringstream d;
    d << "pdf sup rel err " << worst_pdf << " (tol 1e-10), loss err " << worst_loss
      << " (tol 1e-9)";
    report(2, "exact reduction identities", ok, d.str());
}

// 3. Limit reductions converge monotonically with the surrogate.
void criterion3() {
    bool ok = true;
    double prev = 1e300, final_m = 0.0;
    for (double m : {1e2, 1e3, 1e4}) {
        double sup = 0.0;
        for (double g : grid50())
            sup = std::max(sup, std::abs(models::pdf_kappa_mu_shadowed(
                                             ShadowedParams(2.7, 2.4, m, 1.0), g) -
                                         models::pdf_kappa_mu(2.7, 2.4, 1.0, g)));
        if (!(sup < prev)) ok = false;
        prev = final_m = sup;
    }
    double prev_k = 1e300, final_k = 0.0;
    for (double kappa : {1e-3, 1e-6, 1e-9}) {
        double sup = 0.0;
        for (double g : grid50())
            sup = std::max(sup, std::abs(models::pdf_kappa_mu_shadowed(
                                             ShadowedParams(kappa, 1.5, 2.3, 1.0), g) -
                                         models::pdf_gamma_dist(1.5, 1.5, g)));
        if (!(sup < prev_k)) ok = false;
        prev_k = final_k = sup;
    }
    ok = ok && final_m <= 1e-3 && final_k <= 1e-3;
    std::ostringstream d;
    d << "final sup distances: m-row " << final_m << ", kappa-row " << final_k
      << " (tol 1e-3, strictly decreasing)";
    report(3, "limit reductions converge", ok, d.str());
}

// 4. Closed-form moments against adaptive quadrature.
void criterion4() {
    rng::RandomStream s(1001, 0);
    double worst = 0.0, worst_mean = 0.0;
    for (int i = 0; i < 50; ++i) {
        ShadowedParams p(20.0 * s.uniform(), 0.5 + 19.5 * s.uniform(),
                         0.5 + 19.5 * s.uniform(), 1.0);
        for (double n : {1.0, 2.0, 3.0, 4.0}) {
            auto f = [&](double g) {
                return std::pow(g, n) * models::pdf_kappa_mu_shadowed(p, g);
            };
            double quad =
                quadrature::integrate_upper(f, 0.0, (n + 1.0) * (1.0 + p.kappa), 1e-10);
            worst = std::max(worst, rel(models::moment(p, n), quad));
        }
        worst_mean = std::max(worst_mean, rel(models::moment(p, 1.0), 1.0));
    }
    bool ok = worst <= 1e-8 && worst_mean <= 1e-14;
    std::ostringstream d;
    d << "worst rel err " << worst << " over 50 triples x n=1..4 (tol 1e-8), "
      << "mean err " << worst_mean << " (tol 1e-14)";
    report(4, "moment oracle", ok, d.str());
}

// 5. Capacity-loss formula against the finite-difference derivative oracle.
void criterion5() {
    rng::RandomStream s(1002, 0);
    double worst = 0.0;
    int accepted = 0;
    while (accepted < 100) {
        double kappa = 20.0 * s.uniform();
        double mu = 0.5 + 19.5 * s.uniform();
        double m = 0.5 + 19.5 * s.uniform();
        if (mu * kappa / (mu * kappa + m) > 0.99) continue;
        ++accepted;
        worst = std::max(worst,
                         std::abs(capacity::loss_kappa_mu_shadowed(kappa, mu, m).loss_bits -
                                  capacity::loss_finite_difference(kappa, mu, m)));
    }
    bool ok = worst <= 1e-5;
    std::ostringstream d;
    d << "worst abs err " << worst << " over 100 triples (tol 1e-5)";
    report(5, "capacity-loss derivative oracle", ok, d.str());
}

// 6. All three samplers against the analytic distribution.
void criterion6() {
    struct Case {
        const char* name;
        ShadowedParams params;
    };
    const std::vector<Case> cases = {
        {"kms(1.5,1.2,2.3)", ShadowedParams(1.5, 1.2, 2.3, 1.0)},
        {"rician K=10", models::reduce_to_shadowed(models::Rician{10.0, 1.0})},
        {"hoyt q=0.2", models::reduce_to_shadowed(models::NakagamiQ{0.2, 1.0})},
    };
    const std::size_t n = 100000;
    bool ok = true;
    std::ostringstream d;
    for (const auto& c : cases) {
        auto edges = stats::equal_probability_edges(c.params, 30);
        auto check_p = [&](const char* engine, const sampler::SampleBatch& b) {
            double p = stats::chi_square_equal_bins(b.snr_values, edges).p_value;
            if (!(p > 0.01)) ok = false;
            d << c.name << "/" << engine << " p=" << p << "; ";
        };
        check_p("conditional", sampler::sample_conditional(c.params, n, 301));
        const double mu = c.params.mu;
        if (mu == std::floor(mu) && mu >= 1.0) {
            const int imu = static_cast<int>(mu);
            const double sigma2 = 0.5;
            sampler::CommonShadow common;
            common.mu = imu;
            common.sigma2 = sigma2;
            common.m = c.params.m;
            common.rho.assign(
                imu, {std::sqrt(c.params.kappa * 2.0 * sigma2 * imu / imu), 0.0});
            check_p("common",
                    sampler::sample_common_shadow(common, c.params.gamma_bar, n, 302));
            sampler::IidShadow iid;
            iid.mu = imu;
            iid.sigma2 = sigma2;
            iid.m_hat = c.params.m / imu;
            iid.rho_magnitude = std::sqrt(c.params.kappa * 2.0 * sigma2);
            check_p("iid", sampler::sample_iid_shadow(iid, c.params.gamma_bar, n, 303));
        }
    }
    report(6, "sampler goodness of fit", ok, d.str() + "threshold p > 0.01");
}

// 7. Monte Carlo capacity vs the asymptote at 30 dB, gap shrinking from 15 dB.
void criterion7() {
    const std::vector<std::pair<const char*, FadingModel>> cases = {
        {"rayleigh", models::Rayleigh{1.0}},
        {"rician K=10", models::Rician{10.0, 1.0}},
        {"kmu(2.7,2.4)", models::KappaMu{2.7, 2.4, 1.0}},
        {"emu(0.5,1.2)", models::EtaMu{0.5, 1.2, 1.0}},
        {"kms(1.5,1.2,2.3)", models::KappaMuShadowed{1.5, 1.2, 2.3, 1.0}},
    };
    const std::size_t n = 1000000;
    bool ok = true;
    std::ostringstream d;
    std::uint64_t seed = 401;
    for (const auto& [name, model] : cases) {
        auto mc_at = [&](double db) {
            double gbar = std::pow(10.0, db / 10.0);
            ShadowedParams p = models::reduce_to_shadowed(models::with_mean_snr(model, gbar));
            // exact kappa-mu draws once the shadow is surrogate-infinite
            auto batch = p.m >= 1e6
                             ? sampler::sample_kappa_mu(p.kappa, p.mu, gbar, n, seed++)
                             : sampler::sample_conditional(p, n, seed++);
            return capacity::ergodic_capacity_mc(batch).mean -
                   capacity::asymptotic_capacity(model, gbar);
        };
        double gap30 = mc_at(30.0);
        double gap15 = mc_at(15.0);
        if (!(std::abs(gap30) <= 0.05) || !(std::abs(gap30) < std::abs(gap15))) ok = false;
        d << name << " gap30=" << gap30 << " gap15=" << gap15 << "; ";
    }
    report(7, "asymptotic capacity vs Monte Carlo", ok,
           d.str() + "tol 0.05 at 30 dB, gap shrinking");
}

// 8. Trend suite: kappa monotonicity regimes, mu monotonicity, eta symmetry.
void criterion8() {
    const std::vector<double> kappas = {0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 12.0, 16.0, 20.0};
    const std::vector<double> mus = {0.5, 0.7, 1.0, 1.5, 3.0, 20.0};
    bool inc_ok = true, dec_ok = true, mu_ok = true, sym_ok = true;
    double const_spread = 0.0, sym_worst = 0.0;
    for (double mu : mus) {
        if (mu > 0.5) {  // m = 0.5 < mu: loss increases with kappa
            double prev = -1e300;
            for (double kappa : kappas) {
                double L = capacity::loss_kappa_mu_shadowed(kappa, mu, 0.5).loss_bits;
                if (!(L > prev)) inc_ok = false;
                prev = L;
            }
        }
        if (mu < 20.0) {  // m = 20 > mu: loss decreases with kappa
            double prev = 1e300;
            for (double kappa : kappas) {
                double L = capacity::loss_kappa_mu_shadowed(kappa, mu, 20.0).loss_bits;
                if (!(L < prev)) dec_ok = false;
                prev = L;
            }
        }
        double lo = 1e300, hi = -1e300;
        for (double kappa : kappas) {  // m = mu: kappa-independent
            double L = capacity::loss_kappa_mu_shadowed(kappa, mu, mu).loss_bits;
            lo = std::min(lo, L);
            hi = std::max(hi, L);
        }
        const_spread = std::max(const_spread, hi - lo);
    }
    for (double m : {0.5, 1.0, 3.0, 20.0})
        for (double kappa : {0.0, 1.0, 5.0, 20.0}) {
            double prev = 1e300;
            for (double mu : mus) {
                double L = capacity::loss_kappa_mu_shadowed(kappa, mu, m).loss_bits;
                if (!(L < prev)) mu_ok = false;
                prev = L;
            }
        }
    for (double eta : {0.01, 0.1, 0.5})
        for (double mu : mus)
            sym_worst = std::max(sym_worst,
                                 std::abs(capacity::loss_eta_mu(eta, mu).loss_bits -
                                          capacity::loss_eta_mu(1.0 / eta, mu).loss_bits));
    sym_ok = sym_worst <= 1e-9;
    bool ok = inc_ok && dec_ok && mu_ok && sym_ok && const_spread <= 1e-9;
    std::ostringstream d;
    d << "kappa inc " << (inc_ok ? "ok" : "BAD") << ", dec " << (dec_ok ? "ok" : "BAD")
      << ", m=mu spread " << const_spread << " (tol 1e-9), mu-monotone "
      << (mu_ok ? "ok" : "BAD") << ", eta symmetry " << sym_worst << " (tol 1e-9)";
    report(8, "trend suite", ok, d.str());
}

// 9. Byte-identical artifacts for identical seeds, via the CLI.
void criterion9() {
    const std::string cli = FADINGLAB_CLI_PATH;
    fs::path dir = fs::temp_directory_path() / "fadinglab_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    auto sh = [](const std::string& cmd) {
        return std::system((cmd + " >/dev/null 2>&1").c_str());
    };

    bool ok = true;
    std::ostringstream d;
    auto s1 = dir / "s1.csv";
    auto s2 = dir / "s2.csv";
    const std::string args =
        " sample --model kms --kappa 1.5 --mu 1.2 --m 2.3 --samples 20000 --seed 7 --out ";
    ok &= sh(cli + args + s1.string()) == 0;
    ok &= sh(cli + args + s2.string()) == 0;
    bool samples_equal = slurp(s1) == slurp(s2) && !slurp(s1).empty();
    ok &= samples_equal;
    d << "sample files byte-identical: " << (samples_equal ? "yes" : "NO");

    auto f1 = dir / "f1";
    auto f2 = dir / "f2";
    ok &= sh(cli + " figure --id 3 --seed 7 --out-dir " + f1.string()) == 0;
    ok &= sh(cli + " figure --id 3 --seed 7 --out-dir " + f2.string()) == 0;
    bool figures_equal = true;
    int count = 0;
    for (const auto& entry : fs::directory_iterator(f1)) {
        ++count;
        figures_equal &= slurp(entry.path()) == slurp(f2 / entry.path().filename());
    }
    figures_equal &= count == 6;
    ok &= figures_equal;
    d << "; figure CSVs byte-identical: " << (figures_equal ? "yes" : "NO");
    fs::remove_all(dir);
    report(9, "determinism", ok, d.str());
}

} // namespace

int main() {
    std::printf("acceptance suite\n================\n");
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    if (g_failures == 0)
        std::printf("================\nall 9 criteria passed\n");
    else
        std::printf("================\n%d criteria FAILED\n", g_failures);
    return g_failures;
}
