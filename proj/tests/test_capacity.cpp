#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fadinglab/capacity.hpp"
#include "fadinglab/rng.hpp"

using namespace fadinglab;
using models::FadingModel;

namespace {
double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}
constexpr double kRayleighLoss = 0.83274617727686715;
} // namespace

TEST_CASE("closed-form loss anchors") {
    CHECK(rel(capacity::loss_table(models::Rayleigh{1.0}).loss_bits, kRayleighLoss) < 1e-14);
    CHECK(rel(capacity::loss_table(models::OneSidedGaussian{1.0}).loss_bits,
              1.83274617727686715) < 1e-14);
    CHECK(rel(capacity::loss_table(models::NakagamiM{2.0, 1.0}).loss_bits,
              0.39005113638790374) < 1e-13);
    CHECK(rel(capacity::loss_table(models::Rician{10.0, 1.0}).loss_bits,
              0.13749752651147492) < 1e-12);
    CHECK(rel(capacity::loss_table(models::NakagamiQ{0.2, 1.0}).loss_bits,
              1.3632608939756469) < 1e-13);
    CHECK(rel(capacity::loss_table(models::RicianShadowed{10.0, 2.3, 1.0}).loss_bits,
              0.45817863727637182) < 1e-9);
    CHECK(rel(capacity::loss_kappa_mu_shadowed(1.5, 1.2, 2.3).loss_bits,
              0.59373134786432655) < 1e-12);
    CHECK(rel(capacity::loss_kappa_mu(2.7, 2.4).loss_bits, 0.15327484617693577) < 1e-12);
    CHECK(rel(capacity::loss_eta_mu(0.5, 1.2).loss_bits, 0.34543699676038724) < 1e-12);
    // Hoyt q = 1 row collapses to Rayleigh: 1 + ge log2 e + log2(2/4)
    CHECK(rel(capacity::loss_table(models::NakagamiQ{1.0, 1.0}).loss_bits, kRayleighLoss) <
          1e-14);
    // Rician K -> 0 limit
    CHECK(rel(capacity::loss_table(models::Rician{0.0, 1.0}).loss_bits, kRayleighLoss) <
          1e-14);
}

TEST_CASE("kappa-mu loss across the series/integral switch") {
    // plain series side (mu kappa = 11.8) and integral side (13, 400)
    CHECK(rel(capacity::loss_kappa_mu(5.9, 2.0).loss_bits, 0.10361918293241519) < 1e-11);
    CHECK(rel(capacity::loss_kappa_mu(6.5, 2.0).loss_bits, 0.095474352718288424) < 1e-11);
    CHECK(rel(capacity::loss_kappa_mu(20.0, 20.0).loss_bits, 0.0033607795608894514) < 1e-9);
    CHECK(rel(capacity::loss_kappa_mu(0.3, 0.7).loss_bits, 1.2166549982325156) < 1e-12);
}

TEST_CASE("reduction consistency of the loss formulas") {
    // kappa-mu at mu = 1 is the Rician row
    CHECK(std::abs(capacity::loss_kappa_mu(10.0, 1.0).loss_bits -
                   capacity::loss_table(models::Rician{10.0, 1.0}).loss_bits) < 1e-9);
    // Rician shadowed row equals the master formula at mu = 1
    CHECK(std::abs(capacity::loss_table(models::RicianShadowed{10.0, 2.3, 1.0}).loss_bits -
                   capacity::loss_kappa_mu_shadowed(10.0, 1.0, 2.3).loss_bits) < 1e-9);
    // eta-mu row equals the master formula under the reduction
    CHECK(std::abs(capacity::loss_eta_mu(0.5, 1.2).loss_bits -
                   capacity::loss_kappa_mu_shadowed(0.5, 2.4, 1.2).loss_bits) < 1e-9);
    // m -> inf surrogate consistency
    CHECK(std::abs(capacity::loss_kappa_mu(2.7, 2.4).loss_bits -
                   capacity::loss_kappa_mu_shadowed(2.7, 2.4, 1e6).loss_bits) < 1e-4);
    // eta = 1 rows: mu = 0.5 is Rayleigh, mu = 1 is Nakagami m = 2
    CHECK(rel(capacity::loss_eta_mu(1.0, 0.5).loss_bits, kRayleighLoss) < 1e-13);
    CHECK(std::abs(capacity::loss_eta_mu(1.0, 1.0).loss_bits -
                   capacity::loss_table(models::NakagamiM{2.0, 1.0}).loss_bits) < 1e-13);
    // m = mu: kappa drops out entirely, matching the Nakagami row
    const double nak = capacity::loss_table(models::NakagamiM{1.7, 1.0}).loss_bits;
    for (double kappa : {0.1, 1.0, 10.0})
        CHECK(std::abs(capacity::loss_kappa_mu_shadowed(kappa, 1.7, 1.7).loss_bits - nak) <
              1e-9);
}

TEST_CASE("eta symmetry of the loss") {
    for (double eta : {0.01, 0.1, 0.5})
        for (double mu : {0.5, 1.2, 3.0})
            CHECK(std::abs(capacity::loss_eta_mu(eta, mu).loss_bits -
                           capacity::loss_eta_mu(1.0 / eta, mu).loss_bits) < 1e-9);
}

TEST_CASE("finite-difference oracle agrees with the closed form") {
    for (auto [kappa, mu, m] : {std::tuple{1.5, 1.2, 2.3}, {5.0, 0.7, 0.5}, {12.0, 3.0, 20.0}}) {
        double formula = capacity::loss_kappa_mu_shadowed(kappa, mu, m).loss_bits;
        double fd = capacity::loss_finite_difference(kappa, mu, m);
        CHECK(std::abs(formula - fd) < 1e-5);
    }
    rng::RandomStream s(31, 0);
    for (int i = 0; i < 25; ++i) {
        double kappa = 20.0 * s.uniform();
        double mu = 0.5 + 19.5 * s.uniform();
        double m = 0.5 + 19.5 * s.uniform();
        if (mu * kappa / (mu * kappa + m) > 0.99) continue;
        CHECK(std::abs(capacity::loss_kappa_mu_shadowed(kappa, mu, m).loss_bits -
                       capacity::loss_finite_difference(kappa, mu, m)) < 1e-5);
    }
}

TEST_CASE("loss is nonnegative on a parameter sweep") {
    rng::RandomStream s(32, 0);
    for (int i = 0; i < 100; ++i) {
        double kappa = 20.0 * s.uniform();
        double mu = 0.5 + 19.5 * s.uniform();
        double m = 0.5 + 19.5 * s.uniform();
        CHECK(capacity::loss_kappa_mu_shadowed(kappa, mu, m).loss_bits >= 0.0);
    }
}

TEST_CASE("asymptotic capacity") {
    // Shannon line log2(gbar) minus the model loss, at 30 dB
    CHECK(rel(capacity::asymptotic_capacity(models::Rayleigh{1.0}, 1e3),
              9.9657842846620870 - kRayleighLoss) < 1e-13);
    CHECK_THROWS_AS(capacity::asymptotic_capacity(models::Rayleigh{1.0}, 0.0), DomainError);
}

TEST_CASE("ergodic capacity by quadrature") {
    // classical Rayleigh value e E1(1) log2(e) at gbar = 1
    CHECK(rel(capacity::ergodic_capacity_quadrature(models::Rayleigh{1.0}, 1.0),
              0.86034738227088595) < 1e-9);
    // Jensen bound: below log2(1 + gbar)
    for (double db : {0.0, 10.0, 20.0}) {
        double gbar = std::pow(10.0, db / 10.0);
        for (const FadingModel m : {FadingModel(models::Rayleigh{1.0}),
                                    FadingModel(models::KappaMuShadowed{1.5, 1.2, 2.3, 1.0}),
                                    FadingModel(models::EtaMu{0.5, 1.2, 1.0})}) {
            CHECK(capacity::ergodic_capacity_quadrature(m, gbar) < std::log2(1.0 + gbar));
        }
    }
    // gap to the asymptote shrinks from 10 dB to 30 dB
    const FadingModel kms = models::KappaMuShadowed{1.5, 1.2, 2.3, 1.0};
    double prev = 1e300;
    for (double db : {10.0, 20.0, 30.0}) {
        double gbar = std::pow(10.0, db / 10.0);
        double gap = std::abs(capacity::ergodic_capacity_quadrature(kms, gbar) -
                              capacity::asymptotic_capacity(kms, gbar));
        CHECK(gap < prev);
        prev = gap;
    }
    // 30 dB spot value against the frozen oracle
    CHECK(rel(capacity::ergodic_capacity_quadrature(kms, 1e3), 9.3776840594783335) < 1e-8);
}

TEST_CASE("Monte Carlo capacity estimator") {
    sampler::SampleBatch ones;
    ones.snr_values.assign(1000, 1.0);
    auto est = capacity::ergodic_capacity_mc(ones);
    CHECK(est.mean == 1.0);
    CHECK(est.std_error == 0.0);
    CHECK(est.n_samples == 1000);

    auto ray = sampler::sample_conditional(
        models::reduce_to_shadowed(models::Rayleigh{1.0}), 200000, 8);
    auto r = capacity::ergodic_capacity_mc(ray);
    CHECK(std::abs(r.mean - 0.86034738227088595) < 5.0 * r.std_error);

    auto batch = sampler::sample_conditional(
        models::ShadowedParams(1.5, 1.2, 2.3, 1e3), 200000, 9);
    auto est30 = capacity::ergodic_capacity_mc(batch);
    CHECK(std::abs(est30.mean - capacity::asymptotic_capacity(
                                    models::KappaMuShadowed{1.5, 1.2, 2.3, 1.0}, 1e3)) <
          0.05);
    sampler::SampleBatch empty;
    CHECK_THROWS_AS(capacity::ergodic_capacity_mc(empty), DomainError);
}

TEST_CASE("loss carries its model") {
    auto l = capacity::loss_table(models::KappaMu{2.7, 2.4, 1.0});
    CHECK(models::model_label(l.model) == "kmu(kappa=2.7,mu=2.4)");
}
