#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "fadinglab/rng.hpp"
#include "fadinglab/sampler.hpp"
#include "fadinglab/stats.hpp"

using namespace fadinglab;
using models::ShadowedParams;
using sampler::CommonShadow;
using sampler::IidShadow;
using sampler::SampleBatch;

namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double sd_of(const std::vector<double>& v) {
    double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / (v.size() - 1.0));
}

CommonShadow common_for(double kappa, int mu, double m) {
    CommonShadow c;
    c.mu = mu;
    c.sigma2 = 0.5;
    c.m = m;
    double amp = std::sqrt(kappa * 2.0 * c.sigma2 * mu / mu);
    c.rho.assign(mu, {amp, 0.0});
    return c;
}

IidShadow iid_for(double kappa, int mu, double m) {
    IidShadow c;
    c.mu = mu;
    c.sigma2 = 0.5;
    c.m_hat = m / mu;
    c.rho_magnitude = std::sqrt(kappa * 2.0 * c.sigma2);
    return c;
}

} // namespace

TEST_CASE("raw variate generators") {
    rng::RandomStream s(123, 0);
    const int n = 200000;

    // gamma(shape, rate): mean shape/rate
    for (auto [shape, rate] : {std::pair{0.5, 0.5}, {2.3, 1.7}, {40.0, 40.0}}) {
        std::vector<double> xs(n);
        for (auto& x : xs) x = s.gamma(shape, rate);
        double se = sd_of(xs) / std::sqrt(double(n));
        CHECK(std::abs(mean_of(xs) - shape / rate) < 5.0 * se);
    }
    // poisson across the inversion/PTRS switch
    for (double mean : {0.3, 3.0, 9.9, 10.1, 40.0, 400.0}) {
        std::vector<double> xs(n / 4);
        for (auto& x : xs) x = double(s.poisson(mean));
        double se = sd_of(xs) / std::sqrt(double(n / 4));
        CHECK(std::abs(mean_of(xs) - mean) < 5.0 * se);
        CHECK(std::abs(sd_of(xs) * sd_of(xs) - mean) < 0.05 * mean + 5.0 * se);
    }
    // normal moments
    std::vector<double> zs(n);
    for (auto& z : zs) z = s.normal();
    CHECK(std::abs(mean_of(zs)) < 5.0 / std::sqrt(double(n)));
    CHECK(std::abs(sd_of(zs) - 1.0) < 0.01);
}

TEST_CASE("determinism and stream independence") {
    ShadowedParams p(1.5, 1.2, 2.3, 1.0);
    auto a = sampler::sample_conditional(p, 10000, 42);
    auto b = sampler::sample_conditional(p, 10000, 42);
    CHECK(a.snr_values == b.snr_values);  // bit-identical
    auto c = sampler::sample_conditional(p, 10000, 43);
    CHECK(a.snr_values != c.snr_values);

    // a longer run extends a shorter one draw-for-draw (chunked streams)
    auto d = sampler::sample_conditional(p, 5000, 42);
    for (int i = 0; i < 5000; ++i) REQUIRE(a.snr_values[i] == d.snr_values[i]);

    auto e = sampler::sample_common_shadow(common_for(2.0, 2, 1.7), 1.0, 5000, 7);
    auto f = sampler::sample_common_shadow(common_for(2.0, 2, 1.7), 1.0, 5000, 7);
    CHECK(e.snr_values == f.snr_values);
    auto g = sampler::sample_iid_shadow(iid_for(2.0, 2, 1.0), 1.0, 5000, 7);
    auto h = sampler::sample_iid_shadow(iid_for(2.0, 2, 1.0), 1.0, 5000, 7);
    CHECK(g.snr_values == h.snr_values);
}

TEST_CASE("mean normalization and nonnegativity") {
    const std::size_t n = 100000;
    auto check_batch = [&](const SampleBatch& b, double gbar) {
        double se = sd_of(b.snr_values) / std::sqrt(double(n));
        CHECK(std::abs(mean_of(b.snr_values) - gbar) < 4.0 * se);
        for (double v : b.snr_values) REQUIRE(v >= 0.0);
    };
    check_batch(sampler::sample_conditional(ShadowedParams(1.5, 1.2, 2.3, 1.0), n, 1), 1.0);
    check_batch(sampler::sample_conditional(ShadowedParams(5.0, 0.6, 0.8, 2.5), n, 2), 2.5);
    check_batch(sampler::sample_common_shadow(common_for(2.0, 2, 1.7), 3.0, n, 3), 3.0);
    check_batch(sampler::sample_iid_shadow(iid_for(12.0, 1, 0.5), 1.0, n, 4), 1.0);
    check_batch(sampler::sample_kappa_mu(2.7, 2.4, 1.0, n, 5), 1.0);
}

TEST_CASE("derived parameters of the physical models") {
    auto c = common_for(2.0, 3, 1.0);
    CHECK(c.derived_kappa() == doctest::Approx(2.0).epsilon(1e-12));
    auto i = iid_for(12.0, 2, 1.0);
    CHECK(i.derived_kappa() == doctest::Approx(12.0).epsilon(1e-12));
    CHECK(i.derived_m() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(i.m_hat == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("zero dominant power collapses to Gamma(mu, mu)") {
    CommonShadow c;
    c.mu = 3;
    c.sigma2 = 0.5;
    c.m = 1.2;
    c.rho.assign(3, {0.0, 0.0});
    auto batch = sampler::sample_common_shadow(c, 1.0, 100000, 11);
    // E[g^2] = 1 + 1/mu for a Gamma(mu, mu) power
    std::vector<double> sq(batch.snr_values.size());
    for (std::size_t k = 0; k < sq.size(); ++k)
        sq[k] = batch.snr_values[k] * batch.snr_values[k];
    double se = sd_of(sq) / std::sqrt(double(sq.size()));
    CHECK(std::abs(mean_of(sq) - (1.0 + 1.0 / 3.0)) < 3.0 * se);
}

TEST_CASE("conditional sampler matches the analytic density") {
    ShadowedParams p(1.5, 1.2, 2.3, 1.0);
    auto batch = sampler::sample_conditional(p, 100000, 20150518);
    auto edges = stats::equal_probability_edges(p, 30);
    auto r = stats::chi_square_equal_bins(batch.snr_values, edges);
    CHECK(r.dof == 29);
    CHECK(r.p_value > 0.01);
}

TEST_CASE("iid shadowing with m_hat = 1 matches Gamma(mu, mu)") {
    auto batch = sampler::sample_iid_shadow(iid_for(3.0, 2, 2.0), 1.0, 100000, 5);
    // m = mu makes the distribution Gamma(mu, mu) for any kappa
    ShadowedParams p(3.0, 2.0, 2.0, 1.0);
    auto edges = stats::equal_probability_edges(p, 30);
    auto r = stats::chi_square_equal_bins(batch.snr_values, edges);
    CHECK(r.p_value > 0.01);
}

TEST_CASE("iid shadowing at mu = 2, m_hat = 0.25 matches the m = 0.5 law") {
    auto batch = sampler::sample_iid_shadow(iid_for(2.0, 2, 0.5), 1.0, 100000, 6);
    ShadowedParams p(2.0, 2.0, 0.5, 1.0);
    auto edges = stats::equal_probability_edges(p, 30);
    auto r = stats::chi_square_equal_bins(batch.snr_values, edges);
    CHECK(r.p_value > 0.01);
}

TEST_CASE("cross-model agreement at matched parameters") {
    const std::size_t n = 100000;
    const double kappa = 2.0, m = 1.0;
    const int mu = 2;
    auto a = sampler::sample_conditional(ShadowedParams(kappa, mu, m, 1.0), n, 101);
    auto b = sampler::sample_common_shadow(common_for(kappa, mu, m), 1.0, n, 102);
    auto c = sampler::sample_iid_shadow(iid_for(kappa, mu, m), 1.0, n, 103);
    CHECK(stats::ks_distance(a.snr_values, b.snr_values) < 0.01);
    CHECK(stats::ks_distance(a.snr_values, c.snr_values) < 0.01);
    CHECK(stats::ks_distance(b.snr_values, c.snr_values) < 0.01);
}

TEST_CASE("phase invariance of the shadowed dominant components") {
    auto base = common_for(2.5, 2, 1.3);
    auto rotated = base;
    for (auto& r : rotated.rho) r *= std::polar(1.0, 1.234);
    auto a = sampler::sample_common_shadow(base, 1.0, 100000, 201);
    auto b = sampler::sample_common_shadow(rotated, 1.0, 100000, 202);
    CHECK(stats::ks_distance(a.snr_values, b.snr_values) < 0.01);
}

TEST_CASE("unit-shadow slice reproduces the kappa-mu law") {
    auto batch = sampler::sample_kappa_mu(1.8, 2.0, 1.0, 100000, 77);
    // bin edges from the surrogate-reduced master distribution
    ShadowedParams p(1.8, 2.0, 1e6, 1.0);
    auto edges = stats::equal_probability_edges(p, 30);
    auto r = stats::chi_square_equal_bins(batch.snr_values, edges);
    CHECK(r.p_value > 0.01);
}

TEST_CASE("validation errors") {
    CHECK_THROWS_AS(sampler::sample_conditional(ShadowedParams(1.0, 1.0, 1.0, 1.0), 0, 1),
                    DomainError);
    CommonShadow bad;
    bad.mu = 0;
    bad.sigma2 = 0.5;
    bad.m = 1.0;
    CHECK_THROWS_AS(sampler::sample_common_shadow(bad, 1.0, 10, 1), DomainError);
    CommonShadow mismatched = common_for(1.0, 2, 1.0);
    mismatched.rho.pop_back();
    CHECK_THROWS_AS(sampler::sample_common_shadow(mismatched, 1.0, 10, 1), DomainError);
    IidShadow badiid = iid_for(1.0, 2, 1.0);
    badiid.m_hat = 0.0;
    CHECK_THROWS_AS(sampler::sample_iid_shadow(badiid, 1.0, 10, 1), DomainError);
}

TEST_CASE("batch serialization") {
    auto batch = sampler::sample_conditional(ShadowedParams(1.0, 1.0, 1.0, 1.0), 100, 9);
    const std::string path = "test_batch_out.csv";
    sampler::write_batch_csv(batch, path);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "snr");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 100);
    std::ifstream meta(path + ".json");
    CHECK(meta.good());
    std::string all((std::istreambuf_iterator<char>(meta)),
                    std::istreambuf_iterator<char>());
    CHECK(all.find("\"seed\": 9") != std::string::npos);
    CHECK(all.find("\"count\": 100") != std::string::npos);
    std::remove(path.c_str());
    std::remove((path + ".json").c_str());
}
