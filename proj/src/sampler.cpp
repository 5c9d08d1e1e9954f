#include "fadinglab/sampler.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fadinglab/rng.hpp"

namespace fadinglab::sampler {

namespace {

// Draws are partitioned into fixed-size chunks, one derived stream per chunk,
// so the output is independent of any internal parallelism.
constexpr std::size_t kChunk = 4096;

void require_count(std::size_t count) {
    if (count < 1) throw DomainError("sampler: count must be >= 1");
}

template <typename DrawOne>
std::vector<double> draw_batch(std::size_t count, std::uint64_t seed, DrawOne draw) {
    std::vector<double> out;
    out.reserve(count);
    const std::size_t chunks = (count + kChunk - 1) / kChunk;
    for (std::size_t c = 0; c < chunks; ++c) {
        rng::RandomStream stream(seed, c);
        const std::size_t n = std::min(kChunk, count - c * kChunk);
        for (std::size_t i = 0; i < n; ++i) out.push_back(draw(stream));
    }
    return out;
}

} // namespace

void CommonShadow::validate() const {
    if (mu < 1) throw DomainError("CommonShadow: integer mu >= 1 required");
    if (!(sigma2 > 0.0)) throw DomainError("CommonShadow: sigma2 must be > 0");
    if (!(m > 0.0)) throw DomainError("CommonShadow: m must be > 0");
    if (rho.size() != static_cast<std::size_t>(mu))
        throw DomainError("CommonShadow: need one dominant amplitude per cluster");
}

double CommonShadow::derived_kappa() const {
    double d2 = 0.0;
    for (const auto& r : rho) d2 += std::norm(r);
    return d2 / (2.0 * sigma2 * mu);
}

void IidShadow::validate() const {
    if (mu < 1) throw DomainError("IidShadow: integer mu >= 1 required");
    if (!(sigma2 > 0.0)) throw DomainError("IidShadow: sigma2 must be > 0");
    if (!(m_hat > 0.0)) throw DomainError("IidShadow: m_hat must be > 0");
    if (!(rho_magnitude >= 0.0)) throw DomainError("IidShadow: rho_magnitude must be >= 0");
}

double IidShadow::derived_kappa() const {
    return rho_magnitude * rho_magnitude / (2.0 * sigma2);
}

SampleBatch sample_common_shadow(const CommonShadow& model, double gamma_bar,
                                 std::size_t count, std::uint64_t seed) {
    model.validate();
    require_count(count);
    if (!(gamma_bar > 0.0)) throw DomainError("sampler: gamma_bar must be > 0");

    double d2 = 0.0;
    for (const auto& r : model.rho) d2 += std::norm(r);
    const double omega_bar = 2.0 * model.sigma2 * model.mu + d2;  // E|xi|^2 = 1
    const double sigma = std::sqrt(model.sigma2);

    SampleBatch batch;
    batch.snr_values = draw_batch(count, seed, [&](rng::RandomStream& s) {
        const double shadow = std::sqrt(s.gamma(model.m, model.m));
        const double phase = 2.0 * M_PI * s.uniform();
        const std::complex<double> xi = std::polar(shadow, phase);
        double omega = 0.0;
        for (const auto& r : model.rho) {
            std::complex<double> cluster(sigma * s.normal(), sigma * s.normal());
            omega += std::norm(cluster + xi * r);
        }
        return gamma_bar * omega / omega_bar;
    });
    batch.seed = seed;
    batch.gamma_bar_target = gamma_bar;
    std::ostringstream tag;
    tag << "common_shadow(mu=" << model.mu << ",kappa=" << model.derived_kappa()
        << ",m=" << model.m << ")";
    batch.model_tag = tag.str();
    return batch;
}

SampleBatch sample_iid_shadow(const IidShadow& model, double gamma_bar,
                              std::size_t count, std::uint64_t seed) {
    model.validate();
    require_count(count);
    if (!(gamma_bar > 0.0)) throw DomainError("sampler: gamma_bar must be > 0");

    const double rho2 = model.rho_magnitude * model.rho_magnitude;
    const double omega_bar = 2.0 * model.sigma2 * model.mu + model.mu * rho2;
    const double sigma = std::sqrt(model.sigma2);

    SampleBatch batch;
    batch.snr_values = draw_batch(count, seed, [&](rng::RandomStream& s) {
        double omega = 0.0;
        for (int i = 0; i < model.mu; ++i) {
            const double shadow = std::sqrt(s.gamma(model.m_hat, model.m_hat));
            const double phase = 2.0 * M_PI * s.uniform();
            const std::complex<double> xi = std::polar(shadow, phase);
            std::complex<double> cluster(sigma * s.normal(), sigma * s.normal());
            omega += std::norm(cluster + xi * model.rho_magnitude);
        }
        return gamma_bar * omega / omega_bar;
    });
    batch.seed = seed;
    batch.gamma_bar_target = gamma_bar;
    std::ostringstream tag;
    tag << "iid_shadow(mu=" << model.mu << ",kappa=" << model.derived_kappa()
        << ",m=" << model.derived_m() << ")";
    batch.model_tag = tag.str();
    return batch;
}

SampleBatch sample_conditional(const ShadowedParams& p, std::size_t count,
                               std::uint64_t seed) {
    require_count(count);
    const double rate = p.mu * (1.0 + p.kappa) / p.gamma_bar;
    SampleBatch batch;
    batch.snr_values = draw_batch(count, seed, [&](rng::RandomStream& s) {
        const double shadow_power = s.gamma(p.m, p.m);
        const long excess = s.poisson(p.mu * p.kappa * shadow_power);
        return s.gamma(p.mu + excess, rate);
    });
    batch.seed = seed;
    batch.gamma_bar_target = p.gamma_bar;
    std::ostringstream tag;
    tag << "conditional(kappa=" << p.kappa << ",mu=" << p.mu << ",m=" << p.m << ")";
    batch.model_tag = tag.str();
    return batch;
}

SampleBatch sample_kappa_mu(double kappa, double mu, double gamma_bar,
                            std::size_t count, std::uint64_t seed) {
    if (!(kappa >= 0.0)) throw DomainError("sample_kappa_mu: kappa must be >= 0");
    if (!(mu > 0.0)) throw DomainError("sample_kappa_mu: mu must be > 0");
    if (!(gamma_bar > 0.0)) throw DomainError("sample_kappa_mu: gamma_bar must be > 0");
    require_count(count);
    const double rate = mu * (1.0 + kappa) / gamma_bar;
    SampleBatch batch;
    batch.snr_values = draw_batch(count, seed, [&](rng::RandomStream& s) {
        const long excess = s.poisson(mu * kappa);
        return s.gamma(mu + excess, rate);
    });
    batch.seed = seed;
    batch.gamma_bar_target = gamma_bar;
    std::ostringstream tag;
    tag << "kappa_mu(kappa=" << kappa << ",mu=" << mu << ")";
    batch.model_tag = tag.str();
    return batch;
}

void write_batch_csv(const SampleBatch& batch, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "snr\n";
    char buf[32];
    for (double v : batch.snr_values) {
        std::snprintf(buf, sizeof buf, "%.12e\n", v);
        out << buf;
    }
    out.close();

    nlohmann::json sidecar{
        {"model", batch.model_tag},
        {"seed", batch.seed},
        {"gamma_bar", batch.gamma_bar_target},
        {"count", batch.snr_values.size()},
    };
    std::ofstream meta(path + ".json", std::ios::binary);
    if (!meta) throw std::runtime_error("cannot open " + path + ".json for writing");
    meta << sidecar.dump(2) << "\n";
}

} // namespace fadinglab::sampler
