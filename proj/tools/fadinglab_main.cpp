// fadinglab: evaluate fading densities, high-SNR capacity losses and ergodic
// capacities, draw reproducible SNR samples, emit the bundled figure data,
// and run the self-verification suite.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 numeric failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fadinglab/capacity.hpp"
#include "fadinglab/channel_models.hpp"
#include "fadinglab/csv.hpp"
#include "fadinglab/figures.hpp"
#include "fadinglab/sampler.hpp"
#include "fadinglab/stats.hpp"
#include "fadinglab/verify.hpp"

namespace {

using namespace fadinglab;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct ModelFlags {
    std::string model;
    std::optional<double> kappa, mu, m, eta, q, K;
    std::optional<double> gbar, gbar_db;

    double gamma_bar() const {
        if (gbar && gbar_db)
            throw DomainError("pass either --gbar or --gbar-db, not both");
        if (gbar_db) return std::pow(10.0, *gbar_db / 10.0);
        return gbar.value_or(1.0);
    }

    double need(const std::optional<double>& v, const char* flag) const {
        if (!v) throw DomainError(std::string("--model ") + model + " requires " + flag);
        return *v;
    }

    models::FadingModel build() const {
        const double gb = gamma_bar();
        models::FadingModel out;
        if (model == "osg") out = models::OneSidedGaussian{gb};
        else if (model == "rayleigh") out = models::Rayleigh{gb};
        else if (model == "nakagami") out = models::NakagamiM{need(m, "--m"), gb};
        else if (model == "hoyt") out = models::NakagamiQ{need(q, "--q"), gb};
        else if (model == "rician") out = models::Rician{need(K, "--K"), gb};
        else if (model == "kmu") out = models::KappaMu{need(kappa, "--kappa"), need(mu, "--mu"), gb};
        else if (model == "emu") out = models::EtaMu{need(eta, "--eta"), need(mu, "--mu"), gb};
        else if (model == "rs") out = models::RicianShadowed{need(K, "--K"), need(m, "--m"), gb};
        else if (model == "kms")
            out = models::KappaMuShadowed{need(kappa, "--kappa"), need(mu, "--mu"),
                                          need(m, "--m"), gb};
        else throw DomainError("unknown --model " + model);
        models::validate(out);
        return out;
    }
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
    cmd->add_option("--model", flags.model, "osg|rayleigh|nakagami|hoyt|rician|kmu|emu|rs|kms")
        ->required();
    cmd->add_option("--kappa", flags.kappa, "dominant-to-scattered power ratio");
    cmd->add_option("--mu", flags.mu, "cluster count parameter");
    cmd->add_option("--m", flags.m, "shadowing severity");
    cmd->add_option("--eta", flags.eta, "scattered in-phase/quadrature power ratio");
    cmd->add_option("--q", flags.q, "Hoyt parameter, q in (0,1]");
    cmd->add_option("--K", flags.K, "Rician K factor");
    cmd->add_option("--gbar", flags.gbar, "mean SNR, linear");
    cmd->add_option("--gbar-db", flags.gbar_db, "mean SNR in dB");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("FADINGLAB_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw DomainError("FADINGLAB_SEED is not a valid 64-bit integer");
        }
    }
    return 20150518ULL;
}

struct GridSpec {
    double start = 0.0, stop = 10.0, step = 0.1;
};

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf", &g.start, &g.stop, &g.step) != 3)
        throw DomainError("--grid expects start:stop:step");
    if (!(g.step > 0.0) || g.stop < g.start)
        throw DomainError("--grid must be increasing with positive step");
    return g;
}

void emit_table(const csv::Table& table, const std::string& format,
                const std::string& out_path) {
    if (format == "json") {
        nlohmann::json j{{"columns", table.columns}, {"rows", table.rows}};
        if (out_path.empty()) {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream out(out_path, std::ios::binary);
            out << j.dump(2) << "\n";
        }
        return;
    }
    if (out_path.empty())
        csv::write_table(std::cout, table);
    else
        csv::write_table_file(out_path, table);
}

int cmd_pdf(const ModelFlags& flags, const std::string& grid_text,
            const std::string& format, const std::string& out_path) {
    const models::FadingModel model = flags.build();  // throws DomainError -> usage
    const GridSpec grid = parse_grid(grid_text);
    csv::Table table{{"gamma", "density"}, {}};
    double gamma = grid.start;
    for (int i = 0; gamma <= grid.stop + 1e-12; ++i, gamma = grid.start + i * grid.step) {
        try {
            table.rows.push_back({gamma, models::pdf_model(model, gamma)});
        } catch (const NonConvergence& e) {
            std::cerr << "numeric failure at gamma=" << gamma << ": " << e.what() << "\n";
            return kExitNumeric;
        }
    }
    emit_table(table, format, out_path);
    return kExitOk;
}

int cmd_loss(const ModelFlags& flags, const std::string& format,
             const std::string& out_path) {
    const models::FadingModel model = flags.build();
    double loss;
    try {
        loss = capacity::loss_table(model).loss_bits;
    } catch (const NonConvergence& e) {
        std::cerr << "numeric failure for " << models::model_label(model) << ": "
                  << e.what() << "\n";
        return kExitNumeric;
    }
    if (format == "json") {
        nlohmann::json j{{"model", models::model_label(model)}, {"loss_bps_hz", loss}};
        std::cout << j.dump(2) << "\n";
    } else {
        csv::Table table{{"loss_bps_hz"}, {{loss}}};
        emit_table(table, format, out_path);
    }
    return kExitOk;
}

int cmd_capacity(const ModelFlags& flags, bool with_mc, std::size_t mc_samples,
                 std::uint64_t seed, const std::string& format,
                 const std::string& out_path) {
    const models::FadingModel model = flags.build();
    const double gbar = models::mean_snr(model);
    csv::Table table{{"gbar_db", "gbar", "capacity_quadrature", "capacity_asymptotic"}, {}};
    try {
        double quad = capacity::ergodic_capacity_quadrature(model, gbar, 1e-8);
        double asym = capacity::asymptotic_capacity(model, gbar);
        std::vector<double> row{10.0 * std::log10(gbar), gbar, quad, asym};
        if (with_mc) {
            if (mc_samples < 1000)
                throw DomainError("--samples must be >= 1000 for MC estimation");
            auto batch = sampler::sample_conditional(models::reduce_to_shadowed(model),
                                                     mc_samples, seed);
            auto est = capacity::ergodic_capacity_mc(batch);
            table.columns.push_back("capacity_mc");
            table.columns.push_back("mc_std_error");
            row.push_back(est.mean);
            row.push_back(est.std_error);
        }
        table.rows.push_back(std::move(row));
    } catch (const NonConvergence& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const QuadratureFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    emit_table(table, format, out_path);
    return kExitOk;
}

int cmd_figure(int figure_id, const std::string& out_dir) {
    try {
        auto spec = figures::figure_spec(figure_id);
        auto written = figures::write_figure_csv(spec, out_dir);
        for (const auto& path : written) std::cout << path << "\n";
    } catch (const NonConvergence& e) {
        std::cerr << "numeric failure while emitting figure " << figure_id << ": "
                  << e.what() << " (partial output may be present)\n";
        return kExitNumeric;
    } catch (const QuadratureFailure& e) {
        std::cerr << "numeric failure while emitting figure " << figure_id << ": "
                  << e.what() << " (partial output may be present)\n";
        return kExitNumeric;
    }
    return kExitOk;
}

int cmd_sample(const ModelFlags& flags, const std::string& engine,
               std::size_t count, std::uint64_t seed, bool gof,
               const std::string& out_path) {
    const models::FadingModel model = flags.build();
    const models::ShadowedParams p = models::reduce_to_shadowed(model);
    sampler::SampleBatch batch;
    if (engine == "conditional") {
        batch = sampler::sample_conditional(p, count, seed);
    } else if (engine == "common" || engine == "iid") {
        // Physical constructions need an integer cluster count.
        if (std::floor(p.mu) != p.mu || p.mu < 1.0)
            throw DomainError("--engine " + engine + " requires integer mu >= 1");
        const int mu = static_cast<int>(p.mu);
        const double sigma2 = 0.5;
        if (engine == "common") {
            sampler::CommonShadow phys;
            phys.mu = mu;
            phys.sigma2 = sigma2;
            phys.m = p.m;
            const double amp = std::sqrt(p.kappa * 2.0 * sigma2 * mu / mu);
            phys.rho.assign(mu, std::complex<double>(amp, 0.0));
            batch = sampler::sample_common_shadow(phys, p.gamma_bar, count, seed);
        } else {
            sampler::IidShadow phys;
            phys.mu = mu;
            phys.sigma2 = sigma2;
            phys.m_hat = p.m / mu;
            phys.rho_magnitude = std::sqrt(p.kappa * 2.0 * sigma2);
            batch = sampler::sample_iid_shadow(phys, p.gamma_bar, count, seed);
        }
    } else {
        throw DomainError("--engine must be conditional|common|iid");
    }
    sampler::write_batch_csv(batch, out_path);
    std::cout << out_path << "\n" << out_path << ".json\n";
    if (gof) {
        auto edges = stats::equal_probability_edges(p, 30);
        auto r = stats::chi_square_equal_bins(batch.snr_values, edges);
        std::printf("chi_square=%.6f dof=%d p_value=%.6f\n", r.statistic, r.dof,
                    r.p_value);
    }
    return kExitOk;
}

int cmd_verify(std::uint64_t seed, std::optional<double> tol_override,
               const std::string& out_path) {
    verify::VerifyOptions opts;
    opts.seed = seed;
    opts.tolerance_override = tol_override;
    auto results = verify::run_all_checks(opts);
    bool all = true;
    for (const auto& r : results) {
        all = all && r.passed;
        std::printf("%-4s %-45s observed=%.3e tol=%.3e\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.observed, r.tolerance);
    }
    auto report = verify::report_json(results, opts);
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        out << report.dump(2) << "\n";
    }
    std::printf("%s (%zu checks)\n", all ? "ALL CHECKS PASSED" : "CHECKS FAILED",
                results.size());
    return all ? kExitOk : kExitVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kappa-mu shadowed fading toolkit"};
    app.require_subcommand(1);

    ModelFlags pdf_flags, loss_flags, cap_flags, sample_flags;
    std::string grid_text = "0:10:0.1";
    std::string format = "csv";
    std::string out_path;
    std::string out_dir = ".";
    std::string engine = "conditional";
    std::optional<std::uint64_t> seed_flag;
    std::optional<double> tol_override;
    std::size_t n_samples = 100000;
    int figure_id = 1;
    bool gof = false, with_mc = false;

    auto* pdf = app.add_subcommand("pdf", "evaluate a power density on a gamma grid");
    add_model_flags(pdf, pdf_flags);
    pdf->add_option("--grid", grid_text, "gamma grid start:stop:step");
    pdf->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    pdf->add_option("--out", out_path, "output file (default stdout)");

    auto* loss = app.add_subcommand("loss", "high-SNR capacity loss in bps/Hz");
    add_model_flags(loss, loss_flags);
    loss->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    loss->add_option("--out", out_path);

    auto* cap = app.add_subcommand("capacity", "ergodic capacity at the model's mean SNR");
    add_model_flags(cap, cap_flags);
    cap->add_flag("--mc", with_mc, "add a Monte Carlo estimate");
    cap->add_option("--samples", n_samples, "MC sample count");
    cap->add_option("--seed", seed_flag, "RNG seed (fallback: FADINGLAB_SEED)");
    cap->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    cap->add_option("--out", out_path);

    auto* fig = app.add_subcommand("figure", "emit bundled figure data as CSV");
    fig->add_option("--id", figure_id, "figure id 1..8")->required();
    fig->add_option("--out-dir", out_dir, "output directory");
    fig->add_option("--seed", seed_flag, "accepted for interface parity; unused");

    auto* smp = app.add_subcommand("sample", "draw instantaneous-SNR samples");
    add_model_flags(smp, sample_flags);
    smp->add_option("--engine", engine, "conditional|common|iid");
    smp->add_option("--samples", n_samples, "sample count");
    smp->add_option("--seed", seed_flag, "RNG seed (fallback: FADINGLAB_SEED)");
    smp->add_flag("--gof", gof, "print a chi-square goodness-of-fit p-value");
    smp->add_option("--out", out_path, "sample CSV path")->required();

    auto* ver = app.add_subcommand("verify", "run the self-verification suite");
    ver->add_option("--seed", seed_flag, "RNG seed (fallback: FADINGLAB_SEED)");
    ver->add_option("--tol", tol_override, "override every check tolerance");
    ver->add_option("--out", out_path, "JSON report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (pdf->parsed()) return cmd_pdf(pdf_flags, grid_text, format, out_path);
        if (loss->parsed()) return cmd_loss(loss_flags, format, out_path);
        if (cap->parsed())
            return cmd_capacity(cap_flags, with_mc, n_samples, resolve_seed(seed_flag),
                                format, out_path);
        if (fig->parsed()) return cmd_figure(figure_id, out_dir);
        if (smp->parsed())
            return cmd_sample(sample_flags, engine, n_samples, resolve_seed(seed_flag),
                              gof, out_path);
        if (ver->parsed())
            return cmd_verify(resolve_seed(seed_flag), tol_override, out_path);
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NonConvergence& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const QuadratureFailure& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
