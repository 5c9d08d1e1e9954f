#include "fadinglab/figures.hpp"

#include <cmath>
#include <filesystem>

namespace fadinglab::figures {

namespace {

std::vector<double> linspace_step(double start, double stop, double step) {
    std::vector<double> grid;
    for (double v = start; v <= stop + 1e-12; v += step) grid.push_back(v);
    return grid;
}

// Log grid symmetric about 1: exponents -3 .. 3 in 121 steps.
std::vector<double> eta_grid() {
    std::vector<double> grid;
    const int n = 121;
    for (int k = 0; k < n; ++k)
        grid.push_back(std::pow(10.0, -3.0 + 6.0 * k / (n - 1.0)));
    return grid;
}

const std::vector<std::pair<std::string, double>> kMuSweep = {
    {"mu0p5", 0.5}, {"mu0p7", 0.7}, {"mu1", 1.0},
    {"mu1p5", 1.5}, {"mu3", 3.0},   {"mu20", 20.0},
};

} // namespace

void FigureSpec::validate() const {
    if (figure_id < 1 || figure_id > 8) throw DomainError("figure_id must be 1..8");
    if (grid.empty()) throw DomainError("figure grid must be non-empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw DomainError("figure grid must be strictly increasing");
}

FigureSpec figure_spec(int figure_id) {
    FigureSpec spec;
    spec.figure_id = figure_id;
    switch (figure_id) {
    case 1:
        spec.kind = FigureKind::kCapacityVsSnr;
        spec.grid = linspace_step(0.0, 30.0, 1.0);
        spec.capacity_curves = {
            {"rician_k10", models::Rician{10.0, 1.0}},
            {"nakagami_m1p5", models::NakagamiM{1.5, 1.0}},
            {"rayleigh", models::Rayleigh{1.0}},
            {"hoyt_q0p2", models::NakagamiQ{0.2, 1.0}},
            {"osg", models::OneSidedGaussian{1.0}},
        };
        break;
    case 2:
        spec.kind = FigureKind::kCapacityVsSnr;
        spec.grid = linspace_step(0.0, 30.0, 1.0);
        spec.capacity_curves = {
            {"kmu_k2p7_mu2p4", models::KappaMu{2.7, 2.4, 1.0}},
            {"emu_eta0p5_mu1p2", models::EtaMu{0.5, 1.2, 1.0}},
            {"kms_k1p5_mu1p2_m2p3", models::KappaMuShadowed{1.5, 1.2, 2.3, 1.0}},
        };
        break;
    case 3: case 4: case 5: case 6: {
        spec.kind = FigureKind::kLossVsKappaShadowed;
        spec.grid = linspace_step(0.0, 20.0, 0.2);
        spec.mu_curves = kMuSweep;
        const double ms[] = {0.5, 1.0, 3.0, 20.0};
        spec.fixed_m = ms[figure_id - 3];
        break;
    }
    case 7:
        spec.kind = FigureKind::kLossVsKappa;
        spec.grid = linspace_step(0.0, 20.0, 0.2);
        spec.mu_curves = kMuSweep;
        break;
    case 8:
        spec.kind = FigureKind::kLossVsEta;
        spec.grid = eta_grid();
        spec.mu_curves = kMuSweep;
        break;
    default:
        throw DomainError("figure_id must be 1..8");
    }
    spec.validate();
    return spec;
}

std::vector<std::pair<std::string, csv::Table>> figure_tables(
    const FigureSpec& spec, const models::SeriesControl& ctrl) {
    spec.validate();
    std::vector<std::pair<std::string, csv::Table>> out;

    if (spec.kind == FigureKind::kCapacityVsSnr) {
        // AWGN reference first: exact Shannon capacity and the log2(gbar) line.
        csv::Table awgn{{"gbar_db", "gbar", "capacity_bps_hz", "asymptotic_bps_hz"}, {}};
        for (double db : spec.grid) {
            double gbar = std::pow(10.0, db / 10.0);
            awgn.rows.push_back({db, gbar, std::log2(1.0 + gbar), std::log2(gbar)});
        }
        out.emplace_back("awgn", std::move(awgn));

        for (const auto& [label, model] : spec.capacity_curves) {
            csv::Table t{{"gbar_db", "gbar", "capacity_bps_hz", "asymptotic_bps_hz"}, {}};
            for (double db : spec.grid) {
                double gbar = std::pow(10.0, db / 10.0);
                double exact = capacity::ergodic_capacity_quadrature(model, gbar, 1e-8, ctrl);
                double asym = capacity::asymptotic_capacity(model, gbar, ctrl);
                t.rows.push_back({db, gbar, exact, asym});
            }
            out.emplace_back(label, std::move(t));
        }
        return out;
    }

    for (const auto& [label, mu] : spec.mu_curves) {
        csv::Table t;
        switch (spec.kind) {
        case FigureKind::kLossVsKappaShadowed:
            t.columns = {"kappa", "loss_bps_hz"};
            for (double kappa : spec.grid)
                t.rows.push_back(
                    {kappa,
                     capacity::loss_kappa_mu_shadowed(kappa, mu, spec.fixed_m, ctrl)
                         .loss_bits});
            break;
        case FigureKind::kLossVsKappa:
            t.columns = {"kappa", "loss_bps_hz"};
            for (double kappa : spec.grid)
                t.rows.push_back({kappa, capacity::loss_kappa_mu(kappa, mu, ctrl).loss_bits});
            break;
        case FigureKind::kLossVsEta:
            t.columns = {"eta", "loss_bps_hz"};
            for (double eta : spec.grid)
                t.rows.push_back({eta, capacity::loss_eta_mu(eta, mu, ctrl).loss_bits});
            break;
        default:
            throw DomainError("figure_tables: inconsistent figure kind");
        }
        out.emplace_back(label, std::move(t));
    }
    return out;
}

std::vector<std::string> write_figure_csv(const FigureSpec& spec,
                                          const std::string& out_dir,
                                          const models::SeriesControl& ctrl) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    for (const auto& [label, table] : figure_tables(spec, ctrl)) {
        std::string path = out_dir + "/fig" + std::to_string(spec.figure_id) + "_" +
                           label + ".csv";
        csv::write_table_file(path, table);
        written.push_back(path);
    }
    return written;
}

} // namespace fadinglab::figures
