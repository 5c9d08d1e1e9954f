#pragma once

// Reference figure data sets: frozen parameter sweeps for the bundled study
// of capacity convergence (figures 1-2) and capacity-loss evolution over the
// fading parameters (figures 3-8). Each figure expands to one CSV per curve.

#include <string>
#include <utility>
#include <vector>

#include "fadinglab/capacity.hpp"
#include "fadinglab/csv.hpp"

namespace fadinglab::figures {

enum class FigureKind {
    kCapacityVsSnr,       // figs 1-2: exact + asymptotic capacity over gbar [dB]
    kLossVsKappaShadowed, // figs 3-6: shadowed loss over kappa, m fixed
    kLossVsKappa,         // fig 7: kappa-mu loss over kappa
    kLossVsEta,           // fig 8: eta-mu loss over eta (log grid)
};

struct FigureSpec {
    int figure_id = 0;
    FigureKind kind = FigureKind::kCapacityVsSnr;
    std::vector<double> grid;  // gbar dB / kappa / eta, strictly increasing
    std::vector<std::pair<std::string, models::FadingModel>> capacity_curves;
    std::vector<std::pair<std::string, double>> mu_curves;
    double fixed_m = 0.0;      // figs 3-6 only

    void validate() const;
};

// The frozen spec for figure id 1..8.
FigureSpec figure_spec(int figure_id);

// Expand a figure into (label, table) pairs.
std::vector<std::pair<std::string, csv::Table>> figure_tables(
    const FigureSpec& spec, const models::SeriesControl& ctrl = {});

// Write fig<k>_<label>.csv files into out_dir; returns the paths written.
std::vector<std::string> write_figure_csv(const FigureSpec& spec,
                                          const std::string& out_dir,
                                          const models::SeriesControl& ctrl = {});

} // namespace fadinglab::figures
