#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pslab/cultures.hpp"
#include "pslab/equilibria.hpp"

namespace pslab {

struct ExperimentCellConfig {
    CultureModel model = CultureModel::IC;
    int n = 2;
    int m = 2;
    int samples = 30;
};

struct ExperimentConfig {
    std::vector<ExperimentCellConfig> cells;
    std::uint64_t root_seed = 0;
    int jobs = 1;
    Rational mallows_phi = Rational(BigInt(1), BigInt(2));
    SearchLimits limits;
};

/// One "model,n,m,samples" line per cell; '#' comments and blank lines skipped.
std::vector<ExperimentCellConfig> parse_experiment_cells(const std::string& text);

struct CellSummary {
    CultureModel model = CultureModel::IC;
    int n = 0;
    int m = 0;
    int samples_done = 0;
    int samples_skipped = 0;  // cells whose enumeration blew the budget
    // Totals across samples; means are totals / samples_done.
    std::uint64_t total_pne = 0;
    std::uint64_t total_equal = 0;
    std::uint64_t total_increase = 0;
    std::uint64_t total_decrease = 0;
    Rational max_pct_increase;
    Rational max_pct_decrease;
    double wall_seconds = 0;

    Rational mean_pne() const;
    Rational frac(std::uint64_t part) const;  // part / total_pne, exact
};

struct ExperimentResult {
    std::vector<CellSummary> cells;
    std::string per_sample_csv;
};

/// Runs every cell: generate an instance and consistent Random utilities,
/// enumerate all equilibria, classify each against the truthful social
/// welfare by exact comparison. All randomness descends from the root seed by
/// indexed derivation, so results are byte-identical for any job count.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// model,n,m,frac_equal,frac_increase,frac_decrease — fractions of all PNE
/// found in the cell, 4 decimal places.
std::string classification_csv(const std::vector<CellSummary>& cells);

/// model,n,m,max_pct_increase,max_pct_decrease,avg_num_pne.
std::string extremes_csv(const std::vector<CellSummary>& cells);

}  // namespace pslab
