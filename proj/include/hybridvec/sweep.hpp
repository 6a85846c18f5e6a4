#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hybridvec/evaluation.hpp"
#include "hybridvec/model.hpp"
#include "hybridvec/representation.hpp"

namespace hybridvec {

// One full sweep: a one-hot baseline, each hybrid scheme at every theta,
// and a distributional endpoint, each trained n_models times with seeds
// base_seed+0 .. base_seed+n_models-1 and scored on every dataset.
struct SweepConfig {
    std::filesystem::path corpus;
    bool lowercase = true;
    std::vector<std::pair<std::string, std::filesystem::path>> datasets;  // name, path
    std::vector<Scheme> hybrid_schemes = {Scheme::kMixed, Scheme::kSeparate};
    std::vector<std::uint64_t> thetas = {1, 2, 5, 10, 20, 50, 100, 1000};
    bool include_one_hot = true;
    bool include_distributional = true;
    int n_models = 10;
    std::uint64_t base_seed = 1;
    int cooc_window = 10;
    TrainingConfig training;  // seed is overridden per model
    int jobs = 1;             // parallel trainings per configuration
};

struct SweepCell {
    std::string dataset;
    std::vector<double> per_seed_rho;  // one value per model, seed order
    double mean_rho = 0.0;
    double sd_rho = 0.0;               // sample sd; 0 when n_models == 1
    double p_vs_onehot = 1.0;          // NaN when not computable
    int significant = -1;              // 1/0, or -1 for n/a
};

struct SweepRow {
    Scheme scheme;
    std::optional<std::uint64_t> theta;  // empty for one-hot / distributional
    std::vector<SweepCell> cells;        // one per dataset
    std::string label() const;
};

struct DatasetCoverage {
    std::string dataset;
    std::size_t covered = 0;
    std::size_t total = 0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    std::vector<DatasetCoverage> coverage;
    std::vector<std::uint64_t> seeds;
    std::string corpus_path;
    SweepConfig config;
};

// Runs every configuration in order (one-hot first so later rows can be
// tested against it). on_row, when set, fires as each configuration
// completes, so partial results can be flushed before an error propagates.
SweepReport run_sweep(const SweepConfig& config,
                      const std::function<void(const SweepReport&, const SweepRow&)>& on_row = {},
                      std::ostream* progress = nullptr);

// TSV with columns scheme, theta, dataset, mean_rho_x100, sd_x100,
// n_models, p_vs_onehot, significant; coverage reported in '#' header
// lines. Correlations are scaled by 100 with two decimals.
void write_sweep_header(std::ostream& out, const SweepReport& report);
void write_sweep_row(std::ostream& out, const SweepRow& row, int n_models);
void write_sweep_tsv(std::ostream& out, const SweepReport& report);

// Full metadata: config snapshot, seeds, coverage and per-seed raw rho
// values, as JSON.
void write_sweep_json(std::ostream& out, const SweepReport& report);

// Plot data: one "scheme<TAB>theta<TAB>dataset<TAB>mean_rho_x100" line per cell.
void write_plot_data(std::ostream& out, const SweepReport& report);

}  // namespace hybridvec
