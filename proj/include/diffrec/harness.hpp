#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "diffrec/interactions.hpp"
#include "diffrec/kernels.hpp"
#include "diffrec/metrics.hpp"

namespace diffrec {

// Stable benchmark label ("md", "mdel", "hhp", ...) <-> kernel mapping.
std::string method_label(const KernelSpec& spec);
std::optional<KernelSpec> kernel_from_label(std::string_view label);

// Cross product of method labels and the lambda grid. Parameter-free labels
// ignore the grid; parametric ones require it to be non-empty. Throws
// std::invalid_argument on unknown labels or a missing grid.
std::vector<KernelSpec> build_method_grid(const std::vector<std::string>& labels,
                                          const std::vector<double>& lambdas,
                                          ExtraMode mode = ExtraMode::UserDegree);

struct ExperimentConfig {
    std::string dataset_path;
    std::string dataset_name = "dataset";
    double train_fraction = 0.8;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::vector<KernelSpec> methods;
    std::vector<std::size_t> k_grid = {20};
    GiniMode gini_mode = GiniMode::Standard;
    HdMode hd_mode = HdMode::Exact;
    std::size_t hd_sample_pairs = 100000;
    std::size_t threads = 0;        // 0: hardware concurrency
    std::string cache_dir;          // optional on-disk expertise cache
    int min_rating = 0;             // 0: every record is a link

    void validate() const;  // throws std::invalid_argument
};

struct CellResult {
    std::uint64_t seed = 0;
    KernelSpec spec;
    EvalReport report;
};

// One split + graph per seed, shared by every method; expertise computed once
// per (seed, method) and reused across lambda values; lists computed at the
// largest K and prefix-evaluated for the smaller ones.
std::vector<CellResult> run_experiment(const ExperimentConfig& config,
                                       const InteractionLog& log);

// Long-form rows `dataset,seed,method,lambda,K,metric,value`.
void write_long_csv(std::ostream& out, const ExperimentConfig& config,
                    const std::vector<CellResult>& results);

// Per-method argmax-over-lambda summary for each metric at each K.
void write_sweep_summary(std::ostream& out, const ExperimentConfig& config,
                         const std::vector<CellResult>& results);

// Reference MovieLens(80% train) values at K = 20 used by the benchmark gate:
// F1 within +/- 0.02 absolute, coverage within +/- 20% relative.
struct ReferenceCell {
    const char* method;
    double lambda;  // < 0 for parameter-free methods
    double f1;
    double cov;
};
std::span<const ReferenceCell> movielens_reference();

constexpr double kF1Tolerance = 0.02;
constexpr double kCoverageTolerance = 0.20;

struct ReproduceRow {
    ReferenceCell expected;
    double f1_mean = 0.0, f1_sd = 0.0;
    double cov_mean = 0.0, cov_sd = 0.0;
    bool f1_ok = false, cov_ok = false;
};

struct ReproduceResult {
    std::vector<ReproduceRow> rows;
    std::vector<CellResult> cells;
    bool all_ok = false;
};

// Runs every reference cell (mean over config.seeds) with the Hybrid ExTrA
// normalization and compares against movielens_reference().
ReproduceResult reproduce_benchmark(const ExperimentConfig& config,
                                    const InteractionLog& log,
                                    ExtraMode mode = ExtraMode::Hybrid);

void write_reproduce_table(std::ostream& out, const ReproduceResult& r);

// Expertise cache helpers (content-hash keyed); used when cache_dir is set.
std::uint64_t file_content_hash(const std::string& path);

}  // namespace diffrec
