#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "diffrec/graph.hpp"
#include "diffrec/kernels.hpp"
#include "diffrec/split.hpp"

namespace diffrec {

// Per-user probe items on dense indices, sorted.
struct ProbeSet {
    std::vector<std::vector<std::uint32_t>> items;

    static ProbeSet build(const SplitDataset& ds);
    std::size_t count(std::uint32_t u) const { return items[u].size(); }
    bool contains(std::uint32_t u, std::uint32_t i) const;
};

struct AccuracyResult {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    std::size_t evaluated_users = 0;
};

enum class HdMode { Exact, Sampled };

struct HammingResult {
    double value = 0.0;
    double stderr_ = 0.0;    // 0 in exact mode
    bool sampled = false;
};

struct EvalReport {
    std::size_t k = 0;
    std::size_t evaluated_users = 0;
    double precision = 0.0, recall = 0.0, f1 = 0.0;
    std::size_t coverage = 0;
    double intra_diversity = 0.0;
    HammingResult hamming;
    bool empty = false;  // no evaluable users
};

// All functions below expect `lists` to already be restricted to evaluated
// users (>= 1 probe link and >= 1 training link); list items beyond rank K
// are ignored, so lists computed once at the largest K can be reused.

// Per-user precision = hits/K, recall = hits/|probe_u|, averaged over users;
// F1 = 2PR/(P+R) from the averaged P and R.
AccuracyResult precision_recall_f1(std::span<const RecommendationList> lists,
                                   const ProbeSet& probe, std::size_t k);

// Distinct items across all top-K prefixes.
std::size_t coverage(std::span<const RecommendationList> lists, std::size_t item_count,
                     std::size_t k);

// 1 - mean over users of I_u(K), where I_u(K) averages the pairwise cosine
// similarity inside the user's top-K prefix over ordered pairs.
double intra_diversity(std::span<const RecommendationList> lists, CosineCache& cosine,
                       std::size_t k);

// Mean over user pairs of 1 - q_uv/K. Exact mode aggregates per-item list
// membership counts (q sums = sum_i C(n_i,2)) instead of touching all pairs;
// sampled mode draws `sample_pairs` seeded random pairs and reports the
// standard error of the estimate.
HammingResult hamming_diversity(std::span<const RecommendationList> lists, std::size_t k,
                                HdMode mode = HdMode::Exact,
                                std::size_t sample_pairs = 100000,
                                std::uint64_t seed = 20250823);

EvalReport evaluate(std::span<const RecommendationList> lists, const ProbeSet& probe,
                    const BipartiteGraph& g, CosineCache& cosine, std::size_t k,
                    HdMode hd_mode = HdMode::Exact, std::size_t hd_sample_pairs = 100000);

}  // namespace diffrec
