#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "diffrec/kernels.hpp"
#include "diffrec/split.hpp"

// Independent reference implementations used to pin down expected values.
// Everything here is written against dense adjacency with explicit loops,
// deliberately avoiding the library's CSR sweeps and inverted indices.
namespace oracle {

struct DenseGraph {
    std::size_t users = 0, items = 0;
    std::vector<std::vector<char>> a;  // a[u][i]
    std::vector<double> ku, ki;

    static DenseGraph from_links(std::size_t users, std::size_t items,
                                 const std::vector<diffrec::Link>& links);
};

struct RandomGraph {
    std::size_t users = 0, items = 0;
    std::vector<diffrec::Link> links;
};

// Random bipartite graph with 2..max users/items and the given link density;
// when min_user_degree > 0, extra random links keep every user above it.
RandomGraph random_graph(std::mt19937_64& rng, std::size_t max_users, std::size_t max_items,
                         double density, std::size_t min_user_degree = 0);

// Full item-item weight matrix of the kernel, built by direct transcription
// of the transfer formulas; W[i][j] carries resource from j to i.
std::vector<std::vector<double>> dense_weights(const DenseGraph& d,
                                               const diffrec::KernelSpec& spec,
                                               const std::vector<double>& expertise);

// score(i) = sum_j a[target][j] * W[i][j]
std::vector<double> dense_scores(const DenseGraph& d, const diffrec::KernelSpec& spec,
                                 const std::vector<double>& expertise, std::uint32_t target);

// All-pairs similarity expertise, O(U^2 I).
std::vector<double> brute_sim(const DenseGraph& d, bool squared);

// All-pairs Hamming diversity over top-K prefixes.
double naive_hd(const std::vector<diffrec::RecommendationList>& lists, std::size_t k);

}  // namespace oracle
