#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "diffrec/split.hpp"

namespace diffrec {

// Immutable bipartite adjacency in CSR form, both directions, lists sorted
// ascending and duplicate-free. Safe for concurrent readers.
class BipartiteGraph {
public:
    static BipartiteGraph build(const SplitDataset& ds);
    // Direct construction for tests and synthetic graphs; links may arrive in
    // any order, duplicates are collapsed.
    static BipartiteGraph from_links(std::size_t users, std::size_t items,
                                     std::vector<Link> links);

    std::size_t user_count() const { return user_offsets_.size() - 1; }
    std::size_t item_count() const { return item_offsets_.size() - 1; }
    std::size_t link_count() const { return user_items_.size(); }

    std::uint32_t user_degree(std::uint32_t u) const {
        return user_offsets_[u + 1] - user_offsets_[u];
    }
    std::uint32_t item_degree(std::uint32_t i) const {
        return item_offsets_[i + 1] - item_offsets_[i];
    }

    std::span<const std::uint32_t> items_of(std::uint32_t u) const {
        return {user_items_.data() + user_offsets_[u], user_items_.data() + user_offsets_[u + 1]};
    }
    std::span<const std::uint32_t> users_of(std::uint32_t i) const {
        return {item_users_.data() + item_offsets_[i], item_users_.data() + item_offsets_[i + 1]};
    }

    bool has_link(std::uint32_t u, std::uint32_t i) const;

    // |U_i ∩ U_j| / sqrt(k_i k_j); 0 when either side is empty, 1 when i == j.
    double item_cosine(std::uint32_t i, std::uint32_t j) const;

private:
    std::vector<std::uint32_t> user_offsets_, user_items_;
    std::vector<std::uint32_t> item_offsets_, item_users_;
};

// Memoizing wrapper for item_cosine; only the pairs that actually occur in
// recommendation lists are ever computed, the full |I|x|I| matrix never is.
class CosineCache {
public:
    explicit CosineCache(const BipartiteGraph& g) : g_(g) {}

    double operator()(std::uint32_t i, std::uint32_t j) {
        if (i == j) return 1.0;
        if (i > j) std::swap(i, j);
        const std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | j;
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const double s = g_.item_cosine(i, j);
        memo_.emplace(key, s);
        return s;
    }

private:
    const BipartiteGraph& g_;
    std::unordered_map<std::uint64_t, double> memo_;
};

}  // namespace diffrec
