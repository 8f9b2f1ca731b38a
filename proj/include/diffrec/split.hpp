#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "diffrec/interactions.hpp"

namespace diffrec {

struct Link {
    std::uint32_t user = 0;
    std::uint32_t item = 0;

    friend bool operator==(const Link&, const Link&) = default;
    friend auto operator<=>(const Link&, const Link&) = default;
};

// A seeded train/probe partition of the link set, with dense user/item
// indices assigned by first appearance over ALL records, so entities that
// only occur in the probe half still have valid indices (training degree 0).
struct SplitDataset {
    std::vector<Link> train;  // sorted by (user, item)
    std::vector<Link> probe;  // sorted by (user, item)
    std::vector<std::int64_t> user_ids;  // dense index -> original id
    std::vector<std::int64_t> item_ids;
    std::unordered_map<std::int64_t, std::uint32_t> user_index;
    std::unordered_map<std::int64_t, std::uint32_t> item_index;
    double train_fraction = 0.0;
    std::uint64_t seed = 0;

    std::size_t user_count() const { return user_ids.size(); }
    std::size_t item_count() const { return item_ids.size(); }
};

// Uniform link-level partition: shuffle all links with the seeded portable
// RNG and take the first round(fraction * n) as training.
SplitDataset split(const InteractionLog& log, double train_fraction, std::uint64_t seed);

// Writes train.edges / probe.edges (original ids, tab-separated) plus
// manifest.json with seed, fraction and counts.
void write_split(const SplitDataset& ds, const std::string& dir);

}  // namespace diffrec
