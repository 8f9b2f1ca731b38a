#include "diffrec/graph.hpp"

#include <algorithm>
#include <cmath>

namespace diffrec {
namespace {

// CSR from (key, value) pairs; keys need not be grouped.
void build_csr(std::size_t keys, const std::vector<Link>& links, bool by_user,
               std::vector<std::uint32_t>& offsets, std::vector<std::uint32_t>& values) {
    offsets.assign(keys + 1, 0);
    for (const auto& l : links) ++offsets[(by_user ? l.user : l.item) + 1];
    for (std::size_t k = 0; k < keys; ++k) offsets[k + 1] += offsets[k];
    values.resize(links.size());
    std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& l : links) {
        const std::uint32_t key = by_user ? l.user : l.item;
        values[cursor[key]++] = by_user ? l.item : l.user;
    }
    for (std::size_t k = 0; k < keys; ++k)
        std::sort(values.begin() + offsets[k], values.begin() + offsets[k + 1]);
}

}  // namespace

BipartiteGraph BipartiteGraph::build(const SplitDataset& ds) {
    BipartiteGraph g;
    build_csr(ds.user_count(), ds.train, true, g.user_offsets_, g.user_items_);
    build_csr(ds.item_count(), ds.train, false, g.item_offsets_, g.item_users_);
    return g;
}

BipartiteGraph BipartiteGraph::from_links(std::size_t users, std::size_t items,
                                          std::vector<Link> links) {
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    BipartiteGraph g;
    build_csr(users, links, true, g.user_offsets_, g.user_items_);
    build_csr(items, links, false, g.item_offsets_, g.item_users_);
    return g;
}

bool BipartiteGraph::has_link(std::uint32_t u, std::uint32_t i) const {
    auto items = items_of(u);
    return std::binary_search(items.begin(), items.end(), i);
}

double BipartiteGraph::item_cosine(std::uint32_t i, std::uint32_t j) const {
    if (i == j) return 1.0;
    const auto a = users_of(i);
    const auto b = users_of(j);
    if (a.empty() || b.empty()) return 0.0;
    std::size_t common = 0, x = 0, y = 0;
    while (x < a.size() && y < b.size()) {
        if (a[x] < b[y]) ++x;
        else if (a[x] > b[y]) ++y;
        else { ++common; ++x; ++y; }
    }
    if (common == 0) return 0.0;
    return static_cast<double>(common) /
           std::sqrt(static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

}  // namespace diffrec
