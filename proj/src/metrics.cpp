#include "diffrec/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "diffrec/rng.hpp"

namespace diffrec {

ProbeSet ProbeSet::build(const SplitDataset& ds) {
    ProbeSet p;
    p.items.resize(ds.user_count());
    for (const auto& l : ds.probe) p.items[l.user].push_back(l.item);
    for (auto& v : p.items) std::sort(v.begin(), v.end());
    return p;
}

bool ProbeSet::contains(std::uint32_t u, std::uint32_t i) const {
    const auto& v = items[u];
    return std::binary_search(v.begin(), v.end(), i);
}

AccuracyResult precision_recall_f1(std::span<const RecommendationList> lists,
                                   const ProbeSet& probe, std::size_t k) {
    AccuracyResult r;
    double psum = 0.0, rsum = 0.0;
    for (const auto& list : lists) {
        const auto& relevant = probe.items[list.target];
        if (relevant.empty()) continue;
        const std::size_t depth = std::min(k, list.items.size());
        std::size_t hits = 0;
        for (std::size_t pos = 0; pos < depth; ++pos)
            if (std::binary_search(relevant.begin(), relevant.end(), list.items[pos].first))
                ++hits;
        psum += static_cast<double>(hits) / static_cast<double>(k);
        rsum += static_cast<double>(hits) / static_cast<double>(relevant.size());
        ++r.evaluated_users;
    }
    if (r.evaluated_users == 0) return r;
    r.precision = psum / static_cast<double>(r.evaluated_users);
    r.recall = rsum / static_cast<double>(r.evaluated_users);
    if (r.precision + r.recall > 0.0)
        r.f1 = 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

std::size_t coverage(std::span<const RecommendationList> lists, std::size_t item_count,
                     std::size_t k) {
    std::vector<char> seen(item_count, 0);
    std::size_t distinct = 0;
    for (const auto& list : lists) {
        const std::size_t depth = std::min(k, list.items.size());
        for (std::size_t pos = 0; pos < depth; ++pos) {
            const auto i = list.items[pos].first;
            if (!seen[i]) { seen[i] = 1; ++distinct; }
        }
    }
    return distinct;
}

double intra_diversity(std::span<const RecommendationList> lists, CosineCache& cosine,
                       std::size_t k) {
    double total = 0.0;
    std::size_t counted = 0;
    for (const auto& list : lists) {
        const std::size_t depth = std::min(k, list.items.size());
        if (depth < 2) continue;
        double sum = 0.0;
        for (std::size_t a = 0; a < depth; ++a)
            for (std::size_t b = a + 1; b < depth; ++b)
                sum += cosine(list.items[a].first, list.items[b].first);
        // ordered pairs: each unordered pair counts twice
        total += 2.0 * sum / (static_cast<double>(depth) * static_cast<double>(depth - 1));
        ++counted;
    }
    if (counted == 0) return 0.0;
    return 1.0 - total / static_cast<double>(counted);
}

HammingResult hamming_diversity(std::span<const RecommendationList> lists, std::size_t k,
                                HdMode mode, std::size_t sample_pairs, std::uint64_t seed) {
    HammingResult out;
    const std::size_t n = lists.size();
    if (n < 2) return out;

    if (mode == HdMode::Exact) {
        // sum over pairs of q_uv = sum over items of C(count, 2)
        std::size_t max_item = 0;
        for (const auto& list : lists)
            for (std::size_t pos = 0; pos < std::min(k, list.items.size()); ++pos)
                max_item = std::max<std::size_t>(max_item, list.items[pos].first);
        std::vector<std::uint32_t> count(max_item + 1, 0);
        for (const auto& list : lists)
            for (std::size_t pos = 0; pos < std::min(k, list.items.size()); ++pos)
                ++count[list.items[pos].first];
        double qsum = 0.0;
        for (auto c : count)
            if (c > 1) qsum += 0.5 * static_cast<double>(c) * static_cast<double>(c - 1);
        const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
        out.value = 1.0 - qsum / (pairs * static_cast<double>(k));
        return out;
    }

    // sampled estimate over unordered pairs
    std::vector<std::vector<std::uint32_t>> sorted(n);
    for (std::size_t u = 0; u < n; ++u) {
        const auto& list = lists[u];
        const std::size_t depth = std::min(k, list.items.size());
        sorted[u].reserve(depth);
        for (std::size_t pos = 0; pos < depth; ++pos) sorted[u].push_back(list.items[pos].first);
        std::sort(sorted[u].begin(), sorted[u].end());
    }
    std::mt19937_64 gen(seed);
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t s = 0; s < sample_pairs; ++s) {
        std::size_t u = bounded_uniform(gen, n);
        std::size_t v = bounded_uniform(gen, n - 1);
        if (v >= u) ++v;
        std::size_t q = 0, x = 0, y = 0;
        const auto& a = sorted[u];
        const auto& b = sorted[v];
        while (x < a.size() && y < b.size()) {
            if (a[x] < b[y]) ++x;
            else if (a[x] > b[y]) ++y;
            else { ++q; ++x; ++y; }
        }
        const double hd = 1.0 - static_cast<double>(q) / static_cast<double>(k);
        sum += hd;
        sumsq += hd * hd;
    }
    const double m = sum / static_cast<double>(sample_pairs);
    const double var = std::max(0.0, sumsq / static_cast<double>(sample_pairs) - m * m);
    out.value = m;
    out.stderr_ = std::sqrt(var / static_cast<double>(sample_pairs));
    out.sampled = true;
    return out;
}

EvalReport evaluate(std::span<const RecommendationList> lists, const ProbeSet& probe,
                    const BipartiteGraph& g, CosineCache& cosine, std::size_t k,
                    HdMode hd_mode, std::size_t hd_sample_pairs) {
    EvalReport rep;
    rep.k = k;
    if (lists.empty()) {
        rep.empty = true;
        return rep;
    }
    const auto acc = precision_recall_f1(lists, probe, k);
    rep.evaluated_users = acc.evaluated_users;
    rep.precision = acc.precision;
    rep.recall = acc.recall;
    rep.f1 = acc.f1;
    rep.coverage = coverage(lists, g.item_count(), k);
    rep.intra_diversity = intra_diversity(lists, cosine, k);
    rep.hamming = hamming_diversity(lists, k, hd_mode, hd_sample_pairs);
    rep.empty = acc.evaluated_users == 0;
    return rep;
}

}  // namespace diffrec
