#include "diffrec/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diffrec {
namespace {

std::vector<double> inverse_user_degrees(const BipartiteGraph& g) {
    std::vector<double> inv(g.user_count(), 0.0);
    for (std::uint32_t u = 0; u < inv.size(); ++u) {
        const double k = g.user_degree(u);
        if (k > 0) inv[u] = 1.0 / k;
    }
    return inv;
}

}  // namespace

KernelContext::KernelContext(const BipartiteGraph& g, const KernelSpec& spec,
                             const ExpertiseVector* expertise)
    : g_(g), spec_(spec) {
    const std::size_t users = g.user_count();
    const std::size_t items = g.item_count();
    const double lam = spec.lambda;

    if (spec.method != KernelMethod::ExTrA) {
        spread_user_ = inverse_user_degrees(g);
        switch (spec.method) {
            case KernelMethod::MD:
                src_item_.resize(items, 0.0);
                for (std::uint32_t j = 0; j < items; ++j) {
                    const double k = g.item_degree(j);
                    if (k > 0) src_item_[j] = 1.0 / k;
                }
                break;
            case KernelMethod::HC:
                recv_item_.resize(items, 0.0);
                for (std::uint32_t i = 0; i < items; ++i) {
                    const double k = g.item_degree(i);
                    if (k > 0) recv_item_[i] = 1.0 / k;
                }
                break;
            case KernelMethod::HHP:
                src_item_.resize(items, 0.0);
                recv_item_.resize(items, 0.0);
                for (std::uint32_t i = 0; i < items; ++i) {
                    const double k = g.item_degree(i);
                    if (k > 0) {
                        src_item_[i] = std::pow(k, -lam);
                        recv_item_[i] = std::pow(k, lam - 1.0);
                    }
                }
                break;
            case KernelMethod::BHC:
                recv_item_.resize(items, 0.0);
                for (std::uint32_t i = 0; i < items; ++i) {
                    const double k = g.item_degree(i);
                    if (k > 0) recv_item_[i] = std::pow(k, -lam);
                }
                break;
            default: break;
        }
        return;
    }

    if (expertise == nullptr || expertise->values.size() != users)
        throw std::invalid_argument("ExTrA kernel requires an expertise vector of user length");
    const auto& e = expertise->values;

    // S_j: expertise mass over each item's collectors
    std::vector<double> item_sum(items, 0.0);
    for (std::uint32_t j = 0; j < items; ++j)
        for (auto v : g.users_of(j)) item_sum[j] += e[v];

    src_user_.resize(users);
    for (std::uint32_t v = 0; v < users; ++v) src_user_[v] = std::pow(e[v], lam);

    inv_kj_.resize(items, 0.0);
    fallback_.assign(items, 0);
    for (std::uint32_t j = 0; j < items; ++j) {
        const double k = g.item_degree(j);
        if (k > 0) {
            inv_kj_[j] = 1.0 / k;
            // zero collector expertise: degrade to the uniform 1/k_j share
            if (item_sum[j] <= 0.0) fallback_[j] = 1;
        }
    }

    src_item_.resize(items, 0.0);
    switch (spec.mode) {
        case ExtraMode::UserDegree:
            for (std::uint32_t j = 0; j < items; ++j)
                if (item_sum[j] > 0.0) src_item_[j] = std::pow(item_sum[j], -lam);
            spread_user_ = inverse_user_degrees(g);
            break;
        case ExtraMode::LiteralEq3:
            for (std::uint32_t j = 0; j < items; ++j) {
                if (item_sum[j] > 0.0) src_item_[j] = std::pow(item_sum[j], -lam) * inv_kj_[j];
                if (fallback_[j]) inv_kj_[j] *= inv_kj_[j];  // share 1/k_j times the printed 1/k_j
            }
            break;
        case ExtraMode::Hybrid:
            for (std::uint32_t j = 0; j < items; ++j) {
                const double k = g.item_degree(j);
                if (k > 0) src_item_[j] = std::pow(k, lam - 1.0);
            }
            spread_user_ = inverse_user_degrees(g);
            recv_item_.resize(items, 1.0);
            for (std::uint32_t i = 0; i < items; ++i) {
                const double k = g.item_degree(i);
                if (item_sum[i] > 0.0) recv_item_[i] = std::pow(item_sum[i], -lam);
                else if (k > 0) recv_item_[i] = std::pow(k, -lam);
            }
            break;
    }
}

void KernelContext::score(std::uint32_t target, ScoreWorkspace& ws) const {
    const std::size_t users = g_.user_count();
    const std::size_t items = g_.item_count();
    ws.user_res.assign(users, 0.0);
    ws.scores.assign(items, 0.0);

    for (auto j : g_.items_of(target)) {
        if (!fallback_.empty() && fallback_[j]) {
            const double w = inv_kj_[j];
            for (auto v : g_.users_of(j)) ws.user_res[v] += w;
        } else {
            const double w = src_item_.empty() ? 1.0 : src_item_[j];
            if (src_user_.empty()) {
                for (auto v : g_.users_of(j)) ws.user_res[v] += w;
            } else {
                for (auto v : g_.users_of(j)) ws.user_res[v] += w * src_user_[v];
            }
        }
    }

    for (std::uint32_t v = 0; v < users; ++v) {
        double r = ws.user_res[v];
        if (r == 0.0) continue;
        if (!spread_user_.empty()) r *= spread_user_[v];
        for (auto i : g_.items_of(v)) ws.scores[i] += r;
    }

    if (!recv_item_.empty())
        for (std::size_t i = 0; i < items; ++i) ws.scores[i] *= recv_item_[i];
}

std::vector<double> KernelContext::score(std::uint32_t target) const {
    ScoreWorkspace ws;
    score(target, ws);
    return std::move(ws.scores);
}

RecommendationList top_k(const std::vector<double>& scores, const BipartiteGraph& g,
                         std::uint32_t target, std::size_t k, ScoreWorkspace& ws) {
    const std::size_t items = g.item_count();
    ws.owned.assign(items, 0);
    for (auto i : g.items_of(target)) ws.owned[i] = 1;
    ws.candidates.clear();
    for (std::uint32_t i = 0; i < items; ++i)
        if (!ws.owned[i]) ws.candidates.push_back(i);

    const std::size_t take = std::min(k, ws.candidates.size());
    std::partial_sort(ws.candidates.begin(), ws.candidates.begin() + take, ws.candidates.end(),
                      [&scores](std::uint32_t a, std::uint32_t b) {
                          if (scores[a] != scores[b]) return scores[a] > scores[b];
                          return a < b;
                      });

    RecommendationList list;
    list.target = target;
    list.items.reserve(take);
    for (std::size_t r = 0; r < take; ++r)
        list.items.emplace_back(ws.candidates[r], scores[ws.candidates[r]]);
    return list;
}

RecommendationList top_k(const std::vector<double>& scores, const BipartiteGraph& g,
                         std::uint32_t target, std::size_t k) {
    ScoreWorkspace ws;
    return top_k(scores, g, target, k, ws);
}

const char* to_string(KernelMethod m) {
    switch (m) {
        case KernelMethod::MD: return "md";
        case KernelMethod::ExTrA: return "extra";
        case KernelMethod::HC: return "hc";
        case KernelMethod::HHP: return "hhp";
        case KernelMethod::BHC: return "bhc";
    }
    return "?";
}

const char* to_string(ExtraMode m) {
    switch (m) {
        case ExtraMode::UserDegree: return "userDegree";
        case ExtraMode::LiteralEq3: return "literalEq3";
        case ExtraMode::Hybrid: return "hybrid";
    }
    return "?";
}

std::optional<ExtraMode> extra_mode_from_string(std::string_view s) {
    if (s == "userDegree") return ExtraMode::UserDegree;
    if (s == "literalEq3") return ExtraMode::LiteralEq3;
    if (s == "hybrid") return ExtraMode::Hybrid;
    return std::nullopt;
}

}  // namespace diffrec
