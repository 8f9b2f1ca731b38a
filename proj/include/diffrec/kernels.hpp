#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "diffrec/expertise.hpp"
#include "diffrec/graph.hpp"

namespace diffrec {

enum class KernelMethod { MD, ExTrA, HC, HHP, BHC };

// How the per-user expert share N_j(u) = (e(u) / S_j)^lambda enters the
// two-step allocation, where S_j sums expertise over item j's collectors.
enum class ExtraMode {
    // Step 1 hands user u the share N_j(u) of item j's unit; step 2 spreads
    // each user's resource uniformly over its k_u items. Reduces to MD under
    // uniform expertise at lambda = 1.
    UserDegree,
    // score(i) = sum_j (1/k_j) sum_u a_ui a_uj N_j(u), with no step-2
    // division; kept for comparison with UserDegree.
    LiteralEq3,
    // Factor-wise geometric blend between MD and an expertise-weighted heat
    // spreading: trans(i,j) = k_j^(lambda-1) * S_i^(-lambda) *
    // sum_u a_ui a_uj e(u)^lambda / k_u. lambda = 0 gives MD exactly; under
    // uniform expertise it equals HHP with exponent 1 - lambda; lambda = 1 is
    // heat spreading with expertise-proportional receiver averaging. This is
    // the normalization used by the `reproduce` benchmark gate.
    Hybrid,
};

struct KernelSpec {
    KernelMethod method = KernelMethod::MD;
    double lambda = 0.0;                                  // ExTrA / HHP / BHC
    ExpertiseMethod expertise = ExpertiseMethod::Uniform;  // ExTrA only
    ExtraMode mode = ExtraMode::UserDegree;                // ExTrA only
};

struct RecommendationList {
    std::uint32_t target = 0;
    std::vector<std::pair<std::uint32_t, double>> items;  // (itemIdx, score), rank order
};

// Reusable per-target scratch; one per worker thread.
struct ScoreWorkspace {
    std::vector<double> user_res;
    std::vector<double> scores;
    std::vector<std::uint32_t> candidates;
    std::vector<char> owned;
};

// Precomputes the per-node factors of one kernel so that scoring a target is
// two sparse sweeps: items of the profile push weight to their collectors,
// then each touched user spreads over its items, then a per-item receiver
// factor is applied. Scores are not masked; top_k excludes the profile.
class KernelContext {
public:
    KernelContext(const BipartiteGraph& g, const KernelSpec& spec,
                  const ExpertiseVector* expertise = nullptr);

    const KernelSpec& spec() const { return spec_; }

    // Fills ws.scores (size item_count) with the target's resource vector.
    void score(std::uint32_t target, ScoreWorkspace& ws) const;

    // Convenience wrapper allocating its own workspace.
    std::vector<double> score(std::uint32_t target) const;

private:
    const BipartiteGraph& g_;
    KernelSpec spec_;
    // pass 1: user_res[v] += src_item[j] * src_user[v] for v in users_of(j),
    //         or inv_kj[j] alone when fallback[j] is set (zero expertise sum)
    // pass 2: scores[i] += user_res[v] * spread_user[v] for i in items_of(v)
    // final : scores[i] *= recv_item[i]
    // Empty vectors mean "all ones".
    std::vector<double> src_item_, src_user_, spread_user_, recv_item_, inv_kj_;
    std::vector<char> fallback_;
};

// K highest-scoring items excluding the target's training items; ties broken
// by ascending itemIdx; zero-score candidates fill by ascending itemIdx. The
// ordering is prefix-consistent: the top-K list is a prefix of the top-K'
// list for K < K'.
RecommendationList top_k(const std::vector<double>& scores, const BipartiteGraph& g,
                         std::uint32_t target, std::size_t k);
RecommendationList top_k(const std::vector<double>& scores, const BipartiteGraph& g,
                         std::uint32_t target, std::size_t k, ScoreWorkspace& ws);

const char* to_string(KernelMethod m);
const char* to_string(ExtraMode m);
std::optional<ExtraMode> extra_mode_from_string(std::string_view s);

}  // namespace diffrec
