#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "diffrec/graph.hpp"

namespace diffrec {

enum class ExpertiseMethod { Uniform, Activity, EL, InvPop, Gini, Sim, Sim2 };

enum class GiniMode {
    Standard,  // population Gini coefficient of the item-popularity multiset
    Literal,   // rank/count form; degenerates to 1 when popularities are distinct
};

struct ExpertiseVector {
    ExpertiseMethod method = ExpertiseMethod::Uniform;
    std::vector<double> values;  // one e(u) per user, finite, >= 0
};

// All extractors read training links only.
//   Uniform   e(u) = 1
//   Activity  e(u) = k_u
//   EL        e(u) = (sum of k_i over collected items) / k_u
//   InvPop    e(u) = sum of 1/k_i over collected items
//   Gini      inequality of the user's item-popularity multiset (see GiniMode)
//   Sim       e(u) = sum over v != u of |I_u ∩ I_v| / sqrt(k_u k_v)
//   Sim2      e(u) = sum over v != u of |I_u ∩ I_v| / (k_u k_v)^2
// Sim/Sim2 run through the item inverted index, never the all-pairs loop.
ExpertiseVector compute_expertise(const BipartiteGraph& g, ExpertiseMethod method,
                                  GiniMode gini_mode = GiniMode::Standard);

const char* to_string(ExpertiseMethod m);
std::optional<ExpertiseMethod> expertise_from_string(std::string_view s);

// CSV rows `userIdx,k_u,e_u`.
void dump_expertise(const BipartiteGraph& g, const ExpertiseVector& e, const std::string& path);

}  // namespace diffrec
