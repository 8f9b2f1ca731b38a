#include "diffrec/expertise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace diffrec {
namespace {

std::vector<double> activity(const BipartiteGraph& g) {
    std::vector<double> e(g.user_count());
    for (std::uint32_t u = 0; u < e.size(); ++u) e[u] = g.user_degree(u);
    return e;
}

std::vector<double> el(const BipartiteGraph& g) {
    std::vector<double> e(g.user_count(), 0.0);
    for (std::uint32_t u = 0; u < e.size(); ++u) {
        const auto items = g.items_of(u);
        if (items.empty()) continue;
        double sum = 0.0;
        for (auto i : items) sum += g.item_degree(i);
        e[u] = sum / static_cast<double>(items.size());
    }
    return e;
}

std::vector<double> invpop(const BipartiteGraph& g) {
    std::vector<double> e(g.user_count(), 0.0);
    for (std::uint32_t u = 0; u < e.size(); ++u)
        for (auto i : g.items_of(u)) e[u] += 1.0 / g.item_degree(i);
    return e;
}

std::vector<double> gini(const BipartiteGraph& g, GiniMode mode) {
    std::vector<double> e(g.user_count(), 0.0);
    std::vector<double> pops;
    for (std::uint32_t u = 0; u < e.size(); ++u) {
        const auto items = g.items_of(u);
        const std::size_t n = items.size();
        if (n <= 1) continue;
        pops.clear();
        for (auto i : items) pops.push_back(g.item_degree(i));
        std::sort(pops.begin(), pops.end());
        if (mode == GiniMode::Standard) {
            // population Gini over the popularity multiset, ascending order
            double weighted = 0.0, total = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                weighted += (2.0 * (k + 1) - n - 1) * pops[k];
                total += pops[k];
            }
            e[u] = weighted / (static_cast<double>(n) * total);
        } else {
            // 2 * sum_k [(n+1-r_k)/(n+1)] * [count(r_k)/n] with competition
            // ranks over the ascending sort; equals 1 whenever popularities
            // are pairwise distinct
            double sum = 0.0;
            std::size_t k = 0;
            while (k < n) {
                std::size_t tie = k;
                while (tie < n && pops[tie] == pops[k]) ++tie;
                const double rank = static_cast<double>(k + 1);
                const double count = static_cast<double>(tie - k);
                sum += count * ((n + 1 - rank) / (n + 1)) * (count / n);
                k = tie;
            }
            e[u] = 2.0 * sum;
        }
    }
    return e;
}

std::vector<double> sim_family(const BipartiteGraph& g, bool squared) {
    const std::size_t users = g.user_count();
    std::vector<double> e(users, 0.0);
    std::vector<std::uint32_t> overlap(users, 0);
    std::vector<std::uint32_t> touched;
    for (std::uint32_t u = 0; u < users; ++u) {
        const double ku = g.user_degree(u);
        if (ku == 0) continue;
        touched.clear();
        for (auto i : g.items_of(u)) {
            for (auto v : g.users_of(i)) {
                if (v == u) continue;
                if (overlap[v]++ == 0) touched.push_back(v);
            }
        }
        // ascending v keeps the accumulation order independent of the index
        // traversal, so results are bit-identical to a plain all-pairs loop
        std::sort(touched.begin(), touched.end());
        double sum = 0.0;
        for (auto v : touched) {
            const double kv = g.user_degree(v);
            const double c = overlap[v];
            if (squared) {
                const double prod = ku * kv;
                sum += c / (prod * prod);
            } else {
                sum += c / std::sqrt(ku * kv);
            }
            overlap[v] = 0;
        }
        e[u] = sum;
    }
    return e;
}

}  // namespace

ExpertiseVector compute_expertise(const BipartiteGraph& g, ExpertiseMethod method,
                                  GiniMode gini_mode) {
    ExpertiseVector out;
    out.method = method;
    switch (method) {
        case ExpertiseMethod::Uniform: out.values.assign(g.user_count(), 1.0); break;
        case ExpertiseMethod::Activity: out.values = activity(g); break;
        case ExpertiseMethod::EL: out.values = el(g); break;
        case ExpertiseMethod::InvPop: out.values = invpop(g); break;
        case ExpertiseMethod::Gini: out.values = gini(g, gini_mode); break;
        case ExpertiseMethod::Sim: out.values = sim_family(g, false); break;
        case ExpertiseMethod::Sim2: out.values = sim_family(g, true); break;
    }
    return out;
}

const char* to_string(ExpertiseMethod m) {
    switch (m) {
        case ExpertiseMethod::Uniform: return "uniform";
        case ExpertiseMethod::Activity: return "activity";
        case ExpertiseMethod::EL: return "el";
        case ExpertiseMethod::InvPop: return "invpop";
        case ExpertiseMethod::Gini: return "gini";
        case ExpertiseMethod::Sim: return "sim";
        case ExpertiseMethod::Sim2: return "sim2";
    }
    return "?";
}

std::optional<ExpertiseMethod> expertise_from_string(std::string_view s) {
    if (s == "uniform") return ExpertiseMethod::Uniform;
    if (s == "activity") return ExpertiseMethod::Activity;
    if (s == "el") return ExpertiseMethod::EL;
    if (s == "invpop") return ExpertiseMethod::InvPop;
    if (s == "gini") return ExpertiseMethod::Gini;
    if (s == "sim") return ExpertiseMethod::Sim;
    if (s == "sim2") return ExpertiseMethod::Sim2;
    return std::nullopt;
}

void dump_expertise(const BipartiteGraph& g, const ExpertiseVector& e, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "userIdx,k_u,e_u\n";
    char buf[64];
    for (std::uint32_t u = 0; u < e.values.size(); ++u) {
        std::snprintf(buf, sizeof buf, "%.9g", e.values[u]);
        out << u << ',' << g.user_degree(u) << ',' << buf << '\n';
    }
}

}  // namespace diffrec
