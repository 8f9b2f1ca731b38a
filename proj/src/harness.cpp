#include "diffrec/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "diffrec/graph.hpp"
#include "diffrec/split.hpp"

namespace diffrec {

namespace {

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= kFnvPrime;
    }
    return h;
}

std::uint64_t hash_log(const InteractionLog& log) {
    std::uint64_t h = kFnvOffset;
    for (const auto& r : log.records) {
        h = fnv1a(h, &r.user, sizeof r.user);
        h = fnv1a(h, &r.item, sizeof r.item);
    }
    return h;
}

std::string fmt(double v, int prec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", prec, v);
    return buf;
}

std::string fmt_lambda(double l) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", l);
    return buf;
}

bool has_lambda(const KernelSpec& s) {
    return s.method == KernelMethod::ExTrA || s.method == KernelMethod::HHP ||
           s.method == KernelMethod::BHC;
}

std::string lambda_field(const KernelSpec& s) {
    return has_lambda(s) ? fmt_lambda(s.lambda) : std::string();
}

// Contiguous chunks of the target list, one worker per chunk; each list
// depends only on its own target, so the partition does not affect output.
std::vector<RecommendationList> score_targets(const KernelContext& ctx,
                                              const BipartiteGraph& g,
                                              const std::vector<std::uint32_t>& targets,
                                              std::size_t k, std::size_t threads) {
    std::vector<RecommendationList> lists(targets.size());
    auto worker = [&](std::size_t lo, std::size_t hi) {
        ScoreWorkspace ws;
        for (std::size_t t = lo; t < hi; ++t) {
            ctx.score(targets[t], ws);
            lists[t] = top_k(ws.scores, g, targets[t], k, ws);
        }
    };
    if (threads <= 1 || targets.size() < 2 * threads) {
        worker(0, targets.size());
        return lists;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (targets.size() + threads - 1) / threads;
    for (std::size_t lo = 0; lo < targets.size(); lo += chunk)
        pool.emplace_back(worker, lo, std::min(lo + chunk, targets.size()));
    for (auto& t : pool) t.join();
    return lists;
}

std::string expertise_cache_name(std::uint64_t base, double fraction, std::uint64_t seed,
                                 ExpertiseMethod m, GiniMode gini_mode) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "e_%016llx_f%lld_s%llu_%s%s.csv",
                  static_cast<unsigned long long>(base),
                  static_cast<long long>(std::llround(fraction * 1e6)),
                  static_cast<unsigned long long>(seed), to_string(m),
                  m == ExpertiseMethod::Gini && gini_mode == GiniMode::Literal ? "-lit" : "");
    return buf;
}

bool load_expertise_cache(const std::filesystem::path& path, std::size_t users,
                          std::vector<double>& values) {
    std::ifstream in(path);
    if (!in) return false;
    values.assign(users, 0.0);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("userIdx", 0) == 0) continue;
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string::npos) return false;
        std::uint32_t u = 0;
        auto [p, ec] = std::from_chars(line.data(), line.data() + c1, u);
        if (ec != std::errc() || u >= users) return false;
        try {
            values[u] = std::stod(line.substr(c2 + 1));
        } catch (const std::exception&) {
            return false;
        }
        ++rows;
    }
    return rows == users;
}

void store_expertise_cache(const std::filesystem::path& path, const BipartiteGraph& g,
                           const std::vector<double>& values) {
    std::ofstream out(path);
    if (!out) return;  // cache is best effort
    out << "userIdx,k_u,e_u\n";
    char buf[64];
    for (std::size_t u = 0; u < values.size(); ++u) {
        std::snprintf(buf, sizeof buf, "%.17g", values[u]);
        out << u << ',' << g.user_degree(static_cast<std::uint32_t>(u)) << ',' << buf << '\n';
    }
}

}  // namespace

std::string method_label(const KernelSpec& spec) {
    switch (spec.method) {
        case KernelMethod::MD: return "md";
        case KernelMethod::HC: return "hc";
        case KernelMethod::HHP: return "hhp";
        case KernelMethod::BHC: return "bhc";
        case KernelMethod::ExTrA: break;
    }
    switch (spec.expertise) {
        case ExpertiseMethod::Uniform: return "mduniform";
        case ExpertiseMethod::Activity: return "mdactivity";
        case ExpertiseMethod::EL: return "mdel";
        case ExpertiseMethod::InvPop: return "mdinvpop";
        case ExpertiseMethod::Gini: return "mdgini";
        case ExpertiseMethod::Sim: return "mdsim";
        case ExpertiseMethod::Sim2: return "mdsim2";
    }
    return "unknown";
}

std::optional<KernelSpec> kernel_from_label(std::string_view label) {
    KernelSpec spec;
    if (label == "md") {
        spec.method = KernelMethod::MD;
        return spec;
    }
    if (label == "hc") {
        spec.method = KernelMethod::HC;
        return spec;
    }
    if (label == "hhp" || label == "bhc") {
        spec.method = label == "hhp" ? KernelMethod::HHP : KernelMethod::BHC;
        spec.lambda = 0.5;
        return spec;
    }
    if (label.rfind("md", 0) != 0) return std::nullopt;
    const auto e = expertise_from_string(label.substr(2));
    if (!e) return std::nullopt;
    spec.method = KernelMethod::ExTrA;
    spec.expertise = *e;
    spec.lambda = 0.7;
    return spec;
}

std::vector<KernelSpec> build_method_grid(const std::vector<std::string>& labels,
                                          const std::vector<double>& lambdas,
                                          ExtraMode mode) {
    std::vector<KernelSpec> out;
    for (const auto& label : labels) {
        auto spec = kernel_from_label(label);
        if (!spec) throw std::invalid_argument("unknown method label: " + label);
        spec->mode = mode;
        if (!has_lambda(*spec)) {
            spec->lambda = 0.0;
            out.push_back(*spec);
            continue;
        }
        if (lambdas.empty())
            throw std::invalid_argument("method " + label + " needs a non-empty lambda grid");
        for (const double l : lambdas) {
            spec->lambda = l;
            out.push_back(*spec);
        }
    }
    return out;
}

void ExperimentConfig::validate() const {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train fraction must lie strictly between 0 and 1");
    if (seeds.empty()) throw std::invalid_argument("at least one seed is required");
    if (methods.empty()) throw std::invalid_argument("method list is empty");
    if (k_grid.empty()) throw std::invalid_argument("K grid is empty");
    for (const auto k : k_grid)
        if (k == 0) throw std::invalid_argument("K must be positive");
    for (const auto& spec : methods) {
        if (has_lambda(spec) && !(spec.lambda >= 0.0 && spec.lambda <= 1.0))
            throw std::invalid_argument("lambda must lie in [0, 1] for " + method_label(spec));
    }
    if (hd_mode == HdMode::Sampled && hd_sample_pairs == 0)
        throw std::invalid_argument("sampled Hamming diversity needs a positive pair budget");
}

std::vector<CellResult> run_experiment(const ExperimentConfig& config,
                                       const InteractionLog& log) {
    config.validate();
    if (log.records.empty()) throw std::invalid_argument("interaction log is empty");

    const std::size_t threads =
        config.threads ? config.threads
                       : std::max<std::size_t>(1, std::thread::hardware_concurrency());
    const std::size_t k_max = *std::max_element(config.k_grid.begin(), config.k_grid.end());

    std::uint64_t content_hash = 0;
    bool have_hash = false;
    if (!config.cache_dir.empty()) {
        try {
            content_hash = config.dataset_path.empty() ? hash_log(log)
                                                       : file_content_hash(config.dataset_path);
        } catch (const std::exception&) {
            content_hash = hash_log(log);
        }
        have_hash = true;
        std::filesystem::create_directories(config.cache_dir);
    }

    std::vector<CellResult> out;
    out.reserve(config.seeds.size() * config.methods.size() * config.k_grid.size());

    for (const auto seed : config.seeds) {
        const SplitDataset ds = split(log, config.train_fraction, seed);
        const BipartiteGraph g = BipartiteGraph::build(ds);
        const ProbeSet probe = ProbeSet::build(ds);
        CosineCache cosine(g);

        std::vector<std::uint32_t> targets;
        for (std::uint32_t u = 0; u < ds.user_count(); ++u)
            if (!probe.items[u].empty() && g.user_degree(u) > 0) targets.push_back(u);

        std::map<int, ExpertiseVector> expertise;
        auto expertise_for = [&](ExpertiseMethod m) -> const ExpertiseVector& {
            auto it = expertise.find(static_cast<int>(m));
            if (it != expertise.end()) return it->second;
            ExpertiseVector e;
            e.method = m;
            bool loaded = false;
            std::filesystem::path cache_file;
            if (have_hash) {
                cache_file = std::filesystem::path(config.cache_dir) /
                             expertise_cache_name(content_hash, config.train_fraction, seed, m,
                                                  config.gini_mode);
                loaded = load_expertise_cache(cache_file, ds.user_count(), e.values);
            }
            if (!loaded) {
                e = compute_expertise(g, m, config.gini_mode);
                if (have_hash) store_expertise_cache(cache_file, g, e.values);
            }
            return expertise.emplace(static_cast<int>(m), std::move(e)).first->second;
        };

        for (const auto& spec : config.methods) {
            const ExpertiseVector* e = nullptr;
            if (spec.method == KernelMethod::ExTrA) e = &expertise_for(spec.expertise);
            const KernelContext ctx(g, spec, e);
            const auto lists = score_targets(ctx, g, targets, k_max, threads);
            for (const auto k : config.k_grid) {
                CellResult cell;
                cell.seed = seed;
                cell.spec = spec;
                cell.report = evaluate(lists, probe, g, cosine, k, config.hd_mode,
                                       config.hd_sample_pairs);
                out.push_back(std::move(cell));
            }
        }
    }
    return out;
}

void write_long_csv(std::ostream& out, const ExperimentConfig& config,
                    const std::vector<CellResult>& results) {
    out << "dataset,seed,method,lambda,K,metric,value\n";
    for (const auto& cell : results) {
        const std::string prefix = config.dataset_name + ',' + std::to_string(cell.seed) + ',' +
                                   method_label(cell.spec) + ',' + lambda_field(cell.spec) + ',' +
                                   std::to_string(cell.report.k) + ',';
        const auto& r = cell.report;
        out << prefix << "precision," << fmt(r.precision) << '\n';
        out << prefix << "recall," << fmt(r.recall) << '\n';
        out << prefix << "f1," << fmt(r.f1) << '\n';
        out << prefix << "coverage," << r.coverage << '\n';
        out << prefix << "intra_diversity," << fmt(r.intra_diversity) << '\n';
        out << prefix << "hamming," << fmt(r.hamming.value) << '\n';
        if (r.hamming.sampled)
            out << prefix << "hamming_stderr," << fmt(r.hamming.stderr_) << '\n';
        out << prefix << "evaluated_users," << r.evaluated_users << '\n';
    }
}

void write_sweep_summary(std::ostream& out, const ExperimentConfig& config,
                         const std::vector<CellResult>& results) {
    struct Key {
        std::string method;
        std::size_t k;
        double lambda;
        bool operator<(const Key& o) const {
            if (method != o.method) return method < o.method;
            if (k != o.k) return k < o.k;
            return lambda < o.lambda;
        }
    };
    constexpr std::array<const char*, 6> metrics = {
        "precision", "recall", "f1", "coverage", "intra_diversity", "hamming"};

    std::map<Key, std::array<std::pair<double, std::size_t>, 6>> acc;  // (sum, n) per metric
    std::map<Key, bool> parametric;
    for (const auto& cell : results) {
        const Key key{method_label(cell.spec), cell.report.k,
                      has_lambda(cell.spec) ? cell.spec.lambda : 0.0};
        auto& slot = acc[key];
        parametric[key] = has_lambda(cell.spec);
        const auto& r = cell.report;
        const std::array<double, 6> v = {r.precision,
                                         r.recall,
                                         r.f1,
                                         static_cast<double>(r.coverage),
                                         r.intra_diversity,
                                         r.hamming.value};
        for (std::size_t m = 0; m < metrics.size(); ++m) {
            slot[m].first += v[m];
            slot[m].second += 1;
        }
    }

    out << "dataset,method,K,metric,best_lambda,value\n";
    // group keys by (method, K); argmax over lambda for each metric
    for (auto it = acc.begin(); it != acc.end();) {
        const auto group_end = std::find_if(it, acc.end(), [&](const auto& kv) {
            return kv.first.method != it->first.method || kv.first.k != it->first.k;
        });
        for (std::size_t m = 0; m < metrics.size(); ++m) {
            double best = -1.0, best_lambda = 0.0;
            for (auto jt = it; jt != group_end; ++jt) {
                const double mean = jt->second[m].first / static_cast<double>(jt->second[m].second);
                if (mean > best) {
                    best = mean;
                    best_lambda = jt->first.lambda;
                }
            }
            out << config.dataset_name << ',' << it->first.method << ',' << it->first.k << ','
                << metrics[m] << ',' << (parametric[it->first] ? fmt_lambda(best_lambda) : "")
                << ',' << fmt(best) << '\n';
        }
        it = group_end;
    }
}

std::span<const ReferenceCell> movielens_reference() {
    static constexpr ReferenceCell cells[] = {
        {"md", -1.0, 0.253, 162},
        {"mdel", 0.5, 0.267, 214},      {"mdel", 0.6, 0.273, 260},
        {"mdel", 0.7, 0.280, 334},      {"mdel", 0.8, 0.277, 464},
        {"mdel", 0.9, 0.231, 716},
        {"mdactivity", 0.5, 0.260, 183},{"mdactivity", 0.6, 0.266, 215},
        {"mdactivity", 0.7, 0.270, 264},{"mdactivity", 0.8, 0.247, 357},
        {"mdactivity", 0.9, 0.202, 550},
        {"mdgini", 0.5, 0.263, 195},    {"mdgini", 0.6, 0.269, 230},
        {"mdgini", 0.7, 0.274, 292},    {"mdgini", 0.8, 0.272, 399},
        {"mdgini", 0.9, 0.227, 595},
        {"mdsim", 0.5, 0.264, 196},     {"mdsim", 0.6, 0.269, 235},
        {"mdsim", 0.7, 0.275, 295},     {"mdsim", 0.8, 0.271, 414},
        {"mdsim", 0.9, 0.224, 619},
        {"mdsim2", 0.5, 0.279, 286},    {"mdsim2", 0.6, 0.286, 345},
        {"mdsim2", 0.7, 0.287, 426},    {"mdsim2", 0.8, 0.281, 650},
        {"mdsim2", 0.9, 0.227, 911},
    };
    return cells;
}

ReproduceResult reproduce_benchmark(const ExperimentConfig& config, const InteractionLog& log,
                                    ExtraMode mode) {
    ExperimentConfig run = config;
    run.methods.clear();
    run.k_grid = {20};
    for (const auto& ref : movielens_reference()) {
        auto spec = kernel_from_label(ref.method);
        if (!spec) continue;
        if (ref.lambda >= 0.0) spec->lambda = ref.lambda;
        spec->mode = mode;
        run.methods.push_back(*spec);
    }

    ReproduceResult result;
    result.cells = run_experiment(run, log);

    for (const auto& ref : movielens_reference()) {
        ReproduceRow row;
        row.expected = ref;
        double fsum = 0, fsq = 0, csum = 0, csq = 0;
        std::size_t n = 0;
        for (const auto& cell : result.cells) {
            if (method_label(cell.spec) != ref.method) continue;
            if (ref.lambda >= 0.0 && std::abs(cell.spec.lambda - ref.lambda) > 1e-12) continue;
            const double f = cell.report.f1;
            const double c = static_cast<double>(cell.report.coverage);
            fsum += f; fsq += f * f;
            csum += c; csq += c * c;
            ++n;
        }
        if (n > 0) {
            row.f1_mean = fsum / n;
            row.cov_mean = csum / n;
            if (n > 1) {
                row.f1_sd = std::sqrt(std::max(0.0, (fsq - fsum * fsum / n) / (n - 1)));
                row.cov_sd = std::sqrt(std::max(0.0, (csq - csum * csum / n) / (n - 1)));
            }
            row.f1_ok = std::abs(row.f1_mean - ref.f1) <= kF1Tolerance;
            row.cov_ok = std::abs(row.cov_mean - ref.cov) <= kCoverageTolerance * ref.cov;
        }
        result.rows.push_back(row);
    }
    result.all_ok = std::all_of(result.rows.begin(), result.rows.end(),
                                [](const ReproduceRow& r) { return r.f1_ok && r.cov_ok; });
    return result;
}

void write_reproduce_table(std::ostream& out, const ReproduceResult& r) {
    out << "method      lambda  F1(ref)  F1(mean+-sd)       ok   cov(ref)  cov(mean+-sd)      ok\n";
    std::size_t passed = 0;
    for (const auto& row : r.rows) {
        char line[200];
        const std::string lam =
            row.expected.lambda >= 0.0 ? fmt_lambda(row.expected.lambda) : "-";
        std::snprintf(line, sizeof line,
                      "%-11s %-6s  %.3f    %.4f +- %.4f  %-4s %7.0f   %7.1f +- %-6.1f %s\n",
                      row.expected.method, lam.c_str(), row.expected.f1, row.f1_mean, row.f1_sd,
                      row.f1_ok ? "yes" : "NO", row.expected.cov, row.cov_mean, row.cov_sd,
                      row.cov_ok ? "yes" : "NO");
        out << line;
        if (row.f1_ok && row.cov_ok) ++passed;
    }
    out << passed << '/' << r.rows.size() << " cells within tolerance (F1 +-" << kF1Tolerance
        << " absolute, coverage +-" << static_cast<int>(kCoverageTolerance * 100)
        << "% relative)\n";
}

std::uint64_t file_content_hash(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open for hashing: " + path);
    std::uint64_t h = kFnvOffset;
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0)
        h = fnv1a(h, buf, static_cast<std::size_t>(in.gcount()));
    return h;
}

}  // namespace diffrec
