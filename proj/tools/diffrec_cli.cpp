#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "diffrec/expertise.hpp"
#include "diffrec/graph.hpp"
#include "diffrec/harness.hpp"
#include "diffrec/kernels.hpp"
#include "diffrec/metrics.hpp"
#include "diffrec/split.hpp"

namespace {

using namespace diffrec;

struct DatasetOpts {
    std::string path;
    std::string format = "movielens";
    std::string name;  // report label; file stem when empty
    int min_rating = 0;
};

void add_dataset_opts(CLI::App* cmd, DatasetOpts& d) {
    cmd->add_option("--dataset", d.path, "interaction file")->required();
    cmd->add_option("--format", d.format, "input layout")
        ->check(CLI::IsMember({"movielens", "edges"}))
        ->capture_default_str();
    cmd->add_option("--name", d.name, "dataset label used in report rows");
    cmd->add_option("--min-rating", d.min_rating,
                    "drop rated records below this value (0 keeps everything)")
        ->capture_default_str();
}

InteractionLog load_log(const DatasetOpts& d) {
    InteractionLog log =
        d.format == "movielens" ? parse_movielens(d.path) : parse_edge_list(d.path);
    if (d.min_rating > 0) log = apply_min_rating(std::move(log), d.min_rating);
    return log;
}

// Primary artifact goes to --out when given, stdout otherwise.
struct Sink {
    std::ofstream file;
    std::ostream* os = &std::cout;

    explicit Sink(const std::string& path) {
        if (path.empty()) return;
        const auto parent = std::filesystem::path(path).parent_path();
        if (!parent.empty()) std::filesystem::create_directories(parent);
        file.open(path);
        if (!file) throw std::runtime_error("cannot open output file: " + path);
        os = &file;
    }
    std::ostream& stream() { return *os; }
};

ExtraMode parse_mode(const std::string& s) {
    const auto m = extra_mode_from_string(s);
    if (!m) throw std::runtime_error("unknown ExTrA mode: " + s);
    return *m;
}

KernelSpec parse_method(const std::string& label, double lambda, const std::string& mode) {
    auto spec = kernel_from_label(label);
    if (!spec) throw std::runtime_error("unknown method label: " + label);
    if (lambda >= 0.0) spec->lambda = lambda;
    spec->mode = parse_mode(mode);
    return *spec;
}

std::string score_str(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

int cmd_ingest(const DatasetOpts& data, const std::string& out) {
    const auto log = load_log(data);
    Sink sink(out);
    sink.stream() << "records=" << log.records.size() << " users=" << log.distinct_users()
                  << " items=" << log.distinct_items() << '\n';
    return 0;
}

int cmd_split(const DatasetOpts& data, double fraction, std::uint64_t seed,
              const std::string& out_dir) {
    const auto log = load_log(data);
    const auto ds = split(log, fraction, seed);
    write_split(ds, out_dir);
    std::cerr << "train=" << ds.train.size() << " probe=" << ds.probe.size()
              << " users=" << ds.user_count() << " items=" << ds.item_count() << " -> "
              << out_dir << '\n';
    return 0;
}

int cmd_expertise(const DatasetOpts& data, double fraction, std::uint64_t seed,
                  const std::string& method, const std::string& gini, const std::string& out) {
    const auto e_method = expertise_from_string(method);
    if (!e_method) throw std::runtime_error("unknown expertise method: " + method);
    const auto log = load_log(data);
    const auto ds = split(log, fraction, seed);
    const auto g = BipartiteGraph::build(ds);
    const auto e = compute_expertise(
        g, *e_method, gini == "literal" ? GiniMode::Literal : GiniMode::Standard);
    Sink sink(out);
    sink.stream() << "userIdx,k_u,e_u\n";
    for (std::size_t u = 0; u < e.values.size(); ++u)
        sink.stream() << u << ',' << g.user_degree(static_cast<std::uint32_t>(u)) << ','
                      << score_str(e.values[u]) << '\n';
    return 0;
}

int cmd_recommend(const DatasetOpts& data, double fraction, std::uint64_t seed,
                  const std::string& method, double lambda, const std::string& mode,
                  const std::string& gini, std::size_t k, std::vector<std::uint32_t> users,
                  const std::string& out) {
    const auto spec = parse_method(method, lambda, mode);
    const auto log = load_log(data);
    const auto ds = split(log, fraction, seed);
    const auto g = BipartiteGraph::build(ds);

    ExpertiseVector expertise;
    const ExpertiseVector* e = nullptr;
    if (spec.method == KernelMethod::ExTrA) {
        expertise = compute_expertise(
            g, spec.expertise, gini == "literal" ? GiniMode::Literal : GiniMode::Standard);
        e = &expertise;
    }
    const KernelContext ctx(g, spec, e);

    if (users.empty()) {
        for (std::uint32_t u = 0; u < ds.user_count(); ++u)
            if (g.user_degree(u) > 0) users.push_back(u);
    } else {
        for (const auto u : users)
            if (u >= ds.user_count())
                throw std::runtime_error("user index out of range: " + std::to_string(u));
    }

    Sink sink(out);
    sink.stream() << "userIdx,rank,itemIdx,score\n";
    ScoreWorkspace ws;
    for (const auto u : users) {
        ctx.score(u, ws);
        const auto list = top_k(ws.scores, g, u, k, ws);
        for (std::size_t r = 0; r < list.items.size(); ++r)
            sink.stream() << u << ',' << r + 1 << ',' << list.items[r].first << ','
                          << score_str(list.items[r].second) << '\n';
    }
    return 0;
}

ExperimentConfig make_config(const DatasetOpts& data, double fraction,
                             std::vector<std::uint64_t> seeds, std::vector<std::size_t> ks,
                             const std::string& gini, const std::string& hd,
                             std::size_t hd_pairs, std::size_t threads,
                             const std::string& cache_dir) {
    ExperimentConfig config;
    config.dataset_path = data.path;
    config.dataset_name =
        data.name.empty() ? std::filesystem::path(data.path).stem().string() : data.name;
    if (config.dataset_name.empty()) config.dataset_name = "dataset";
    config.train_fraction = fraction;
    config.seeds = std::move(seeds);
    config.k_grid = std::move(ks);
    config.gini_mode = gini == "literal" ? GiniMode::Literal : GiniMode::Standard;
    config.hd_mode = hd == "sampled" ? HdMode::Sampled : HdMode::Exact;
    config.hd_sample_pairs = hd_pairs;
    config.threads = threads;
    config.cache_dir = cache_dir;
    config.min_rating = data.min_rating;
    return config;
}

int cmd_eval(ExperimentConfig config, const DatasetOpts& data, const std::string& method,
             double lambda, const std::string& mode, const std::string& out) {
    config.methods = {parse_method(method, lambda, mode)};
    const auto log = load_log(data);
    const auto cells = run_experiment(config, log);
    Sink sink(out);
    write_long_csv(sink.stream(), config, cells);
    return 0;
}

int cmd_sweep(ExperimentConfig config, const DatasetOpts& data,
              const std::vector<std::string>& methods, const std::vector<double>& lambdas,
              const std::string& mode, const std::string& out, const std::string& summary) {
    config.methods = build_method_grid(methods, lambdas, parse_mode(mode));
    const auto log = load_log(data);
    const auto cells = run_experiment(config, log);
    Sink sink(out);
    write_long_csv(sink.stream(), config, cells);
    if (!summary.empty()) {
        Sink s2(summary);
        write_sweep_summary(s2.stream(), config, cells);
    }
    return 0;
}

int cmd_reproduce(ExperimentConfig config, const DatasetOpts& data, const std::string& mode,
                  const std::string& out, const std::string& cells_out) {
    const auto log = load_log(data);
    const auto result = reproduce_benchmark(config, log, parse_mode(mode));
    Sink sink(out);
    write_reproduce_table(sink.stream(), result);
    if (!cells_out.empty()) {
        Sink s2(cells_out);
        write_long_csv(s2.stream(), config, result.cells);
    }
    return result.all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"diffusion-based top-K recommendation benchmark"};
    app.require_subcommand(1);

    int rc = 0;
    DatasetOpts data;
    double fraction = 0.8;
    std::uint64_t seed = 1;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::string method = "md", mode = "userDegree", gini = "standard", hd = "exact";
    double lambda = -1.0;  // negative: keep the label's default
    std::size_t k = 20;
    std::vector<std::size_t> ks = {20};
    std::vector<std::string> methods;
    std::vector<double> lambdas;
    std::vector<std::uint32_t> users;
    std::size_t hd_pairs = 100000, threads = 0;
    std::string out, out_dir = "split-out", summary, cells_out, cache_dir;

    auto* ingest = app.add_subcommand("ingest", "parse a dataset and report its size");
    add_dataset_opts(ingest, data);
    ingest->add_option("--out", out, "write the report here instead of stdout");
    ingest->callback([&] { rc = cmd_ingest(data, out); });

    auto* split_cmd = app.add_subcommand("split", "write a seeded train/probe partition");
    add_dataset_opts(split_cmd, data);
    split_cmd->add_option("--train-fraction", fraction)->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    split_cmd->add_option("--seed", seed)->capture_default_str();
    split_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    split_cmd->callback([&] { rc = cmd_split(data, fraction, seed, out_dir); });

    auto* exp = app.add_subcommand("expertise", "dump per-user expertise scores as CSV");
    add_dataset_opts(exp, data);
    exp->add_option("--train-fraction", fraction)->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    exp->add_option("--seed", seed)->capture_default_str();
    exp->add_option("--method", method, "uniform|activity|el|invpop|gini|sim|sim2")->required();
    exp->add_option("--gini", gini)->check(CLI::IsMember({"standard", "literal"}))
        ->capture_default_str();
    exp->add_option("--out", out);
    exp->callback([&] { rc = cmd_expertise(data, fraction, seed, method, gini, out); });

    auto* rec = app.add_subcommand("recommend", "emit top-K lists as userIdx,rank,itemIdx,score");
    add_dataset_opts(rec, data);
    rec->add_option("--train-fraction", fraction)->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    rec->add_option("--seed", seed)->capture_default_str();
    rec->add_option("--method", method, "md|mdel|mdactivity|mdgini|mdsim|mdsim2|hc|hhp|bhc")
        ->capture_default_str();
    rec->add_option("--lambda", lambda)->check(CLI::Range(0.0, 1.0));
    rec->add_option("--mode", mode)->check(CLI::IsMember({"userDegree", "literalEq3", "hybrid"}))
        ->capture_default_str();
    rec->add_option("--gini", gini)->check(CLI::IsMember({"standard", "literal"}))
        ->capture_default_str();
    rec->add_option("--k", k)->check(CLI::PositiveNumber)->capture_default_str();
    rec->add_option("--user", users, "dense user indices (default: every trained user)");
    rec->add_option("--out", out);
    rec->callback([&] {
        rc = cmd_recommend(data, fraction, seed, method, lambda, mode, gini, k, users, out);
    });

    auto add_eval_opts = [&](CLI::App* cmd, std::string& gini_var) {
        add_dataset_opts(cmd, data);
        cmd->add_option("--train-fraction", fraction)->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
        cmd->add_option("--seed", seeds, "seeds (repeatable)")->capture_default_str();
        cmd->add_option("--k", ks, "list lengths (repeatable)")->capture_default_str();
        cmd->add_option("--gini", gini_var)->check(CLI::IsMember({"standard", "literal"}))
            ->capture_default_str();
        cmd->add_option("--hd", hd)->check(CLI::IsMember({"exact", "sampled"}))
            ->capture_default_str();
        cmd->add_option("--hd-pairs", hd_pairs)->capture_default_str();
        cmd->add_option("--threads", threads, "0 = hardware concurrency")->capture_default_str();
        cmd->add_option("--cache-dir", cache_dir, "expertise cache directory");
    };

    auto* eval = app.add_subcommand("eval", "evaluate one method across seeds and K");
    add_eval_opts(eval, gini);
    eval->add_option("--method", method)->capture_default_str();
    eval->add_option("--lambda", lambda)->check(CLI::Range(0.0, 1.0));
    eval->add_option("--mode", mode)->check(CLI::IsMember({"userDegree", "literalEq3", "hybrid"}))
        ->capture_default_str();
    eval->add_option("--out", out);
    eval->callback([&] {
        rc = cmd_eval(make_config(data, fraction, seeds, ks, gini, hd, hd_pairs, threads,
                                  cache_dir),
                      data, method, lambda, mode, out);
    });

    auto* sweep = app.add_subcommand("sweep", "method x lambda grid, long-form CSV");
    add_eval_opts(sweep, gini);
    sweep->add_option("--method", methods, "method labels (repeatable)")->required();
    sweep->add_option("--lambda", lambdas, "lambda grid (repeatable)");
    sweep->add_option("--mode", mode)->check(CLI::IsMember({"userDegree", "literalEq3", "hybrid"}))
        ->capture_default_str();
    sweep->add_option("--out", out);
    sweep->add_option("--summary", summary, "write per-metric argmax summary CSV here");
    sweep->callback([&] {
        rc = cmd_sweep(make_config(data, fraction, seeds, ks, gini, hd, hd_pairs, threads,
                                   cache_dir),
                       data, methods, lambdas, mode, out, summary);
    });

    auto* rep = app.add_subcommand(
        "reproduce", "run the MovieLens reference grid and gate on its tolerances");
    // reproduction defaults to the variants the reference grid was measured
    // with: blended normalization and the rank-based gini
    std::string rep_mode = "hybrid";
    std::string rep_gini = "literal";
    add_eval_opts(rep, rep_gini);
    rep->add_option("--mode", rep_mode)
        ->check(CLI::IsMember({"userDegree", "literalEq3", "hybrid"}))
        ->capture_default_str();
    rep->add_option("--out", out, "comparison table (default stdout)");
    rep->add_option("--cells", cells_out, "also dump per-cell long-form CSV here");
    rep->callback([&] {
        rc = cmd_reproduce(make_config(data, fraction, seeds, ks, rep_gini, hd, hd_pairs,
                                       threads, cache_dir),
                           data, rep_mode, out, cells_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return rc;
}
