#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "diffrec/harness.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace diffrec;
namespace fs = std::filesystem;

namespace {

InteractionLog synth_log() {
    InteractionLog log;
    std::int64_t ts = 1000;
    for (std::int64_t u = 0; u < 25; ++u)
        for (std::int64_t j = 0; j < 5; ++j)
            log.records.push_back({u, (u + 3 * j) % 15, static_cast<int>(j % 5) + 1, ts++});
    return log;
}

ExperimentConfig synth_config() {
    ExperimentConfig c;
    c.dataset_name = "synth";
    c.seeds = {1, 2};
    c.methods = build_method_grid({"md", "mdel"}, {0.7});
    c.k_grid = {5, 10};
    c.threads = 1;
    return c;
}

std::string long_csv(const ExperimentConfig& c, const std::vector<CellResult>& cells) {
    std::ostringstream out;
    write_long_csv(out, c, cells);
    return out.str();
}

}  // namespace

TEST_CASE("method labels round-trip through the parser") {
    const char* labels[] = {"md",     "hc",    "mduniform", "mdactivity", "mdel", "mdinvpop",
                            "mdgini", "mdsim", "mdsim2",    "hhp",        "bhc"};
    for (const auto* label : labels) {
        const auto spec = kernel_from_label(label);
        REQUIRE_MESSAGE(spec.has_value(), label);
        CHECK(method_label(*spec) == label);
    }
    CHECK_FALSE(kernel_from_label("xyz").has_value());
    CHECK_FALSE(kernel_from_label("").has_value());
    CHECK_FALSE(kernel_from_label("mdunknown").has_value());
}

TEST_CASE("label parsing fills in the expected defaults") {
    const auto md = kernel_from_label("md");
    CHECK(md->method == KernelMethod::MD);

    const auto el = kernel_from_label("mdel");
    CHECK(el->method == KernelMethod::ExTrA);
    CHECK(el->expertise == ExpertiseMethod::EL);
    CHECK(el->lambda == doctest::Approx(0.7));

    const auto hhp = kernel_from_label("hhp");
    CHECK(hhp->method == KernelMethod::HHP);
    CHECK(hhp->lambda == doctest::Approx(0.5));

    // the label does not encode lambda
    KernelSpec shifted = *hhp;
    shifted.lambda = 0.3;
    CHECK(method_label(shifted) == "hhp");
}

TEST_CASE("method grid is the label x lambda cross product") {
    const auto grid = build_method_grid({"md", "mdel"}, {0.5, 0.7});
    REQUIRE(grid.size() == 3);  // md ignores the lambda grid
    CHECK(grid[0].method == KernelMethod::MD);
    CHECK(grid[1].lambda == doctest::Approx(0.5));
    CHECK(grid[2].lambda == doctest::Approx(0.7));

    const auto hybrid = build_method_grid({"mdsim"}, {0.6}, ExtraMode::Hybrid);
    CHECK(hybrid[0].mode == ExtraMode::Hybrid);

    CHECK_THROWS_AS(build_method_grid({"mdel"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_method_grid({"hhp"}, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_method_grid({"bogus"}, {0.5}), std::invalid_argument);
    CHECK_NOTHROW(build_method_grid({"md", "hc"}, {}));
}

TEST_CASE("config validation rejects malformed setups") {
    const auto base = synth_config();
    CHECK_NOTHROW(base.validate());

    auto c = base;
    c.train_fraction = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.train_fraction = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = base;
    c.seeds.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = base;
    c.methods.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = base;
    c.k_grid.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.k_grid = {0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = base;
    c.methods[1].lambda = 1.5;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.methods[1].lambda = -0.1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);

    c = base;
    c.hd_mode = HdMode::Sampled;
    c.hd_sample_pairs = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("experiment runs are deterministic") {
    const auto log = synth_log();
    const auto config = synth_config();
    const auto a = run_experiment(config, log);
    const auto b = run_experiment(config, log);
    CHECK(a.size() == config.seeds.size() * config.methods.size() * config.k_grid.size());
    CHECK(long_csv(config, a) == long_csv(config, b));
}

TEST_CASE("each cell is independent of which other methods run") {
    const auto log = synth_log();
    const auto full_cfg = synth_config();
    const auto full = run_experiment(full_cfg, log);

    auto solo_cfg = full_cfg;
    solo_cfg.methods = build_method_grid({"mdel"}, {0.7});
    const auto solo = run_experiment(solo_cfg, log);

    for (const auto& cell : solo) {
        bool found = false;
        for (const auto& other : full) {
            if (other.seed != cell.seed || other.report.k != cell.report.k) continue;
            if (method_label(other.spec) != "mdel") continue;
            found = true;
            CHECK(other.report.f1 == cell.report.f1);
            CHECK(other.report.coverage == cell.report.coverage);
            CHECK(other.report.hamming.value == cell.report.hamming.value);
        }
        CHECK(found);
    }
}

TEST_CASE("expertise cache round-trips through disk") {
    const auto log = synth_log();
    const auto plain_cfg = synth_config();
    const auto plain = long_csv(plain_cfg, run_experiment(plain_cfg, log));

    auto cached_cfg = plain_cfg;
    const auto dir = fs::temp_directory_path() / "diffrec_test_expertise_cache";
    fs::remove_all(dir);
    cached_cfg.cache_dir = dir.string();

    const auto first = long_csv(cached_cfg, run_experiment(cached_cfg, log));
    std::size_t cache_files = 0;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.path().extension() == ".csv") ++cache_files;
    CHECK(cache_files == 2);  // one mdel vector per seed

    const auto second = long_csv(cached_cfg, run_experiment(cached_cfg, log));
    CHECK(first == plain);
    CHECK(second == plain);
    fs::remove_all(dir);
}

TEST_CASE("long csv carries one row per metric") {
    const auto log = synth_log();
    auto config = synth_config();
    config.seeds = {3};
    config.methods = build_method_grid({"md"}, {});
    config.k_grid = {5};
    const auto cells = run_experiment(config, log);
    REQUIRE(cells.size() == 1);

    std::istringstream in(long_csv(config, cells));
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) lines.push_back(line);
    REQUIRE(lines.size() == 8);  // header + 7 metrics in exact mode
    CHECK(lines[0] == "dataset,seed,method,lambda,K,metric,value");
    CHECK(lines[1].rfind("synth,3,md,,5,precision,", 0) == 0);
    CHECK(lines[4].rfind("synth,3,md,,5,coverage,", 0) == 0);
}

TEST_CASE("sweep summary picks the best lambda per metric") {
    const auto log = synth_log();
    auto config = synth_config();
    config.methods = build_method_grid({"mdel"}, {0.3, 0.9});
    config.k_grid = {5};
    const auto cells = run_experiment(config, log);

    std::ostringstream out;
    write_sweep_summary(out, config, cells);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "dataset,method,K,metric,best_lambda,value");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.rfind("synth,mdel,5,", 0) == 0);
        // best lambda must come from the configured grid
        const bool has03 = line.find(",0.3,") != std::string::npos;
        const bool has09 = line.find(",0.9,") != std::string::npos;
        CHECK((has03 || has09));
    }
    CHECK(rows == 6);
}

TEST_CASE("reference table is complete and parseable") {
    const auto refs = movielens_reference();
    REQUIRE(refs.size() == 26);
    for (const auto& ref : refs) {
        CHECK(kernel_from_label(ref.method).has_value());
        CHECK(ref.f1 > 0.0);
        CHECK(ref.f1 < 1.0);
        CHECK(ref.cov > 0.0);
        if (ref.lambda >= 0.0) {
            CHECK(ref.lambda >= 0.5);
            CHECK(ref.lambda <= 0.9);
        }
    }
}

TEST_CASE("content hash distinguishes file contents") {
    const auto a = write_temp_file("hash_a.txt", "same body\n");
    const auto b = write_temp_file("hash_b.txt", "same body\n");
    const auto c = write_temp_file("hash_c.txt", "different body\n");
    CHECK(file_content_hash(a) == file_content_hash(b));
    CHECK(file_content_hash(a) != file_content_hash(c));
    CHECK_THROWS_AS(file_content_hash("/nonexistent/diffrec/file"), std::runtime_error);
}
