#include "diffrec/split.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "diffrec/rng.hpp"

namespace diffrec {

SplitDataset split(const InteractionLog& log, double train_fraction, std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw std::invalid_argument("train fraction must be in (0, 1)");

    SplitDataset ds;
    ds.train_fraction = train_fraction;
    ds.seed = seed;

    std::vector<Link> links;
    links.reserve(log.records.size());
    for (const auto& rec : log.records) {
        auto [uit, unew] = ds.user_index.try_emplace(
            rec.user, static_cast<std::uint32_t>(ds.user_ids.size()));
        if (unew) ds.user_ids.push_back(rec.user);
        auto [iit, inew] = ds.item_index.try_emplace(
            rec.item, static_cast<std::uint32_t>(ds.item_ids.size()));
        if (inew) ds.item_ids.push_back(rec.item);
        links.push_back({uit->second, iit->second});
    }

    std::mt19937_64 gen(seed);
    portable_shuffle(links, gen);

    const std::size_t n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(links.size())));
    ds.train.assign(links.begin(), links.begin() + n_train);
    ds.probe.assign(links.begin() + n_train, links.end());
    std::sort(ds.train.begin(), ds.train.end());
    std::sort(ds.probe.begin(), ds.probe.end());
    return ds;
}

void write_split(const SplitDataset& ds, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto write_edges = [&](const std::string& name, const std::vector<Link>& links) {
        std::ofstream out(fs::path(dir) / name);
        if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / name).string());
        for (const auto& l : links)
            out << ds.user_ids[l.user] << '\t' << ds.item_ids[l.item] << '\n';
    };
    write_edges("train.edges", ds.train);
    write_edges("probe.edges", ds.probe);

    std::ofstream out(fs::path(dir) / "manifest.json");
    out << "{\n"
        << "  \"seed\": " << ds.seed << ",\n"
        << "  \"train_fraction\": " << ds.train_fraction << ",\n"
        << "  \"users\": " << ds.user_count() << ",\n"
        << "  \"items\": " << ds.item_count() << ",\n"
        << "  \"train_links\": " << ds.train.size() << ",\n"
        << "  \"probe_links\": " << ds.probe.size() << "\n"
        << "}\n";
}

}  // namespace diffrec
