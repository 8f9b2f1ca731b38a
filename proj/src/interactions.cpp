#include "diffrec/interactions.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace diffrec {
namespace {

struct PairHash {
    std::size_t operator()(const std::pair<std::int64_t, std::int64_t>& p) const {
        std::size_t h = std::hash<std::int64_t>{}(p.first);
        h ^= std::hash<std::int64_t>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
        std::size_t start = pos;
        while (pos < line.size() && line[pos] != ' ' && line[pos] != '\t') ++pos;
        if (pos > start) out.push_back(line.substr(start, pos - start));
    }
    return out;
}

std::int64_t parse_int(std::string_view field, const std::string& path, std::size_t lineno) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || ptr != field.data() + field.size()) {
        std::ostringstream msg;
        msg << path << ":" << lineno << ": non-integer field '" << field << "'";
        throw std::runtime_error(msg.str());
    }
    return value;
}

template <typename LineFn>
InteractionLog parse_lines(const std::string& path, LineFn&& fn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    InteractionLog log;
    std::unordered_set<std::pair<std::int64_t, std::int64_t>, PairHash> seen;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto fields = split_fields(line);
        if (fields.empty()) continue;
        Interaction rec = fn(fields, lineno);
        if (seen.emplace(rec.user, rec.item).second) log.records.push_back(rec);
    }
    if (log.records.empty()) throw std::runtime_error(path + ": no records");
    return log;
}

}  // namespace

std::size_t InteractionLog::distinct_users() const {
    std::unordered_set<std::int64_t> s;
    for (const auto& r : records) s.insert(r.user);
    return s.size();
}

std::size_t InteractionLog::distinct_items() const {
    std::unordered_set<std::int64_t> s;
    for (const auto& r : records) s.insert(r.item);
    return s.size();
}

InteractionLog parse_movielens(const std::string& path) {
    return parse_lines(path, [&](const std::vector<std::string_view>& f, std::size_t lineno) {
        if (f.size() < 4) {
            std::ostringstream msg;
            msg << path << ":" << lineno << ": expected 4 fields, got " << f.size();
            throw std::runtime_error(msg.str());
        }
        Interaction rec;
        rec.user = parse_int(f[0], path, lineno);
        rec.item = parse_int(f[1], path, lineno);
        rec.rating = static_cast<int>(parse_int(f[2], path, lineno));
        rec.timestamp = parse_int(f[3], path, lineno);
        return rec;
    });
}

InteractionLog parse_edge_list(const std::string& path) {
    return parse_lines(path, [&](const std::vector<std::string_view>& f, std::size_t lineno) {
        if (f.size() < 2) {
            std::ostringstream msg;
            msg << path << ":" << lineno << ": expected at least 2 fields, got " << f.size();
            throw std::runtime_error(msg.str());
        }
        Interaction rec;
        rec.user = parse_int(f[0], path, lineno);
        rec.item = parse_int(f[1], path, lineno);
        return rec;
    });
}

InteractionLog apply_min_rating(InteractionLog log, int min_rating) {
    std::erase_if(log.records, [min_rating](const Interaction& r) {
        return r.rating >= 0 && r.rating < min_rating;
    });
    return log;
}

}  // namespace diffrec
