#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace diffrec {

struct Interaction {
    std::int64_t user = 0;
    std::int64_t item = 0;
    int rating = -1;  // -1 when the source file carries no rating column
    std::int64_t timestamp = -1;
};

// Deduplicated interaction records; the first occurrence of a (user, item)
// pair wins. Record order preserves file order, which later fixes the dense
// index assignment.
struct InteractionLog {
    std::vector<Interaction> records;

    std::size_t distinct_users() const;
    std::size_t distinct_items() const;
};

// Strict four-column `user item rating timestamp` lines (tabs or spaces).
// Throws std::runtime_error naming the offending line on malformed input.
InteractionLog parse_movielens(const std::string& path);

// `user item [extra columns ignored]` lines; blank lines skipped.
InteractionLog parse_edge_list(const std::string& path);

// Drops records whose rating is known and below the threshold. Records
// without a rating are kept: link existence never depends on rating values
// unless explicitly requested.
InteractionLog apply_min_rating(InteractionLog log, int min_rating);

}  // namespace diffrec
