#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "diffrec/graph.hpp"

// Hand-checked five-user / five-item graph used throughout the tests:
//   u0:{i0,i1,i2}  u1:{i0,i1}  u2:{i0,i3}  u3:{i2,i3,i4}  u4:{i1}
// degrees: k_u = (3,2,2,3,1), k_i = (3,3,2,2,1)
inline diffrec::BipartiteGraph five_user_graph() {
    return diffrec::BipartiteGraph::from_links(
        5, 5, {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}, {2, 3}, {3, 2}, {3, 3}, {3, 4}, {4, 1}});
}

inline std::vector<diffrec::Link> five_user_links() {
    return {{0, 0}, {0, 1}, {0, 2}, {1, 0}, {1, 1}, {2, 0}, {2, 3}, {3, 2}, {3, 3}, {3, 4}, {4, 1}};
}

// Writes content to a fresh file under the system temp directory.
inline std::string write_temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / ("diffrec_test_" + name);
    std::ofstream out(path);
    out << content;
    out.close();
    return path.string();
}
