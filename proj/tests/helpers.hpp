#ifndef CYLREF_TESTS_HELPERS_HPP
#define CYLREF_TESTS_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <string>

#include "cylref/graph.hpp"

inline std::string fixture_path(const std::string& name) {
    return std::string(CYLREF_FIXTURES_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline cylref::CylinderGraph load_fixture(const std::string& name) {
    return cylref::parse_graph(slurp(fixture_path(name)));
}

#endif
