#pragma once

#include <string>
#include <vector>

#include "lya/selftest.hpp"

inline std::string data_path(const std::string& name) {
    return std::string(LYA_DATA_DIR) + "/" + name;
}

/// The dimension-2 and dimension-3 named examples in one list.
inline std::vector<lya::NamedStructure> corpus_n23() {
    std::vector<lya::NamedStructure> out = lya::selftest_corpus(2);
    std::vector<lya::NamedStructure> d3 = lya::selftest_corpus(3);
    out.insert(out.end(), d3.begin(), d3.end());
    return out;
}
