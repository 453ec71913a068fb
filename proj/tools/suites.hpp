#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgtree/rational.hpp"

namespace sgt::cli {

struct SuiteConfig {
    std::string model = "sg";
    std::vector<Rational> w;
    std::vector<Rational> theta;
    int d = 1;
    int n_max = 6;
    std::uint64_t seed = 0;
    std::uint64_t samples = 100000;
    bool decimal = false;
};

const std::vector<std::string>& suite_names();

// Report with an "ok" field. Throws Refused when the suite needs the growth
// hypothesis and it fails.
nlohmann::json run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace sgt::cli
