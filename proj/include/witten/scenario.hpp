#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "witten/amplitude.hpp"
#include "witten/model.hpp"
#include "witten/oracle.hpp"
#include "witten/schwartz.hpp"

namespace witten {

// One verification run: a local model, the data living on it, and where to look.
struct Scenario {
    LocalModel model;
    AmplitudeSpec amplitude;
    SchwartzSpec sigma;
    std::vector<double> zeta_values{0.0};
    int M = 1;
    OracleConfig oracle;

    void validate() const;
    bool operator==(const Scenario& o) const;
};

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(const std::string& msg, int line, std::string key);
    int line;  // 0 when no position is known
    std::string key;
};

// Sections [model] [amplitude] [sigma] [oracle]; see README for the keys.
Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);
std::string serialize_scenario(const Scenario& s);

// Exact value of a decimal literal such as "-1.25e-3".
Rational parse_decimal(std::string_view text);
// Shortest decimal that reads back as d, made exact.
Rational rational_from_double(double d);

}  // namespace witten
