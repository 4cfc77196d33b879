#pragma once

#include <symplab/cocycle.hpp>
#include <symplab/report.hpp>

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace symplab {

// Parses the config text format: '[section]' / '[section.sub]' headers and
// 'key = value' lines, where value is a number, "string", true/false, or a
// flat array of those. '#' starts a comment. Returns the nested tree;
// malformed input raises ConfigError with the line number.
Json parse_config_text(const std::string& text);

// Inverse of parse_config_text on trees it can produce (two levels of
// sections, scalar/array leaves): parse(serialize(tree)) == tree.
std::string serialize_config(const Json& tree);

// A fully validated experiment description.
struct Scenario {
    Json raw;  // as parsed; kept for round-trips and suite-specific sections

    ManifoldModel model;
    Point x;  // cocycle basepoint; defaults to the model basepoint
    std::string suite;
    uint64_t seed = 0;
    double quad_tol = 1e-9;
    double check_tol = 1e-6;
    int samples = 50;

    std::vector<std::pair<std::string, SympMap>> maps;  // declaration order
    std::map<std::string, std::shared_ptr<const HamiltonianSpec>> hamiltonians;
    std::map<std::string, IsotopySpec> isotopies;  // flows declared in maps

    const SympMap& map(const std::string& name) const;
    const IsotopySpec& isotopy(const std::string& name) const;
    bool has_section(const std::string& name) const { return raw.contains(name); }
    const Json& section(const std::string& name) const;

    CocycleContext context() const { return {model, x, quad_tol}; }
};

Scenario scenario_from_tree(const Json& tree);
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

}  // namespace symplab
