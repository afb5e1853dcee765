#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace wigner::cli {

struct PotentialSpec {
    std::string kind = "quartic";  // harmonic | quartic
    double mu = 0.1;
    bool operator==(const PotentialSpec&) const = default;
};

struct InitialSpec {
    std::string kind = "wkb-gauss-fresnel";  // coherent | wkb-gauss-fresnel | wkb-linear-phase | custom
    double xi0 = 0.0, eta0 = 0.0, k0 = 0.0;
    // custom: samples of psi on the grid's x nodes
    std::vector<double> re, im;
    bool operator==(const InitialSpec&) const = default;
};

struct GridSpec {
    double L = 7.5;        // physical half-width
    long n = 512;          // nodes per axis
    double L_scaled = 0.0; // scaled half-width for the harmonic expansion; 0 means L / sqrt(eps)
    bool operator==(const GridSpec&) const = default;
};

struct RaySpec {
    double q_min = -2.0, q_max = 2.0, t_min = 0.0, t_max = 6.0;
    int resolution = 128;
    std::string flow = "exact";
    bool operator==(const RaySpec&) const = default;
};

struct MuRuleSpec {
    double coefficient = 1.0;
    double exponent = 1.0;
    bool operator==(const MuRuleSpec&) const = default;
};

struct ScenarioConfig {
    std::string name = "scenario";
    PotentialSpec potential;
    std::vector<double> eps{0.1};
    std::optional<MuRuleSpec> mu_rule;  // overrides potential.mu per eps
    InitialSpec initial;
    std::string expansion = "harmonic";  // harmonic | classical | both | none
    int order = 0;
    std::vector<double> times;
    GridSpec grid;
    std::optional<RaySpec> rays;
    std::vector<int> focal_nu;
    bool reference = false;  // also evolve the Schrodinger oracle and tabulate remainders
    std::string output = "out";

    bool operator==(const ScenarioConfig&) const = default;
};

// Throws SchemaError with a JSON-pointer path on the first violation.
ScenarioConfig parse_config(const nlohmann::json& j);
ScenarioConfig load_config(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& c);
// SHA-256 of the canonical serialization
std::string config_hash(const ScenarioConfig& c);

}  // namespace wigner::cli
