#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cattaneo/model.hpp"
#include "cattaneo/radial.hpp"

namespace cattaneo {

enum class Scenario {
    LinearDecay,
    ProfileError,
    ImprovedError,
    NonlinearDecay,
    B0Study,
    DispersionDump
};

const char* scenario_name(Scenario s);
Scenario parse_scenario(const std::string& s);  // throws ConfigError

// One initial-data slot. "gaussian" is eps exp(-|x - x0|^2 / (2 w^2)); "laplacian-gaussian"
// is -w^2 Delta of that Gaussian (zero mass, radial scenarios only).
struct SlotSpec {
    std::string kind = "zero";
    double eps = 0.0;
    double w = 1.0;
    std::vector<double> x0;
};

struct DataSpec {
    SlotSpec psi0, psi1, psi2;
};

struct GridSpec {
    int n = 2;
    int N = 128;
    double L = 128.0;
};

struct TimeSpec {
    double t_min = 100.0;
    double t_max = 1e5;
    int count = 31;
    bool log = true;
};

struct SolverSpec {
    double T = 200.0;
    int steps = 2048;
    int record_every = 16;
    double nonlinear_scale = 1.0;
    bool dump = false;  // write the final state as a raw dump
};

struct NormSpec {
    double sigma = 0.0;
    int j = 0;
};

struct FitSpec {
    double t_min = 0.0;  // 0 selects the default window [t_end / 10, t_end]
    double t_max = 0.0;
    double tolerance = -1.0;  // negative selects the scenario default
};

struct DispersionSpec {
    double xi_min = 1e-3;
    double xi_max = 1e3;
    int count = 121;
};

struct ExperimentConfig {
    Scenario scenario = Scenario::LinearDecay;
    ModelParams params;
    DataSpec data;
    std::optional<GridSpec> grid;
    TimeSpec times;
    SolverSpec solver;
    std::vector<NormSpec> norms{{0.0, 0}};
    FitSpec fit;
    DispersionSpec dispersion;
    QuadOptions quadrature;
    std::string output_dir = "out";
    std::uint64_t seed = 0;
};

// Parses and validates. Unknown keys and type mismatches raise ConfigError naming the
// JSON path (e.g. "/params/alpha").
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);
void validate_config(const ExperimentConfig& c);

nlohmann::json config_to_json(const ExperimentConfig& c);
// Canonical text: parse_config(serialize_config(c)) reproduces c.
std::string serialize_config(const ExperimentConfig& c);
// FNV-1a 64 of the canonical text, as 16 hex digits.
std::string config_hash(const ExperimentConfig& c);

}  // namespace cattaneo
