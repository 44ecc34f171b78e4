#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cattaneo/config.hpp"
#include "cattaneo/profiles.hpp"
#include "cattaneo/rates.hpp"

namespace cattaneo {

inline constexpr const char* kCodeVersion = "cattaneo 0.1.0";

struct SeriesData {
    std::string name;
    double sigma = 0.0;
    int j = 0;
    std::vector<SeriesPoint> points;
};

struct FitSummary {
    std::string series;
    double sigma = 0.0;
    int j = 0;
    RateFit fit;
    double theoretical = 0.0;
    bool within_hypotheses = true;
    std::string note;
    double deviation = 0.0;
    double tolerance = 0.0;
    double band_ratio = 0.0;  // M/m of value * t^{-theoretical} over the window
    bool pass = false;
};

struct CheckResult {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

struct ExperimentReport {
    Scenario scenario = Scenario::LinearDecay;
    std::string config_hash;
    std::vector<SeriesData> series;
    std::vector<FitSummary> fits;
    std::vector<CheckResult> checks;
    std::optional<MomentB0> b0_closed;
    std::optional<MomentB0> b0_grid;
    std::vector<std::string> files;
    // Fits outside the theorem hypotheses are reported but do not gate the verdict.
    bool pass = false;

    const SeriesData& find(const std::string& name) const;
    nlohmann::json to_json() const;
};

struct RunOptions {
    std::string output_dir;  // overrides the config's output_dir when non-empty
    int threads = 1;
    bool write_files = true;
};

// Runs one scenario. Writes <output_dir>/<scenario>.csv (and report.json) when
// write_files is set. Runtime failures propagate as DivergenceError, QuadratureError or
// NonContractionError.
ExperimentReport run_experiment(const ExperimentConfig& c, const RunOptions& opt = {});

// Dispersion table over log-spaced |xi|. Returns the largest cubic residual.
double dump_dispersion(const ExperimentConfig& c, std::ostream& os);

// Column label for a norm series, e.g. "norm(sigma=0.5;j=1)".
std::string norm_label(const char* prefix, double sigma, int j);

}  // namespace cattaneo
