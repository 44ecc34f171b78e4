#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cattaneo/config.hpp"
#include "cattaneo/errors.hpp"
#include "cattaneo/experiment.hpp"
#include "cattaneo/format.hpp"
#include "cattaneo/rates.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitTolerance = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

int env_threads() {
    const char* v = std::getenv("CATTANEO_THREADS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    const long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 1024) {
        throw cattaneo::ConfigError("CATTANEO_THREADS must be an integer in [1, 1024]");
    }
    return static_cast<int>(n);
}

std::string env_output_dir() {
    const char* v = std::getenv("CATTANEO_OUTPUT_DIR");
    return v ? v : "";
}

void print_report(const cattaneo::ExperimentReport& r, const std::string& dir) {
    std::cout << "scenario " << cattaneo::scenario_name(r.scenario) << "  config " << r.config_hash
              << '\n';
    for (const auto& f : r.fits) {
        std::cout << "  fit " << f.series << "  slope " << cattaneo::fmt17(f.fit.slope)
                  << "  theory " << cattaneo::fmt17(f.theoretical) << "  r2 "
                  << cattaneo::fmt17(f.fit.r2) << "  window [" << f.fit.t_min << ", "
                  << f.fit.t_max << "]  " << (f.pass ? "PASS" : "FAIL")
                  << (f.within_hypotheses ? "" : "  (outside theorem hypotheses)") << '\n';
    }
    for (const auto& c : r.checks) {
        std::cout << "  check " << c.name << "  value " << cattaneo::fmt17(c.value)
                  << "  threshold " << cattaneo::fmt17(c.threshold) << "  "
                  << (c.pass ? "PASS" : "FAIL") << '\n';
    }
    if (r.b0_closed) std::cout << "  B0 " << cattaneo::fmt17(r.b0_closed->value) << '\n';
    std::cout << "output " << dir << '\n' << (r.pass ? "PASS" : "FAIL") << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Experiment runner for the fractional Cattaneo acoustics model"};
    app.require_subcommand(1);

    std::string run_path, out_dir;
    int threads = 0;
    auto* run = app.add_subcommand("run", "Run the scenario described by a JSON config");
    run->add_option("config", run_path, "Config file")->required();
    run->add_option("--output-dir", out_dir, "Output directory (overrides config and environment)");
    run->add_option("--threads", threads, "Worker threads (overrides CATTANEO_THREADS)");

    std::string disp_path;
    auto* disp = app.add_subcommand("dispersion", "Print the dispersion table as CSV");
    disp->add_option("config", disp_path, "Config file")->required();

    cattaneo::RateQuery q;
    std::string variant = "solution";
    auto* rates = app.add_subcommand("rates", "Print a theoretical decay exponent");
    rates->add_option("--alpha", q.alpha, "Fractional order in [0, 1]")->required();
    rates->add_option("--n", q.n, "Space dimension")->required();
    rates->add_option("--j", q.j, "Time-derivative order")->required();
    rates->add_option("--sigma", q.sigma, "Sobolev order of the norm")->required();
    rates->add_option("--variant", variant,
                      "solution | profile-error | improved-error | improved-error-nonlinear | "
                      "kernel-data2");

    std::string val_path;
    bool print_canonical = false;
    auto* val = app.add_subcommand("validate", "Validate a config without running it");
    val->add_option("config", val_path, "Config file")->required();
    val->add_flag("--print", print_canonical, "Print the canonical form");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            const auto cfg = cattaneo::load_config(run_path);
            cattaneo::RunOptions opt;
            opt.output_dir = !out_dir.empty() ? out_dir : env_output_dir();
            opt.threads = threads > 0 ? threads : env_threads();
            const auto r = cattaneo::run_experiment(cfg, opt);
            print_report(r, opt.output_dir.empty() ? cfg.output_dir : opt.output_dir);
            return r.pass ? kExitPass : kExitTolerance;
        }
        if (*disp) {
            const auto cfg = cattaneo::load_config(disp_path);
            const double worst = cattaneo::dump_dispersion(cfg, std::cout);
            return worst <= 1e-12 ? kExitPass : kExitTolerance;
        }
        if (*rates) {
            q.variant = cattaneo::parse_variant(variant);
            const auto r = cattaneo::theoretical_rate(q);
            std::cout << cattaneo::fmt17(r.exponent) << '\n';
            if (!r.within_hypotheses) std::cerr << "note: outside theorem hypotheses: " << r.note << '\n';
            return kExitPass;
        }
        if (*val) {
            const auto cfg = cattaneo::load_config(val_path);
            if (print_canonical) {
                std::cout << cattaneo::serialize_config(cfg);
            } else {
                std::cout << "ok " << cattaneo::scenario_name(cfg.scenario) << ' '
                          << cattaneo::config_hash(cfg) << '\n';
            }
            return kExitPass;
        }
    } catch (const cattaneo::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const cattaneo::DomainError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const cattaneo::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const cattaneo::Error& e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
