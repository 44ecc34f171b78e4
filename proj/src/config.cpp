#include "cattaneo/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "cattaneo/errors.hpp"

namespace cattaneo {

using nlohmann::json;

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::LinearDecay: return "linear-decay";
        case Scenario::ProfileError: return "profile-error";
        case Scenario::ImprovedError: return "improved-error";
        case Scenario::NonlinearDecay: return "nonlinear-decay";
        case Scenario::B0Study: return "b0-study";
        case Scenario::DispersionDump: return "dispersion-dump";
    }
    return "?";
}

Scenario parse_scenario(const std::string& s) {
    for (Scenario v : {Scenario::LinearDecay, Scenario::ProfileError, Scenario::ImprovedError,
                       Scenario::NonlinearDecay, Scenario::B0Study, Scenario::DispersionDump}) {
        if (s == scenario_name(v)) return v;
    }
    throw ConfigError("/scenario: unknown scenario \"" + s + "\"");
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError((path.empty() ? "/" : path) + ": " + msg);
}

// Checked view of one JSON object: rejects keys outside the allowed set.
class Obj {
public:
    Obj(const json& j, std::string path, std::set<std::string> allowed)
        : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_, "expected an object");
        for (const auto& [k, v] : j_.items()) {
            (void)v;
            if (!allowed.count(k)) fail(path_ + "/" + k, "unknown key");
        }
    }

    bool has(const std::string& k) const { return j_.contains(k); }
    const json& at(const std::string& k) const { return j_.at(k); }
    std::string sub(const std::string& k) const { return path_ + "/" + k; }

    double num(const std::string& k, double def) const {
        if (!has(k)) return def;
        const json& v = j_.at(k);
        if (!v.is_number()) fail(sub(k), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(sub(k), "expected a finite number");
        return x;
    }
    int integer(const std::string& k, int def) const {
        if (!has(k)) return def;
        const json& v = j_.at(k);
        if (!v.is_number_integer()) fail(sub(k), "expected an integer");
        return v.get<int>();
    }
    std::string str(const std::string& k, const std::string& def) const {
        if (!has(k)) return def;
        const json& v = j_.at(k);
        if (!v.is_string()) fail(sub(k), "expected a string");
        return v.get<std::string>();
    }
    bool boolean(const std::string& k, bool def) const {
        if (!has(k)) return def;
        const json& v = j_.at(k);
        if (!v.is_boolean()) fail(sub(k), "expected true or false");
        return v.get<bool>();
    }

private:
    const json& j_;
    std::string path_;
};

SlotSpec parse_slot(const json& j, const std::string& path) {
    Obj o(j, path, {"kind", "eps", "w", "x0"});
    SlotSpec s;
    s.kind = o.str("kind", "zero");
    if (s.kind != "zero" && s.kind != "gaussian" && s.kind != "laplacian-gaussian") {
        fail(o.sub("kind"), "expected zero, gaussian or laplacian-gaussian");
    }
    if (s.kind == "zero") {
        if (o.has("eps") || o.has("w") || o.has("x0")) fail(path, "a zero slot takes no fields");
        return s;
    }
    if (!o.has("eps")) fail(o.sub("eps"), "required");
    s.eps = o.num("eps", 0.0);
    s.w = o.num("w", 1.0);
    if (o.has("x0")) {
        const json& x = o.at("x0");
        if (!x.is_array()) fail(o.sub("x0"), "expected an array of numbers");
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!x[i].is_number()) fail(o.sub("x0") + "/" + std::to_string(i), "expected a number");
            s.x0.push_back(x[i].get<double>());
        }
    }
    return s;
}

json slot_json(const SlotSpec& s) {
    if (s.kind == "zero") return json{{"kind", "zero"}};
    json j{{"kind", s.kind}, {"eps", s.eps}, {"w", s.w}};
    if (!s.x0.empty()) j["x0"] = s.x0;
    return j;
}

bool radial_scenario(Scenario s) {
    return s == Scenario::LinearDecay || s == Scenario::ProfileError ||
           s == Scenario::ImprovedError || s == Scenario::B0Study;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("/: invalid JSON: ") + e.what());
    }
    Obj o(root, "", {"scenario", "params", "data", "grid", "times", "solver", "norms", "fit",
                     "dispersion", "quadrature", "output_dir", "seed"});
    ExperimentConfig c;
    if (!o.has("scenario")) fail("/scenario", "required");
    c.scenario = parse_scenario(o.str("scenario", ""));

    if (o.has("params")) {
        Obj p(o.at("params"), "/params", {"tau", "c0", "b", "nu", "A", "B", "alpha", "dim"});
        c.params.tau = p.num("tau", c.params.tau);
        c.params.c0 = p.num("c0", c.params.c0);
        c.params.b = p.num("b", c.params.b);
        c.params.nu = p.num("nu", c.params.nu);
        c.params.A = p.num("A", c.params.A);
        c.params.B = p.num("B", c.params.B);
        c.params.alpha = p.num("alpha", c.params.alpha);
        c.params.dim = p.integer("dim", c.params.dim);
    }
    if (o.has("data")) {
        Obj d(o.at("data"), "/data", {"psi0", "psi1", "psi2"});
        if (d.has("psi0")) c.data.psi0 = parse_slot(d.at("psi0"), "/data/psi0");
        if (d.has("psi1")) c.data.psi1 = parse_slot(d.at("psi1"), "/data/psi1");
        if (d.has("psi2")) c.data.psi2 = parse_slot(d.at("psi2"), "/data/psi2");
    }
    if (o.has("grid")) {
        Obj g(o.at("grid"), "/grid", {"n", "N", "L"});
        GridSpec gs;
        gs.n = g.integer("n", c.params.dim);
        gs.N = g.integer("N", gs.N);
        gs.L = g.num("L", gs.L);
        c.grid = gs;
    }
    if (o.has("times")) {
        Obj t(o.at("times"), "/times", {"t_min", "t_max", "count", "spacing"});
        c.times.t_min = t.num("t_min", c.times.t_min);
        c.times.t_max = t.num("t_max", c.times.t_max);
        c.times.count = t.integer("count", c.times.count);
        const std::string sp = t.str("spacing", "log");
        if (sp != "log" && sp != "linear") fail("/times/spacing", "expected log or linear");
        c.times.log = sp == "log";
    }
    if (o.has("solver")) {
        Obj s(o.at("solver"), "/solver", {"T", "steps", "record_every", "nonlinear_scale", "dump"});
        c.solver.T = s.num("T", c.solver.T);
        c.solver.steps = s.integer("steps", c.solver.steps);
        c.solver.record_every = s.integer("record_every", c.solver.record_every);
        c.solver.nonlinear_scale = s.num("nonlinear_scale", c.solver.nonlinear_scale);
        c.solver.dump = s.boolean("dump", c.solver.dump);
    }
    if (o.has("norms")) {
        const json& ns = o.at("norms");
        if (!ns.is_array() || ns.empty()) fail("/norms", "expected a non-empty array");
        c.norms.clear();
        for (std::size_t i = 0; i < ns.size(); ++i) {
            const std::string path = "/norms/" + std::to_string(i);
            Obj n(ns[i], path, {"sigma", "j"});
            c.norms.push_back({n.num("sigma", 0.0), n.integer("j", 0)});
        }
    }
    if (o.has("fit")) {
        Obj f(o.at("fit"), "/fit", {"t_min", "t_max", "tolerance"});
        c.fit.t_min = f.num("t_min", 0.0);
        c.fit.t_max = f.num("t_max", 0.0);
        c.fit.tolerance = f.num("tolerance", -1.0);
    }
    if (o.has("dispersion")) {
        Obj d(o.at("dispersion"), "/dispersion", {"xi_min", "xi_max", "count"});
        c.dispersion.xi_min = d.num("xi_min", c.dispersion.xi_min);
        c.dispersion.xi_max = d.num("xi_max", c.dispersion.xi_max);
        c.dispersion.count = d.integer("count", c.dispersion.count);
    }
    if (o.has("quadrature")) {
        Obj q(o.at("quadrature"), "/quadrature", {"rel_tol", "density"});
        c.quadrature.rel_tol = q.num("rel_tol", c.quadrature.rel_tol);
        c.quadrature.density = q.integer("density", c.quadrature.density);
    }
    c.output_dir = o.str("output_dir", c.output_dir);
    if (o.has("seed")) {
        const json& s = o.at("seed");
        if (!s.is_number_unsigned()) fail("/seed", "expected a non-negative integer");
        c.seed = s.get<std::uint64_t>();
    }
    validate_config(c);
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

void validate_config(const ExperimentConfig& c) {
    try {
        c.params.validate();
    } catch (const DomainError& e) {
        fail("/params", e.what());
    }
    if (c.params.dim > 3) fail("/params/dim", "dimension must be 1, 2 or 3");
    const int n = c.params.dim;
    for (const auto& [slot, path] : {std::pair{&c.data.psi0, "/data/psi0"},
                                     std::pair{&c.data.psi1, "/data/psi1"},
                                     std::pair{&c.data.psi2, "/data/psi2"}}) {
        if (slot->kind == "zero") continue;
        if (!(slot->w > 0.0)) fail(std::string(path) + "/w", "width must be positive");
        if (!slot->x0.empty() && static_cast<int>(slot->x0.size()) != n) {
            fail(std::string(path) + "/x0", "length must equal params.dim");
        }
        if (radial_scenario(c.scenario)) {
            for (double x : slot->x0) {
                if (x != 0.0) fail(std::string(path) + "/x0", "radial scenarios need centred data");
            }
        }
        if (slot->kind == "laplacian-gaussian" &&
            (c.scenario == Scenario::NonlinearDecay || c.scenario == Scenario::B0Study)) {
            fail(std::string(path) + "/kind", "laplacian-gaussian has no closed-form B0 or grid sampler");
        }
    }
    const bool solver = c.scenario == Scenario::NonlinearDecay;
    if (solver && !c.grid) fail("/grid", "required for nonlinear-decay");
    if (c.grid) {
        if (c.grid->n != n) fail("/grid/n", "must equal params.dim");
        if (c.grid->N < 4 || (c.grid->N & (c.grid->N - 1)) != 0) {
            fail("/grid/N", "must be a power of two >= 4");
        }
        if (!(c.grid->L > 0.0)) fail("/grid/L", "must be positive");
    }
    if (radial_scenario(c.scenario)) {
        if (!(c.times.t_min > 0.0 && c.times.t_max > c.times.t_min)) {
            fail("/times", "need 0 < t_min < t_max");
        }
        if (c.times.count < 2) fail("/times/count", "must be >= 2");
    }
    if (solver) {
        if (!(c.solver.T > 0.0)) fail("/solver/T", "must be positive");
        if (c.solver.steps < 1) fail("/solver/steps", "must be >= 1");
        if (c.solver.record_every < 1) fail("/solver/record_every", "must be >= 1");
    }
    for (std::size_t i = 0; i < c.norms.size(); ++i) {
        const auto& ns = c.norms[i];
        const std::string path = "/norms/" + std::to_string(i);
        if (ns.j < 0 || ns.j > 2) fail(path + "/j", "must be 0, 1 or 2");
        if (!(2.0 * ns.sigma + n > 0.0)) fail(path + "/sigma", "need 2 sigma + n > 0");
    }
    if (c.fit.t_min != 0.0 || c.fit.t_max != 0.0) {
        if (!(c.fit.t_min > 0.0 && c.fit.t_max > c.fit.t_min)) fail("/fit", "need 0 < t_min < t_max");
    }
    if (c.scenario == Scenario::DispersionDump) {
        if (!(c.dispersion.xi_min > 0.0 && c.dispersion.xi_max > c.dispersion.xi_min)) {
            fail("/dispersion", "need 0 < xi_min < xi_max");
        }
        if (c.dispersion.count < 2) fail("/dispersion/count", "must be >= 2");
    }
    if (c.scenario == Scenario::ImprovedError && !(c.params.alpha < 0.5)) {
        fail("/params/alpha", "improved-error needs alpha < 1/2");
    }
    if (!(c.quadrature.rel_tol > 0.0)) fail("/quadrature/rel_tol", "must be positive");
    if (c.quadrature.density < 1) fail("/quadrature/density", "must be >= 1");
    if (c.output_dir.empty()) fail("/output_dir", "must not be empty");
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    j["scenario"] = scenario_name(c.scenario);
    const auto& p = c.params;
    j["params"] = {{"tau", p.tau}, {"c0", p.c0}, {"b", p.b}, {"nu", p.nu},
                   {"A", p.A},     {"B", p.B},   {"alpha", p.alpha}, {"dim", p.dim}};
    j["data"] = {{"psi0", slot_json(c.data.psi0)},
                 {"psi1", slot_json(c.data.psi1)},
                 {"psi2", slot_json(c.data.psi2)}};
    if (c.grid) j["grid"] = {{"n", c.grid->n}, {"N", c.grid->N}, {"L", c.grid->L}};
    j["times"] = {{"t_min", c.times.t_min},
                  {"t_max", c.times.t_max},
                  {"count", c.times.count},
                  {"spacing", c.times.log ? "log" : "linear"}};
    j["solver"] = {{"T", c.solver.T},
                   {"steps", c.solver.steps},
                   {"record_every", c.solver.record_every},
                   {"nonlinear_scale", c.solver.nonlinear_scale},
                   {"dump", c.solver.dump}};
    j["norms"] = json::array();
    for (const auto& ns : c.norms) j["norms"].push_back({{"sigma", ns.sigma}, {"j", ns.j}});
    j["fit"] = {{"t_min", c.fit.t_min}, {"t_max", c.fit.t_max}, {"tolerance", c.fit.tolerance}};
    j["dispersion"] = {{"xi_min", c.dispersion.xi_min},
                       {"xi_max", c.dispersion.xi_max},
                       {"count", c.dispersion.count}};
    j["quadrature"] = {{"rel_tol", c.quadrature.rel_tol}, {"density", c.quadrature.density}};
    j["output_dir"] = c.output_dir;
    j["seed"] = c.seed;
    return j;
}

std::string serialize_config(const ExperimentConfig& c) { return config_to_json(c).dump(2) + "\n"; }

std::string config_hash(const ExperimentConfig& c) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : serialize_config(c)) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace cattaneo
