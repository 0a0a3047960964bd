#include "bkdv/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "bkdv/errors.hpp"

namespace bkdv {

namespace {

void require_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
    if (!node.IsMap()) throw InputError("config: '" + path + "' must be a mapping");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.count(key)) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            throw InputError("config: unknown key '" + (path.empty() ? key : path + "." + key) + "' (allowed: " + list + ")");
        }
    }
}

template <class T>
void read(const YAML::Node& node, const std::string& key, const std::string& path, T& out) {
    const auto v = node[key];
    if (!v) return;
    try {
        out = v.as<T>();
    } catch (const YAML::Exception&) {
        throw InputError("config: cannot read '" + path + "." + key + "'");
    }
}

template <class T>
void read(const YAML::Node& node, const std::string& key, const std::string& path, std::optional<T>& out) {
    const auto v = node[key];
    if (!v) return;
    T tmp{};
    read(node, key, path, tmp);
    out = tmp;
}

EffectiveForm parse_form(const std::string& s) {
    if (s == "corrected") return EffectiveForm::corrected;
    if (s == "leading") return EffectiveForm::leading;
    throw InputError("config: compare.form must be 'leading' or 'corrected'");
}

}  // namespace

Nonlinearity ExperimentConfig::make_nonlinearity() const { return Nonlinearity::parse(nonlinearity); }

Grid ExperimentConfig::make_grid() const { return Grid(L, N); }

BottomProfile ExperimentConfig::make_bottom() const {
    const auto& b = bottom;
    if (b.family == "zero") return BottomProfile::zero();
    if (b.family == "constant") return BottomProfile::constant(b.value);
    if (b.family == "static-bump") return BottomProfile::static_bump(b.eps_a, b.eps_x);
    if (b.family == "moving-ramp") return BottomProfile::moving_ramp(b.eps_a, b.eps_x, b.eps_t);
    throw InputError("config: unknown bottom family '" + b.family + "' (zero, constant, static-bump, moving-ramp)");
}

double ExperimentConfig::epsilon_scale() const {
    if (!modulation.s) return std::numeric_limits<double>::quiet_NaN();
    return std::pow(bottom.eps_a * bottom.eps_x, *modulation.s);
}

double ExperimentConfig::alpha() const {
    if (modulation.alpha) {
        if (!(*modulation.alpha > 0.0)) throw InputError("config: modulation.alpha must be positive");
        return *modulation.alpha;
    }
    if (!modulation.s) throw InputError("config: set modulation.alpha or modulation.s");
    const double s = *modulation.s;
    if (!(s > 0.0 && s < 0.5)) throw InputError("config: modulation.s must satisfy 0 < s < 1/2");
    const double e = bottom.eps_a * bottom.eps_x;
    if (!(e > 0.0)) throw InputError("config: the alpha rule needs eps_a * eps_x > 0");
    return std::pow(e, s);
}

ExperimentConfig parse_config(const std::string& yaml_text) {
    YAML::Node root;
    try {
        root = YAML::Load(yaml_text);
    } catch (const YAML::Exception& e) {
        throw InputError(std::string("config: YAML parse error: ") + e.what());
    }
    ExperimentConfig c;
    if (!root || root.IsNull()) return c;
    require_keys(root, "", {"nonlinearity", "grid", "solver", "bottom", "modulation", "initial", "compare", "verify",
                            "seed", "output_dir"});
    read(root, "nonlinearity", "", c.nonlinearity);
    read(root, "seed", "", c.seed);
    read(root, "output_dir", "", c.output_dir);
    if (auto n = root["grid"]) {
        require_keys(n, "grid", {"L", "N"});
        read(n, "L", "grid", c.L);
        read(n, "N", "grid", c.N);
    }
    if (auto n = root["solver"]) {
        require_keys(n, "solver", {"dt", "t_end", "output_stride", "integrator", "dealias_fraction", "contour_points"});
        read(n, "dt", "solver", c.solver.dt);
        read(n, "t_end", "solver", c.solver.t_end);
        read(n, "output_stride", "solver", c.solver.output_stride);
        read(n, "integrator", "solver", c.solver.integrator);
        read(n, "dealias_fraction", "solver", c.solver.dealias_fraction);
        read(n, "contour_points", "solver", c.solver.contour_points);
    }
    if (auto n = root["bottom"]) {
        require_keys(n, "bottom", {"family", "eps_a", "eps_x", "eps_t", "value"});
        read(n, "family", "bottom", c.bottom.family);
        read(n, "eps_a", "bottom", c.bottom.eps_a);
        read(n, "eps_x", "bottom", c.bottom.eps_x);
        read(n, "eps_t", "bottom", c.bottom.eps_t);
        read(n, "value", "bottom", c.bottom.value);
    }
    if (auto n = root["modulation"]) {
        require_keys(n, "modulation", {"alpha", "s", "tube_radius", "tol", "interval"});
        read(n, "alpha", "modulation", c.modulation.alpha);
        read(n, "s", "modulation", c.modulation.s);
        read(n, "tube_radius", "modulation", c.modulation.tube_radius);
        read(n, "tol", "modulation", c.modulation.tol);
        if (auto iv = n["interval"]) {
            std::vector<double> v;
            read(n, "interval", "modulation", v);
            if (v.size() != 2) throw InputError("config: modulation.interval must be [lo, hi]");
            c.modulation.interval = {v[0], v[1]};
        }
    }
    if (auto n = root["initial"]) {
        require_keys(n, "initial", {"c0", "a0", "perturbation_h1", "perturbation_kmax", "perturbation_width"});
        read(n, "c0", "initial", c.initial.c0);
        read(n, "a0", "initial", c.initial.a0);
        read(n, "perturbation_h1", "initial", c.initial.perturbation_h1);
        read(n, "perturbation_kmax", "initial", c.initial.perturbation_kmax);
        read(n, "perturbation_width", "initial", c.initial.perturbation_width);
    }
    if (auto n = root["compare"]) {
        require_keys(n, "compare", {"window_constant", "xi_bound", "param_bound", "good_bound", "a_tolerance",
                                    "c_tolerance", "form", "effective_dt", "split"});
        read(n, "window_constant", "compare", c.compare.window_constant);
        read(n, "xi_bound", "compare", c.compare.xi_bound);
        read(n, "param_bound", "compare", c.compare.param_bound);
        read(n, "good_bound", "compare", c.compare.good_bound);
        read(n, "a_tolerance", "compare", c.compare.a_tolerance);
        read(n, "c_tolerance", "compare", c.compare.c_tolerance);
        std::string form;
        read(n, "form", "compare", form);
        if (!form.empty()) c.compare.form = parse_form(form);
        read(n, "effective_dt", "compare", c.compare.effective_dt);
        read(n, "split", "compare", c.compare.split);
    }
    if (auto n = root["verify"]) {
        require_keys(n, "verify", {"alphas", "c_points", "L", "N", "spectral_L", "spectral_N", "oracle_N", "sigma_band",
                                   "eta_perp_bound", "omega_constant", "random_trials", "remainder_powers"});
        read(n, "alphas", "verify", c.verify.alphas);
        read(n, "c_points", "verify", c.verify.c_points);
        read(n, "L", "verify", c.verify.L);
        read(n, "N", "verify", c.verify.N);
        read(n, "spectral_L", "verify", c.verify.spectral_L);
        read(n, "spectral_N", "verify", c.verify.spectral_N);
        read(n, "oracle_N", "verify", c.verify.oracle_N);
        read(n, "sigma_band", "verify", c.verify.sigma_band);
        read(n, "eta_perp_bound", "verify", c.verify.eta_perp_bound);
        read(n, "omega_constant", "verify", c.verify.omega_constant);
        read(n, "random_trials", "verify", c.verify.random_trials);
        read(n, "remainder_powers", "verify", c.verify.remainder_powers);
        if (c.verify.sigma_band.size() != 2) throw InputError("config: verify.sigma_band must be [C1, C2]");
    }
    // Fail fast on values the solver would reject later.
    c.make_nonlinearity();
    c.make_grid();
    c.make_bottom();
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError("config: cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

std::string dump_config(const ExperimentConfig& c) {
    YAML::Emitter e;
    e.SetDoublePrecision(17);
    e << YAML::BeginMap;
    e << YAML::Key << "nonlinearity" << YAML::Value << c.nonlinearity;
    e << YAML::Key << "grid" << YAML::Value << YAML::BeginMap << YAML::Key << "L" << YAML::Value << c.L << YAML::Key
      << "N" << YAML::Value << c.N << YAML::EndMap;
    e << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "dt" << YAML::Value << c.solver.dt;
    e << YAML::Key << "t_end" << YAML::Value << c.solver.t_end;
    e << YAML::Key << "output_stride" << YAML::Value << c.solver.output_stride;
    e << YAML::Key << "integrator" << YAML::Value << c.solver.integrator;
    e << YAML::Key << "dealias_fraction" << YAML::Value << c.solver.dealias_fraction;
    e << YAML::Key << "contour_points" << YAML::Value << c.solver.contour_points;
    e << YAML::EndMap;
    e << YAML::Key << "bottom" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "family" << YAML::Value << c.bottom.family;
    e << YAML::Key << "eps_a" << YAML::Value << c.bottom.eps_a;
    e << YAML::Key << "eps_x" << YAML::Value << c.bottom.eps_x;
    e << YAML::Key << "eps_t" << YAML::Value << c.bottom.eps_t;
    e << YAML::Key << "value" << YAML::Value << c.bottom.value;
    e << YAML::EndMap;
    e << YAML::Key << "modulation" << YAML::Value << YAML::BeginMap;
    if (c.modulation.alpha) e << YAML::Key << "alpha" << YAML::Value << *c.modulation.alpha;
    if (c.modulation.s) e << YAML::Key << "s" << YAML::Value << *c.modulation.s;
    if (!std::isnan(c.modulation.tube_radius)) e << YAML::Key << "tube_radius" << YAML::Value << c.modulation.tube_radius;
    e << YAML::Key << "tol" << YAML::Value << c.modulation.tol;
    e << YAML::Key << "interval" << YAML::Value << YAML::Flow << YAML::BeginSeq << c.modulation.interval.lo
      << c.modulation.interval.hi << YAML::EndSeq;
    e << YAML::EndMap;
    e << YAML::Key << "initial" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "c0" << YAML::Value << c.initial.c0;
    e << YAML::Key << "a0" << YAML::Value << c.initial.a0;
    e << YAML::Key << "perturbation_h1" << YAML::Value << c.initial.perturbation_h1;
    e << YAML::Key << "perturbation_kmax" << YAML::Value << c.initial.perturbation_kmax;
    e << YAML::Key << "perturbation_width" << YAML::Value << c.initial.perturbation_width;
    e << YAML::EndMap;
    e << YAML::Key << "compare" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "window_constant" << YAML::Value << c.compare.window_constant;
    if (c.compare.xi_bound) e << YAML::Key << "xi_bound" << YAML::Value << *c.compare.xi_bound;
    if (c.compare.param_bound) e << YAML::Key << "param_bound" << YAML::Value << *c.compare.param_bound;
    if (c.compare.good_bound) e << YAML::Key << "good_bound" << YAML::Value << *c.compare.good_bound;
    if (c.compare.a_tolerance) e << YAML::Key << "a_tolerance" << YAML::Value << *c.compare.a_tolerance;
    if (c.compare.c_tolerance) e << YAML::Key << "c_tolerance" << YAML::Value << *c.compare.c_tolerance;
    e << YAML::Key << "form" << YAML::Value << (c.compare.form == EffectiveForm::corrected ? "corrected" : "leading");
    e << YAML::Key << "effective_dt" << YAML::Value << c.compare.effective_dt;
    e << YAML::Key << "split" << YAML::Value << c.compare.split;
    e << YAML::EndMap;
    e << YAML::Key << "verify" << YAML::Value << YAML::BeginMap;
    e << YAML::Key << "alphas" << YAML::Value << YAML::Flow << c.verify.alphas;
    e << YAML::Key << "c_points" << YAML::Value << c.verify.c_points;
    e << YAML::Key << "L" << YAML::Value << c.verify.L;
    e << YAML::Key << "N" << YAML::Value << c.verify.N;
    e << YAML::Key << "spectral_L" << YAML::Value << c.verify.spectral_L;
    e << YAML::Key << "spectral_N" << YAML::Value << c.verify.spectral_N;
    e << YAML::Key << "oracle_N" << YAML::Value << c.verify.oracle_N;
    e << YAML::Key << "sigma_band" << YAML::Value << YAML::Flow << c.verify.sigma_band;
    e << YAML::Key << "eta_perp_bound" << YAML::Value << c.verify.eta_perp_bound;
    e << YAML::Key << "omega_constant" << YAML::Value << c.verify.omega_constant;
    e << YAML::Key << "random_trials" << YAML::Value << c.verify.random_trials;
    e << YAML::Key << "remainder_powers" << YAML::Value << YAML::Flow << c.verify.remainder_powers;
    e << YAML::EndMap;
    e << YAML::Key << "seed" << YAML::Value << c.seed;
    e << YAML::Key << "output_dir" << YAML::Value << c.output_dir;
    e << YAML::EndMap;
    return std::string(e.c_str()) + "\n";
}

}  // namespace bkdv
