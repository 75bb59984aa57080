#include "svort/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "svort/fft.hpp"
#include "svort/io.hpp"

namespace svort {

namespace {

using nlohmann::json;
using ordered = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

void check_keys(const json& obj, const std::string& section,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail("section '" + section + "' must be a JSON object");
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed)
            if (item.key() == key) { known = true; break; }
        if (!known) fail("unknown key '" + item.key() + "' in section '" + section + "'");
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_num(const json& obj, const std::string& sec, const char* key, double dflt) {
    const json* v = find(obj, key);
    if (!v) return dflt;
    if (!v->is_number()) fail(sec + "." + key + " must be a number");
    return v->get<double>();
}

int get_int(const json& obj, const std::string& sec, const char* key, int dflt) {
    const json* v = find(obj, key);
    if (!v) return dflt;
    if (!v->is_number_integer()) fail(sec + "." + key + " must be an integer");
    return v->get<int>();
}

std::uint64_t get_u64(const json& obj, const std::string& sec, const char* key,
                      std::uint64_t dflt) {
    const json* v = find(obj, key);
    if (!v) return dflt;
    if (!v->is_number_unsigned() && !v->is_number_integer())
        fail(sec + "." + key + " must be a non-negative integer");
    if (v->is_number_integer() && v->get<long long>() < 0)
        fail(sec + "." + key + " must be a non-negative integer");
    return v->get<std::uint64_t>();
}

bool get_bool(const json& obj, const std::string& sec, const char* key, bool dflt) {
    const json* v = find(obj, key);
    if (!v) return dflt;
    if (!v->is_boolean()) fail(sec + "." + key + " must be a boolean");
    return v->get<bool>();
}

std::string get_str(const json& obj, const std::string& sec, const char* key,
                    const std::string& dflt) {
    const json* v = find(obj, key);
    if (!v) return dflt;
    if (!v->is_string()) fail(sec + "." + key + " must be a string");
    return v->get<std::string>();
}

std::vector<double> get_vec(const json& obj, const std::string& sec, const char* key) {
    const json* v = find(obj, key);
    if (!v) return {};
    if (!v->is_array()) fail(sec + "." + key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : *v) {
        if (!e.is_number()) fail(sec + "." + key + " must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

void expect_one_of(const std::string& sec, const char* key, const std::string& value,
                   std::initializer_list<const char*> allowed) {
    for (const char* a : allowed)
        if (value == a) return;
    std::string msg = sec;
    msg += ".";
    msg += key;
    msg += " must be one of {";
    bool first = true;
    for (const char* a : allowed) {
        if (!first) msg += ", ";
        msg += a;
        first = false;
    }
    msg += "}, got '" + value + "'";
    fail(msg);
}

}  // namespace

// ============================================================
// Parsing
// ============================================================

RunConfig parse_run_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("config root must be a JSON object");
    // A manifest embeds the resolved config under "config"; accept it directly.
    if (const json* inner = find(doc, "config")) doc = *inner;

    check_keys(doc, "(root)",
               {"noise", "dynamics", "data", "forcing", "ensemble", "outputs", "master",
                "girsanov", "selfsimilar"});

    RunConfig cfg;
    if (const json* s = find(doc, "noise")) {
        check_keys(*s, "noise",
                   {"family", "gamma", "beta", "alpha", "table_r", "table_g", "n", "length",
                    "cutoff", "max_mode"});
        cfg.noise.family = get_str(*s, "noise", "family", cfg.noise.family);
        expect_one_of("noise", "family", cfg.noise.family,
                      {"log_euler", "hypo_ns", "kraichnan", "flandoli_torus", "custom"});
        cfg.noise.gamma = get_num(*s, "noise", "gamma", cfg.noise.gamma);
        cfg.noise.beta = get_num(*s, "noise", "beta", cfg.noise.beta);
        cfg.noise.alpha = get_num(*s, "noise", "alpha", cfg.noise.alpha);
        cfg.noise.table_r = get_vec(*s, "noise", "table_r");
        cfg.noise.table_g = get_vec(*s, "noise", "table_g");
        cfg.noise.n = get_int(*s, "noise", "n", cfg.noise.n);
        cfg.noise.length = get_num(*s, "noise", "length", cfg.noise.length);
        cfg.noise.cutoff = get_num(*s, "noise", "cutoff", cfg.noise.cutoff);
        cfg.noise.max_mode = get_int(*s, "noise", "max_mode", cfg.noise.max_mode);
    }
    if (const json* s = find(doc, "dynamics")) {
        check_keys(*s, "dynamics",
                   {"scheme", "nu", "beta", "gamma", "dt", "horizon", "dealias", "transport",
                    "injection", "ito_corrector", "cfl_limit"});
        cfg.dynamics.scheme = get_str(*s, "dynamics", "scheme", cfg.dynamics.scheme);
        expect_one_of("dynamics", "scheme", cfg.dynamics.scheme,
                      {"linear", "log_euler", "hypo_ns"});
        cfg.dynamics.nu = get_num(*s, "dynamics", "nu", cfg.dynamics.nu);
        cfg.dynamics.beta = get_num(*s, "dynamics", "beta", cfg.dynamics.beta);
        cfg.dynamics.gamma = get_num(*s, "dynamics", "gamma", cfg.dynamics.gamma);
        cfg.dynamics.dt = get_num(*s, "dynamics", "dt", cfg.dynamics.dt);
        cfg.dynamics.horizon = get_num(*s, "dynamics", "horizon", cfg.dynamics.horizon);
        cfg.dynamics.dealias = get_bool(*s, "dynamics", "dealias", cfg.dynamics.dealias);
        cfg.dynamics.transport = get_str(*s, "dynamics", "transport", cfg.dynamics.transport);
        expect_one_of("dynamics", "transport", cfg.dynamics.transport,
                      {"conservative", "skew"});
        cfg.dynamics.injection = get_str(*s, "dynamics", "injection", cfg.dynamics.injection);
        expect_one_of("dynamics", "injection", cfg.dynamics.injection,
                      {"midpoint", "at_left"});
        cfg.dynamics.ito_corrector =
            get_bool(*s, "dynamics", "ito_corrector", cfg.dynamics.ito_corrector);
        cfg.dynamics.cfl_limit = get_num(*s, "dynamics", "cfl_limit", cfg.dynamics.cfl_limit);
    }
    if (const json* s = find(doc, "data")) {
        check_keys(*s, "data",
                   {"preset", "amplitude", "seed", "n1", "n2", "band_min", "band_max",
                    "inner_radius", "outer_radius", "sharpness"});
        cfg.data.preset = get_str(*s, "data", "preset", cfg.data.preset);
        expect_one_of("data", "preset", cfg.data.preset,
                      {"single_mode", "random_band", "radial_bump"});
        cfg.data.amplitude = get_num(*s, "data", "amplitude", cfg.data.amplitude);
        cfg.data.seed = get_u64(*s, "data", "seed", cfg.data.seed);
        cfg.data.n1 = get_int(*s, "data", "n1", cfg.data.n1);
        cfg.data.n2 = get_int(*s, "data", "n2", cfg.data.n2);
        cfg.data.band_min = get_int(*s, "data", "band_min", cfg.data.band_min);
        cfg.data.band_max = get_int(*s, "data", "band_max", cfg.data.band_max);
        cfg.data.inner_radius = get_num(*s, "data", "inner_radius", cfg.data.inner_radius);
        cfg.data.outer_radius = get_num(*s, "data", "outer_radius", cfg.data.outer_radius);
        cfg.data.sharpness = get_num(*s, "data", "sharpness", cfg.data.sharpness);
    }
    if (const json* s = find(doc, "forcing")) {
        check_keys(*s, "forcing", {"type", "alpha", "beta", "t_start", "path"});
        cfg.forcing.type = get_str(*s, "forcing", "type", cfg.forcing.type);
        expect_one_of("forcing", "type", cfg.forcing.type, {"none", "selfsimilar", "file"});
        cfg.forcing.alpha = get_num(*s, "forcing", "alpha", cfg.forcing.alpha);
        cfg.forcing.beta = get_num(*s, "forcing", "beta", cfg.forcing.beta);
        cfg.forcing.t_start = get_num(*s, "forcing", "t_start", cfg.forcing.t_start);
        cfg.forcing.path = get_str(*s, "forcing", "path", cfg.forcing.path);
        if (cfg.forcing.type == "file" && cfg.forcing.path.empty())
            fail("forcing.path is required for forcing.type = file");
    }
    if (const json* s = find(doc, "ensemble")) {
        check_keys(*s, "ensemble", {"members", "master_seed"});
        cfg.ensemble.members = get_int(*s, "ensemble", "members", cfg.ensemble.members);
        cfg.ensemble.master_seed =
            get_u64(*s, "ensemble", "master_seed", cfg.ensemble.master_seed);
    }
    if (const json* s = find(doc, "outputs")) {
        check_keys(*s, "outputs",
                   {"directory", "snapshot_times", "record_times", "diagnostics_stride"});
        cfg.outputs.directory = get_str(*s, "outputs", "directory", cfg.outputs.directory);
        cfg.outputs.snapshot_times = get_vec(*s, "outputs", "snapshot_times");
        cfg.outputs.record_times = get_vec(*s, "outputs", "record_times");
        cfg.outputs.diagnostics_stride =
            get_int(*s, "outputs", "diagnostics_stride", cfg.outputs.diagnostics_stride);
    }
    if (const json* s = find(doc, "master")) {
        check_keys(*s, "master", {"closure", "bound", "record_stride", "initial"});
        cfg.master.closure = get_str(*s, "master", "closure", cfg.master.closure);
        expect_one_of("master", "closure", cfg.master.closure, {"absorbing", "wrap_around"});
        cfg.master.bound = get_int(*s, "master", "bound", cfg.master.bound);
        cfg.master.record_stride = get_int(*s, "master", "record_stride", cfg.master.record_stride);
        cfg.master.initial = get_str(*s, "master", "initial", cfg.master.initial);
        expect_one_of("master", "initial", cfg.master.initial, {"from_data", "constant"});
    }
    if (const json* s = find(doc, "girsanov")) {
        check_keys(*s, "girsanov", {"target", "sign", "obs_n1", "obs_n2"});
        cfg.girsanov.target = get_str(*s, "girsanov", "target", cfg.girsanov.target);
        expect_one_of("girsanov", "target", cfg.girsanov.target, {"log_euler", "hypo_ns"});
        cfg.girsanov.sign = get_str(*s, "girsanov", "sign", cfg.girsanov.sign);
        expect_one_of("girsanov", "sign", cfg.girsanov.sign, {"forward", "reverse"});
        cfg.girsanov.obs_n1 = get_int(*s, "girsanov", "obs_n1", cfg.girsanov.obs_n1);
        cfg.girsanov.obs_n2 = get_int(*s, "girsanov", "obs_n2", cfg.girsanov.obs_n2);
    }
    if (const json* s = find(doc, "selfsimilar")) {
        check_keys(*s, "selfsimilar", {"alpha", "beta", "p", "t", "dt_fd"});
        cfg.selfsimilar.alpha = get_num(*s, "selfsimilar", "alpha", cfg.selfsimilar.alpha);
        cfg.selfsimilar.beta = get_num(*s, "selfsimilar", "beta", cfg.selfsimilar.beta);
        cfg.selfsimilar.p = get_int(*s, "selfsimilar", "p", cfg.selfsimilar.p);
        cfg.selfsimilar.t = get_num(*s, "selfsimilar", "t", cfg.selfsimilar.t);
        cfg.selfsimilar.dt_fd = get_num(*s, "selfsimilar", "dt_fd", cfg.selfsimilar.dt_fd);
    }

    // Fail-fast range checks before any compute starts.
    if (cfg.noise.n < 8 || cfg.noise.n % 2 != 0) fail("noise.n must be even and >= 8");
    if (!(cfg.noise.length > 0)) fail("noise.length must be positive");
    if (cfg.noise.cutoff < 0) fail("noise.cutoff must be >= 0");
    if (cfg.noise.max_mode < 0) fail("noise.max_mode must be >= 0");
    if (!(cfg.dynamics.dt > 0)) fail("dynamics.dt must be positive");
    if (cfg.dynamics.horizon < 0) fail("dynamics.horizon must be >= 0");
    if (cfg.dynamics.nu < 0) fail("dynamics.nu must be >= 0");
    if (cfg.ensemble.members < 1) fail("ensemble.members must be >= 1");
    if (cfg.outputs.diagnostics_stride < 1) fail("outputs.diagnostics_stride must be >= 1");
    if (cfg.data.band_min < 1 || cfg.data.band_max < cfg.data.band_min)
        fail("data band requires 1 <= band_min <= band_max");
    if (cfg.master.bound < 0) fail("master.bound must be >= 0");
    if (cfg.selfsimilar.p < 1) fail("selfsimilar.p must be >= 1");

    // Module-level parameter validation (spectral density ranges etc.).
    try {
        make_density(cfg).validate();
        make_scheme(cfg);
        if (cfg.dynamics.scheme == "hypo_ns" || cfg.dynamics.nu > 0) {
            if (!(cfg.dynamics.beta > 0 && cfg.dynamics.beta < 2))
                fail("dynamics.beta must lie in (0,2)");
        }
        if (cfg.forcing.type == "selfsimilar") {
            SimilarityProfile prof;
            prof.alpha = cfg.forcing.alpha;
            prof.beta = cfg.forcing.beta;
            prof.validate();
            if (!(cfg.forcing.t_start > 0)) fail("forcing.t_start must be positive");
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        fail(std::string("parameter out of range: ") + e.what());
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::string resolved_config_json(const RunConfig& cfg) {
    ordered doc;
    ordered& noise = doc["noise"];
    noise["family"] = cfg.noise.family;
    noise["gamma"] = cfg.noise.gamma;
    noise["beta"] = cfg.noise.beta;
    noise["alpha"] = cfg.noise.alpha;
    if (!cfg.noise.table_r.empty()) {
        noise["table_r"] = cfg.noise.table_r;
        noise["table_g"] = cfg.noise.table_g;
    }
    noise["n"] = cfg.noise.n;
    noise["length"] = cfg.noise.length;
    noise["cutoff"] = cfg.noise.cutoff;
    noise["max_mode"] = cfg.noise.max_mode;

    ordered& dyn = doc["dynamics"];
    dyn["scheme"] = cfg.dynamics.scheme;
    dyn["nu"] = cfg.dynamics.nu;
    dyn["beta"] = cfg.dynamics.beta;
    dyn["gamma"] = cfg.dynamics.gamma;
    dyn["dt"] = cfg.dynamics.dt;
    dyn["horizon"] = cfg.dynamics.horizon;
    dyn["dealias"] = cfg.dynamics.dealias;
    dyn["transport"] = cfg.dynamics.transport;
    dyn["injection"] = cfg.dynamics.injection;
    dyn["ito_corrector"] = cfg.dynamics.ito_corrector;
    dyn["cfl_limit"] = cfg.dynamics.cfl_limit;

    ordered& data = doc["data"];
    data["preset"] = cfg.data.preset;
    data["amplitude"] = cfg.data.amplitude;
    data["seed"] = cfg.data.seed;
    if (cfg.data.preset == "single_mode") {
        data["n1"] = cfg.data.n1;
        data["n2"] = cfg.data.n2;
    } else if (cfg.data.preset == "random_band") {
        data["band_min"] = cfg.data.band_min;
        data["band_max"] = cfg.data.band_max;
    } else {
        data["inner_radius"] = cfg.data.inner_radius;
        data["outer_radius"] = cfg.data.outer_radius;
        data["sharpness"] = cfg.data.sharpness;
    }

    ordered& forcing = doc["forcing"];
    forcing["type"] = cfg.forcing.type;
    if (cfg.forcing.type == "selfsimilar") {
        forcing["alpha"] = cfg.forcing.alpha;
        forcing["beta"] = cfg.forcing.beta;
        forcing["t_start"] = cfg.forcing.t_start;
    } else if (cfg.forcing.type == "file") {
        forcing["path"] = cfg.forcing.path;
    }

    ordered& ens = doc["ensemble"];
    ens["members"] = cfg.ensemble.members;
    ens["master_seed"] = cfg.ensemble.master_seed;

    ordered& outs = doc["outputs"];
    outs["directory"] = cfg.outputs.directory;
    outs["snapshot_times"] = cfg.outputs.snapshot_times;
    outs["record_times"] = cfg.outputs.record_times;
    outs["diagnostics_stride"] = cfg.outputs.diagnostics_stride;

    ordered& master = doc["master"];
    master["closure"] = cfg.master.closure;
    master["bound"] = cfg.master.bound;
    master["record_stride"] = cfg.master.record_stride;
    master["initial"] = cfg.master.initial;

    ordered& gir = doc["girsanov"];
    gir["target"] = cfg.girsanov.target;
    gir["sign"] = cfg.girsanov.sign;
    gir["obs_n1"] = cfg.girsanov.obs_n1;
    gir["obs_n2"] = cfg.girsanov.obs_n2;

    ordered& ss = doc["selfsimilar"];
    ss["alpha"] = cfg.selfsimilar.alpha;
    ss["beta"] = cfg.selfsimilar.beta;
    ss["p"] = cfg.selfsimilar.p;
    ss["t"] = cfg.selfsimilar.t;
    ss["dt_fd"] = cfg.selfsimilar.dt_fd;

    return doc.dump(2) + "\n";
}

// ============================================================
// Builders
// ============================================================

Grid make_grid(const RunConfig& cfg) { return Grid{cfg.noise.n, cfg.noise.length}; }

SpectralDensity make_density(const RunConfig& cfg) {
    const NoiseSection& s = cfg.noise;
    if (s.family == "log_euler") return SpectralDensity::log_euler(s.gamma);
    if (s.family == "hypo_ns") return SpectralDensity::hypo_ns(s.beta);
    if (s.family == "kraichnan") return SpectralDensity::kraichnan(s.alpha);
    if (s.family == "flandoli_torus") return SpectralDensity::flandoli_torus();
    return SpectralDensity::custom(s.table_r, s.table_g);
}

NoiseModel make_noise(const RunConfig& cfg) {
    return NoiseModel(make_grid(cfg), make_density(cfg), cfg.noise.cutoff,
                      cfg.noise.max_mode);
}

Scheme make_scheme(const RunConfig& cfg) {
    const std::string& s = cfg.dynamics.scheme;
    if (s == "linear") return Scheme::linear();
    if (s == "log_euler") return Scheme::log_euler(cfg.dynamics.gamma);
    return Scheme::hypo_ns();
}

SolverConfig make_solver_config(const RunConfig& cfg) {
    SolverConfig sc;
    sc.scheme = make_scheme(cfg);
    sc.nu = cfg.dynamics.nu;
    sc.beta = cfg.dynamics.beta;
    sc.dt = cfg.dynamics.dt;
    sc.horizon = cfg.dynamics.horizon;
    sc.dealias = cfg.dynamics.dealias;
    sc.transport = cfg.dynamics.transport == "skew" ? TransportForm::Skew
                                                    : TransportForm::Conservative;
    sc.injection = cfg.dynamics.injection == "at_left" ? NoiseInjection::AtLeft
                                                       : NoiseInjection::Midpoint;
    sc.ito_corrector = cfg.dynamics.ito_corrector;
    sc.cfl_limit = cfg.dynamics.cfl_limit;
    sc.seed = cfg.ensemble.master_seed;
    sc.member_count = cfg.ensemble.members;
    sc.diag_stride = cfg.outputs.diagnostics_stride;
    sc.snap_times = cfg.outputs.snapshot_times;
    sc.record_times = cfg.outputs.record_times;

    const Grid grid = make_grid(cfg);
    if (cfg.forcing.type == "selfsimilar") {
        SimilarityProfile prof;
        prof.alpha = cfg.forcing.alpha;
        prof.beta = cfg.forcing.beta;
        sc.forcing = forcing_integral(prof, grid, cfg.forcing.t_start);
    } else if (cfg.forcing.type == "file") {
        RawSnapshot snap = read_snapshot(cfg.forcing.path);
        if (snap.n != grid.n || snap.length != grid.length)
            fail("forcing.file grid does not match the run grid");
        ScalarField f(grid);
        f.values = snap.values;
        Fft fft(grid);
        SpectralField fhat = fft.forward(f);
        sc.forcing = [fhat](double t0, double t1) {
            SpectralField out = fhat;
            for (cplx& c : out.coeff) c *= (t1 - t0);
            return out;
        };
    }
    return sc;
}

SpectralField make_initial_data(const RunConfig& cfg) {
    const Grid grid = make_grid(cfg);
    const DataSection& d = cfg.data;
    if (d.preset == "single_mode")
        return single_mode_data(grid, d.n1, d.n2, d.amplitude);
    if (d.preset == "random_band")
        return random_band_data(grid, d.band_min, d.band_max, d.amplitude, d.seed);
    SimilarityProfile prof;
    prof.amplitude = d.amplitude;
    prof.inner_radius = d.inner_radius;
    prof.outer_radius = d.outer_radius;
    prof.sharpness = d.sharpness;
    Fft fft(grid);
    SpectralField what = fft.forward(background(prof, 1.0, grid));
    what.coeff[0] = 0.0;  // the annular bump is mean-free in the continuum
    return what;
}

SimilarityProfile make_profile(const SelfSimilarSection& s) {
    SimilarityProfile prof;
    prof.alpha = s.alpha;
    prof.beta = s.beta;
    prof.validate();
    return prof;
}

}  // namespace svort
