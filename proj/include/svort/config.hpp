#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "svort/noise_model.hpp"
#include "svort/selfsimilar.hpp"
#include "svort/solver.hpp"
#include "svort/spectral_density.hpp"

namespace svort {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// ============================================================
// Run configuration (JSON document, full schema validation)
// ============================================================

struct NoiseSection {
    std::string family = "log_euler";  // log_euler | hypo_ns | kraichnan | flandoli_torus | custom
    double gamma = 1.0;
    double beta = 1.0;
    double alpha = 0.5;
    std::vector<double> table_r, table_g;  // custom family only
    int n = 64;
    double length = 6.283185307179586476925286766559;
    double cutoff = 0.0;
    int max_mode = 0;
};

struct DynamicsSection {
    std::string scheme = "linear";  // linear | log_euler | hypo_ns
    double nu = 0.0;
    double beta = 1.0;
    double gamma = 1.0;
    double dt = 1e-3;
    double horizon = 1.0;
    bool dealias = true;
    std::string transport = "conservative";  // conservative | skew
    std::string injection = "midpoint";      // midpoint | at_left
    bool ito_corrector = true;
    double cfl_limit = 5.0;
};

struct DataSection {
    std::string preset = "single_mode";  // single_mode | random_band | radial_bump
    double amplitude = 1.0;
    std::uint64_t seed = 1;
    int n1 = 1, n2 = 0;          // single_mode
    int band_min = 1, band_max = 4;  // random_band
    double inner_radius = 1.2, outer_radius = 2.4, sharpness = 3.0;  // radial_bump
};

struct ForcingSection {
    std::string type = "none";  // none | selfsimilar | file
    double alpha = 1.5;
    double beta = 0.5;
    double t_start = 0.5;
    std::string path;
};

struct EnsembleSection {
    int members = 1;
    std::uint64_t master_seed = 1;
};

struct OutputSection {
    std::string directory = "out";
    std::vector<double> snapshot_times;
    std::vector<double> record_times;
    int diagnostics_stride = 1;
};

struct MasterSection {
    std::string closure = "absorbing";  // absorbing | wrap_around
    int bound = 0;                      // 0 = full lattice
    int record_stride = 0;
    std::string initial = "from_data";  // from_data | constant
};

struct GirsanovSection {
    std::string target = "log_euler";  // log_euler | hypo_ns
    std::string sign = "forward";      // forward | reverse
    int obs_n1 = 1, obs_n2 = 0;
};

struct SelfSimilarSection {
    double alpha = 1.5;
    double beta = 0.5;
    int p = 2;
    double t = 1.0;
    double dt_fd = 1e-3;
};

struct RunConfig {
    NoiseSection noise;
    DynamicsSection dynamics;
    DataSection data;
    ForcingSection forcing;
    EnsembleSection ensemble;
    OutputSection outputs;
    MasterSection master;
    GirsanovSection girsanov;
    SelfSimilarSection selfsimilar;
};

// Parses and validates; unknown keys and malformed values raise ConfigError.
// Accepts either a bare config document or a manifest containing one under
// the "config" key, so a run can be reproduced from its manifest alone.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

// Fully resolved echo (defaults filled in), deterministic key order.
std::string resolved_config_json(const RunConfig& cfg);

// ============================================================
// Builders (validate against module preconditions)
// ============================================================

Grid make_grid(const RunConfig& cfg);
SpectralDensity make_density(const RunConfig& cfg);
NoiseModel make_noise(const RunConfig& cfg);
Scheme make_scheme(const RunConfig& cfg);
SolverConfig make_solver_config(const RunConfig& cfg);
SpectralField make_initial_data(const RunConfig& cfg);
SimilarityProfile make_profile(const SelfSimilarSection& s);

}  // namespace svort
