// svort: pseudo-spectral simulator and verification harness for 2D fluid
// models driven by divergence-free transport noise.
//
// Subcommands: simulate, master-eq, compare, girsanov, selfsimilar, noise-diag.
// Exit codes: 0 ok, 2 config error, 3 numerical failure, 4 comparison failure.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "svort/config.hpp"
#include "svort/fft.hpp"
#include "svort/girsanov.hpp"
#include "svort/io.hpp"
#include "svort/manifest.hpp"
#include "svort/master_eq.hpp"
#include "svort/noise_model.hpp"
#include "svort/norms.hpp"
#include "svort/sampler.hpp"
#include "svort/selfsimilar.hpp"
#include "svort/solver.hpp"

namespace {

using nlohmann::ordered_json;
using namespace svort;

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int members = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "run configuration (JSON)")->required();
    cmd->add_option("--out", args.out_dir, "output directory override");
    cmd->add_option("--seed", args.seed, "master seed override")
        ->each([&](const std::string&) { args.seed_set = true; });
    cmd->add_option("--members", args.members, "ensemble size override");
}

RunConfig load_with_overrides(const CommonArgs& args) {
    RunConfig cfg = load_run_config(args.config_path);
    if (!args.out_dir.empty()) cfg.outputs.directory = args.out_dir;
    if (args.seed_set) cfg.ensemble.master_seed = args.seed;
    if (args.members > 0) cfg.ensemble.members = args.members;
    return cfg;
}

void emit_error(const std::string& kind, const std::string& detail) {
    ordered_json err;
    err["error"] = kind;
    err["detail"] = detail;
    std::cerr << err.dump() << "\n";
}

// Shell-averaged spectrum rows: shell s collects distinct lattice modes with
// round(|n|) == s; column weight 2 accounts for the conjugate half.
std::map<int, std::pair<double, double>> shell_average(const Grid& g,
                                                       const std::vector<double>& per_mode) {
    const int cols = g.n / 2 + 1;
    std::map<int, std::pair<double, double>> acc;  // shell -> (sum, count)
    for (int i = 0; i < g.n; ++i) {
        const int n1 = g.mode_of(i);
        if (std::abs(n1) == g.n / 2) continue;
        for (int j2 = 0; j2 < cols; ++j2) {
            if (j2 == g.n / 2) continue;
            if (n1 == 0 && j2 == 0) continue;
            const double w = j2 == 0 ? 1.0 : 2.0;
            const int shell = static_cast<int>(std::lround(std::hypot(n1, j2)));
            auto& slot = acc[shell];
            slot.first += w * per_mode[static_cast<std::size_t>(i) * cols + j2];
            slot.second += w;
        }
    }
    return acc;
}

void write_diagnostics_csv(const std::string& path, const TrajectoryRecord& record) {
    CsvWriter csv(path, {"t", "l1", "l2", "l4", "hm1", "hbeta2", "logw", "cm_integrand"});
    for (const DiagRow& row : record.rows)
        csv.row({row.t, row.l1, row.l2, row.l4, row.hm1, row.hbeta2, row.logw,
                 row.cm_integrand});
}

void write_spectra_csv(const std::string& path, const EnsembleStats& stats) {
    CsvWriter csv(path, {"t", "shell", "mean_sq", "var_sq"});
    for (const ModeStats& ms : stats.at) {
        const auto mean_shells = shell_average(stats.grid, ms.mean_sq);
        const auto var_shells = shell_average(stats.grid, ms.var_sq);
        for (const auto& [shell, sum_count] : mean_shells) {
            const auto& vs = var_shells.at(shell);
            csv.row({ms.t, static_cast<double>(shell), sum_count.first / sum_count.second,
                     vs.first / vs.second});
        }
    }
}

// ============================================================
// simulate
// ============================================================

int cmd_simulate(const CommonArgs& args) {
    const RunConfig cfg = load_with_overrides(args);
    const std::string dir = cfg.outputs.directory;
    std::filesystem::create_directories(dir);

    NoiseModel model = make_noise(cfg);
    SolverConfig sc = make_solver_config(cfg);
    SpectralField omega0 = make_initial_data(cfg);
    Solver solver(model, sc);
    Fft fft(model.grid());

    ManifestBuilder manifest("simulate", resolved_config_json(cfg));
    manifest.add_constant("kappa", model.kappa());
    manifest.add_constant("sum_q", model.sum_q());
    manifest.add_constant("c_norm", model.grid().dk() * model.grid().dk());
    manifest.add_count("mode_count", static_cast<long long>(model.mode_count()));
    manifest.add_constant("preflight_ratio", solver.preflight_ratio(omega0));
    manifest.add_constant("cfl_limit", sc.cfl_limit);
    manifest.add_note("noise_regularity", model.classify_regularity().describe());
    manifest.add_note("tool", kToolVersion);

    bool blew_up = false;
    std::string blow_note;
    try {
        Solver::MemberResult member0 = solver.run_member(omega0, 0);
        write_diagnostics_csv(dir + "/diagnostics.csv", member0.record);
        manifest.add_artifact(dir, "diagnostics.csv");
        int snap_index = 0;
        for (const auto& [time, state] : member0.record.snapshots) {
            char name[48];
            std::snprintf(name, sizeof(name), "snapshot_%03d.bin", snap_index++);
            write_snapshot(dir + "/" + name, fft.backward(state), time);
            manifest.add_artifact(dir, name);
        }
        if (cfg.ensemble.members > 1) {
            EnsembleStats stats = solver.run_ensemble(omega0);
            write_spectra_csv(dir + "/spectra.csv", stats);
            manifest.add_artifact(dir, "spectra.csv");
            if (!stats.failed_members.empty()) {
                blew_up = true;
                blow_note = std::to_string(stats.failed_members.size()) +
                            " ensemble member(s) blew up";
                manifest.add_note("blow_up", blow_note);
            }
        }
    } catch (const BlowUpError& e) {
        blew_up = true;
        blow_note = e.what();
        manifest.add_note("blow_up", blow_note);
    }

    manifest.write(dir);
    if (blew_up) {
        emit_error("blow_up", blow_note);
        return 3;
    }
    return 0;
}

// ============================================================
// master-eq
// ============================================================

int cmd_master_eq(const CommonArgs& args) {
    const RunConfig cfg = load_with_overrides(args);
    const std::string dir = cfg.outputs.directory;
    std::filesystem::create_directories(dir);

    NoiseModel model = make_noise(cfg);
    const LatticeClosure closure = cfg.master.closure == "wrap_around"
                                       ? LatticeClosure::WrapAround
                                       : LatticeClosure::Absorbing;
    MasterEquation eq(model, cfg.dynamics.nu, cfg.dynamics.beta, closure, cfg.master.bound);

    MasterEquation::State a0;
    if (cfg.master.initial == "constant")
        a0.assign(eq.state_size(), cfg.data.amplitude);
    else
        a0 = eq.from_field(make_initial_data(cfg));

    MasterEquation::Trajectory traj =
        eq.integrate(a0, cfg.dynamics.horizon, cfg.dynamics.dt, cfg.master.record_stride);

    {
        CsvWriter csv(dir + "/spectrum_trajectory.csv", {"t", "shell", "mean_energy"});
        const int side = eq.side();
        for (std::size_t ti = 0; ti < traj.times.size(); ++ti) {
            std::map<int, std::pair<double, double>> acc;
            for (int n1 = -eq.bound(); n1 <= eq.bound(); ++n1)
                for (int n2 = -eq.bound(); n2 <= eq.bound(); ++n2) {
                    if (n1 == 0 && n2 == 0) continue;
                    const int shell = static_cast<int>(std::lround(std::hypot(n1, n2)));
                    auto& slot = acc[shell];
                    slot.first += traj.states[ti][static_cast<std::size_t>(n1 + eq.bound()) * side +
                                                  (n2 + eq.bound())];
                    slot.second += 1.0;
                }
            for (const auto& [shell, sum_count] : acc)
                csv.row({traj.times[ti], static_cast<double>(shell),
                         sum_count.first / sum_count.second});
        }
    }

    ManifestBuilder manifest("master-eq", resolved_config_json(cfg));
    manifest.add_artifact(dir, "spectrum_trajectory.csv");
    for (std::size_t ti = 0; ti < traj.times.size(); ++ti) {
        char name[48];
        std::snprintf(name, sizeof(name), "lattice_%03zu.bin", ti);
        write_snapshot(dir + "/" + name, eq.side(), model.grid().length, traj.times[ti],
                       traj.states[ti]);
        manifest.add_artifact(dir, name);
    }
    manifest.add_constant("kappa", model.kappa());
    manifest.add_constant("max_rate", eq.max_rate());
    manifest.add_constant("stability_dt", 2.0 / eq.max_rate());
    manifest.add_constant("mass_initial", MasterEquation::sum(traj.states.front()));
    manifest.add_constant("mass_final", MasterEquation::sum(traj.states.back()));
    manifest.add_constant("sum_sq_initial", MasterEquation::sum_sq(traj.states.front()));
    manifest.add_constant("sum_sq_final", MasterEquation::sum_sq(traj.states.back()));
    manifest.add_constant("min_entry_final",
                          *std::min_element(traj.states.back().begin(), traj.states.back().end()));
    manifest.write(dir);
    return 0;
}

// ============================================================
// compare (Monte Carlo vs master equation), exit 4 on mismatch
// ============================================================

int cmd_compare(const CommonArgs& args) {
    const RunConfig cfg = load_with_overrides(args);
    const std::string dir = cfg.outputs.directory;
    std::filesystem::create_directories(dir);

    NoiseModel model = make_noise(cfg);
    SolverConfig sc = make_solver_config(cfg);
    SpectralField omega0 = make_initial_data(cfg);
    Solver solver(model, sc);
    EnsembleStats stats = solver.run_ensemble(omega0);

    MasterEquation eq(model, cfg.dynamics.nu, cfg.dynamics.beta, LatticeClosure::Absorbing,
                      cfg.master.bound);
    MasterEquation::Trajectory traj =
        eq.integrate(eq.from_field(omega0), cfg.dynamics.horizon, cfg.dynamics.dt, 0);

    const std::size_t idx = stats.at.size() - 1;
    ComparisonReport report = compare_mc(stats, idx, eq, traj.states.back());

    ordered_json out;
    out["time"] = stats.at[idx].t;
    out["members"] = stats.members;
    out["modes_considered"] = report.considered;
    out["modes_within_3sigma"] = report.within;
    out["fraction"] = report.fraction();
    out["worst_z"] = report.worst_z;
    out["worst_mode"] = {report.worst_n1, report.worst_n2};
    out["pass"] = report.fraction() >= 0.95;
    std::ofstream(dir + "/compare.json") << out.dump(2) << "\n";

    ManifestBuilder manifest("compare", resolved_config_json(cfg));
    manifest.add_artifact(dir, "compare.json");
    manifest.add_constant("fraction_within", report.fraction());
    manifest.write(dir);

    std::cout << out.dump(2) << "\n";
    return report.fraction() >= 0.95 ? 0 : 4;
}

// ============================================================
// girsanov
// ============================================================

int cmd_girsanov(const CommonArgs& args) {
    const RunConfig cfg = load_with_overrides(args);
    const std::string dir = cfg.outputs.directory;
    std::filesystem::create_directories(dir);

    if (cfg.dynamics.scheme != "linear")
        throw ConfigError("girsanov reweighting drives the linear scheme; set dynamics.scheme = linear");

    NoiseModel model = make_noise(cfg);
    SolverConfig sc = make_solver_config(cfg);
    SpectralField omega0 = make_initial_data(cfg);
    const Scheme target = cfg.girsanov.target == "hypo_ns"
                              ? Scheme::hypo_ns()
                              : Scheme::log_euler(cfg.dynamics.gamma);
    const DensitySign sign =
        cfg.girsanov.sign == "reverse" ? DensitySign::Reverse : DensitySign::Forward;

    GirsanovEnsemble ens = girsanov_linear_ensemble(model, sc, target, omega0,
                                                    cfg.girsanov.obs_n1, cfg.girsanov.obs_n2, sign);

    {
        CsvWriter csv(dir + "/weights.csv",
                      {"member", "log_density", "quadratic", "l2_sq", "mode_re", "mode_im"});
        for (std::size_t m = 0; m < ens.log_density.size(); ++m)
            csv.row({static_cast<double>(m), ens.log_density[m], ens.quadratic[m],
                     ens.f_l2sq[m], ens.f_mode[m].real(), ens.f_mode[m].imag()});
    }

    const std::vector<double> ones(ens.log_density.size(), 1.0);
    std::vector<double> mode_re(ens.f_mode.size()), mode_im(ens.f_mode.size());
    for (std::size_t m = 0; m < ens.f_mode.size(); ++m) {
        mode_re[m] = ens.f_mode[m].real();
        mode_im[m] = ens.f_mode[m].imag();
    }
    const ReweightedEstimate martingale = reweighted_expectation(ones, ens.log_density);
    const ReweightedEstimate l2 = reweighted_expectation(ens.f_l2sq, ens.log_density);
    const ReweightedEstimate re = reweighted_expectation(mode_re, ens.log_density);
    const ReweightedEstimate im = reweighted_expectation(mode_im, ens.log_density);
    const EntropyBound entropy = entropy_bound(ens.quadratic);

    ordered_json out;
    auto put = [&](const char* name, const ReweightedEstimate& est) {
        ordered_json row;
        row["observable"] = name;
        row["estimate"] = est.estimate;
        row["stderr"] = est.stderr_jackknife;
        row["ess"] = est.ess;
        row["M"] = est.members;
        row["T"] = cfg.dynamics.horizon;
        row["scheme"] = cfg.girsanov.target;
        out["estimates"].push_back(row);
    };
    put("martingale_mean", martingale);
    put("l2_sq", l2);
    put("mode_re", re);
    put("mode_im", im);
    out["entropy_bound"] = {{"value", entropy.value}, {"stderr", entropy.stderr_}};
    out["sign"] = cfg.girsanov.sign;
    out["low_ess_warning"] = martingale.low_ess_warning;
    std::ofstream(dir + "/girsanov.json") << out.dump(2) << "\n";

    ManifestBuilder manifest("girsanov", resolved_config_json(cfg));
    manifest.add_artifact(dir, "weights.csv");
    manifest.add_artifact(dir, "girsanov.json");
    manifest.add_constant("martingale_mean", martingale.estimate);
    manifest.add_constant("ess", martingale.ess);
    manifest.write(dir);

    std::cout << out.dump(2) << "\n";
    return 0;
}

// ============================================================
// selfsimilar
// ============================================================

int cmd_selfsimilar(const CommonArgs& args) {
    const RunConfig cfg = load_with_overrides(args);
    const std::string dir = cfg.outputs.directory;
    std::filesystem::create_directories(dir);

    const Grid grid = make_grid(cfg);
    const SimilarityProfile prof = make_profile(cfg.selfsimilar);
    Fft fft(grid);

    const IntegrabilityFlags flags =
        integrability_predicates(prof.alpha, prof.beta, cfg.selfsimilar.p);
    ShellClassifier classifier(prof, grid, fft);
    const ShellReport shells = classifier.report(cfg.selfsimilar.p);
    const ResidualReport res =
        residual(prof, cfg.selfsimilar.t, cfg.selfsimilar.dt_fd, grid, fft);

    {
        CsvWriter csv(dir + "/integrands.csv", {"t", "omega", "energy", "forcing"});
        constexpr int points = 57;
        for (int i = 0; i < points; ++i) {
            const double t = std::pow(4.0, -14.0 + 14.0 * i / (points - 1));
            csv.row({t, classifier.omega_integrand(t, cfg.selfsimilar.p),
                     classifier.energy_integrand(t),
                     classifier.forcing_integrand(t, cfg.selfsimilar.p)});
        }
    }

    ordered_json out;
    out["alpha"] = prof.alpha;
    out["beta"] = prof.beta;
    out["p"] = cfg.selfsimilar.p;
    out["predicates"] = {{"omega_l2_lp", flags.omega_l2_lp},
                         {"omega_l2_hbeta2", flags.omega_l2_hbeta2},
                         {"f_l1_lp", flags.f_l1_lp},
                         {"full", flags.full}};
    out["shells"] = {{"omega", {{"closed", label_name(shells.omega_closed)},
                                {"numeric", label_name(shells.omega_numeric)},
                                {"ratio", shells.omega_ratio}}},
                     {"energy", {{"closed", label_name(shells.energy_closed)},
                                 {"numeric", label_name(shells.energy_numeric)},
                                 {"ratio", shells.energy_ratio}}},
                     {"forcing", {{"closed", label_name(shells.forcing_closed)},
                                  {"numeric", label_name(shells.forcing_numeric)},
                                  {"ratio", shells.forcing_ratio}}},
                     {"agree", shells.agree()}};
    out["residuals"] = {{"t", cfg.selfsimilar.t},
                        {"dt_fd", cfg.selfsimilar.dt_fd},
                        {"transport_rel", res.transport_rel},
                        {"pde_residual", res.pde_residual}};
    std::ofstream(dir + "/selfsimilar.json") << out.dump(2) << "\n";

    ManifestBuilder manifest("selfsimilar", resolved_config_json(cfg));
    manifest.add_artifact(dir, "integrands.csv");
    manifest.add_artifact(dir, "selfsimilar.json");
    manifest.add_constant("transport_rel", res.transport_rel);
    manifest.add_constant("pde_residual", res.pde_residual);
    manifest.write(dir);

    std::cout << out.dump(2) << "\n";
    return 0;
}

// ============================================================
// noise-diag
// ============================================================

int cmd_noise_diag(const CommonArgs& args) {
    const RunConfig cfg = load_with_overrides(args);
    const std::string dir = cfg.outputs.directory;
    std::filesystem::create_directories(dir);

    NoiseModel model = make_noise(cfg);
    const Grid& g = model.grid();
    Fft fft(g);

    const bool with_empirical = cfg.ensemble.members >= 2;
    {
        std::vector<std::string> cols = {"r", "exact"};
        if (with_empirical) cols.push_back("empirical");
        CsvWriter csv(dir + "/structure.csv", cols);
        std::vector<int> shifts;
        for (int s = 1; s <= g.n / 4; s = std::max(s + 1, s * 5 / 4)) shifts.push_back(s);
        for (int s : shifts) {
            const double r = s * g.spacing();
            if (with_empirical) {
                StructurePoint pt = empirical_structure_function(model, fft, cfg.ensemble.members,
                                                                 s, cfg.ensemble.master_seed);
                csv.row({pt.r, pt.exact, pt.empirical});
            } else {
                csv.row({r, model.structure_function(r)});
            }
        }
    }

    const Mat2 q0 = model.covariance(0.0, 0.0);
    ordered_json out;
    out["family"] = cfg.noise.family;
    out["kappa"] = model.kappa();
    out["sum_q"] = model.sum_q();
    out["c_norm"] = g.dk() * g.dk();
    out["mode_count"] = model.mode_count();
    out["trace_q0"] = q0.a11 + q0.a22;
    out["regularity"] = model.classify_regularity().describe();
    out["kappa_identity_residuals"] = {
        {"k_10", model.kappa_identity_residual(g.dk(), 0.0)},
        {"k_21", model.kappa_identity_residual(2 * g.dk(), g.dk())},
        {"k_53", model.kappa_identity_residual(5 * g.dk(), 3 * g.dk())}};
    std::ofstream(dir + "/noise.json") << out.dump(2) << "\n";

    ManifestBuilder manifest("noise-diag", resolved_config_json(cfg));
    manifest.add_artifact(dir, "structure.csv");
    manifest.add_artifact(dir, "noise.json");
    manifest.add_constant("kappa", model.kappa());
    manifest.add_constant("sum_q", model.sum_q());
    manifest.add_count("mode_count", static_cast<long long>(model.mode_count()));
    manifest.write(dir);

    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spectral transport-noise simulator and verification harness"};
    app.require_subcommand(1);

    CommonArgs args;
    CLI::App* simulate = app.add_subcommand("simulate", "run the stochastic solver ensemble");
    CLI::App* master = app.add_subcommand("master-eq", "integrate the spectrum master equation");
    CLI::App* compare = app.add_subcommand("compare", "Monte Carlo vs master-equation z-test");
    CLI::App* girsanov = app.add_subcommand("girsanov", "linear-ensemble reweighting");
    CLI::App* selfsim = app.add_subcommand("selfsimilar", "self-similar scenario diagnostics");
    CLI::App* noise = app.add_subcommand("noise-diag", "noise model diagnostics");
    for (CLI::App* cmd : {simulate, master, compare, girsanov, selfsim, noise})
        add_common(cmd, args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(args);
        if (master->parsed()) return cmd_master_eq(args);
        if (compare->parsed()) return cmd_compare(args);
        if (girsanov->parsed()) return cmd_girsanov(args);
        if (selfsim->parsed()) return cmd_selfsimilar(args);
        if (noise->parsed()) return cmd_noise_diag(args);
    } catch (const ConfigError& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const PreflightError& e) {
        emit_error("preflight", e.what());
        return 3;
    } catch (const BlowUpError& e) {
        emit_error("blow_up", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::domain_error& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::out_of_range& e) {
        emit_error("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error("runtime", e.what());
        return 3;
    }
    return 0;
}
