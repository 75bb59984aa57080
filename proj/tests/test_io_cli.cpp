// Binary snapshots, CSV/checksum helpers, manifest round trip, and
// subprocess checks of the command-line tool (exit codes, artifact
// reproducibility from a manifest). CLI cases need SVORT_BIN in the
// environment; ctest sets it, standalone runs skip them with a note.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "svort/config.hpp"
#include "svort/io.hpp"
#include "svort/manifest.hpp"

using namespace svort;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& tag) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() /
                   ("svort_io_" + std::to_string(::getpid()) + "_" + tag + "_" +
                    std::to_string(counter++));
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

struct CliResult {
    int code = -1;
    std::string out, err;
};

// Runs the tool under SVORT_BIN; empty path means the binary is not available.
std::string cli_binary() {
    const char* bin = std::getenv("SVORT_BIN");
    return bin ? std::string(bin) : std::string();
}

CliResult run_cli(const std::string& args, const fs::path& scratch) {
    const fs::path outp = scratch / "stdout.txt";
    const fs::path errp = scratch / "stderr.txt";
    const std::string cmd =
        cli_binary() + " " + args + " >" + outp.string() + " 2>" + errp.string();
    const int rc = std::system(cmd.c_str());
    CliResult res;
    res.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(outp);
    res.err = slurp(errp);
    return res;
}

}  // namespace

// ============================================================
// Checksums and formatting
// ============================================================

TEST_CASE("fnv1a matches the published 64-bit vectors") {
    CHECK(fnv1a("", 0) == 0xcbf29ce484222325ULL);
    CHECK(fnv1a("a", 1) == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a("foobar", 6) == 0x85944171f73967e8ULL);

    fs::path dir = fresh_dir("fnv");
    spit(dir / "probe.txt", "foobar");
    CHECK(fnv1a_file((dir / "probe.txt").string()) == 0x85944171f73967e8ULL);
    CHECK_THROWS_AS(fnv1a_file((dir / "absent.txt").string()), std::runtime_error);
}

TEST_CASE("format_double is full round-trip precision") {
    CHECK(format_double(2.0) == "2");
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
    for (double v : {3.141592653589793, 1e300, -7.25e-12, 0.0}) {
        CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
    }
}

TEST_CASE("csv writer emits header and guarded rows") {
    fs::path dir = fresh_dir("csv");
    const fs::path path = dir / "table.csv";
    {
        CsvWriter csv(path.string(), {"t", "value"});
        csv.row({0.5, 1.0 / 3.0});
        CHECK_THROWS_AS(csv.row({1.0}), std::invalid_argument);
        CHECK_THROWS_AS(csv.row({1.0, 2.0, 3.0}), std::invalid_argument);
    }
    CHECK(slurp(path) == "t,value\n0.5,0.33333333333333331\n");
    CHECK_THROWS_AS(CsvWriter((dir / "x.csv").string(), {}), std::invalid_argument);
}

// ============================================================
// Snapshots
// ============================================================

TEST_CASE("snapshot round trip preserves every bit") {
    fs::path dir = fresh_dir("snap");
    const fs::path path = dir / "field.bin";

    std::vector<double> values(25);
    for (int i = 0; i < 25; ++i) values[i] = std::sin(7.0 * i) * 1e3 + 1e-9 * i;
    values[3] = -0.0;
    write_snapshot(path.string(), 5, 2.0 * M_PI, 0.375, values);

    CHECK(fs::file_size(path) == 32 + 25 * sizeof(double));
    RawSnapshot snap = read_snapshot(path.string());
    CHECK(snap.n == 5);
    CHECK(snap.length == 2.0 * M_PI);
    CHECK(snap.time == 0.375);
    REQUIRE(snap.values.size() == 25);
    for (int i = 0; i < 25; ++i) CHECK(snap.values[i] == values[i]);

    CHECK_THROWS_AS(write_snapshot(path.string(), 6, 1.0, 0.0, values),
                    std::invalid_argument);
}

TEST_CASE("snapshot reader rejects damaged files") {
    fs::path dir = fresh_dir("snapbad");

    spit(dir / "garbage.bin", "definitely not a snapshot header....");
    CHECK_THROWS_AS(read_snapshot((dir / "garbage.bin").string()), std::runtime_error);
    CHECK_THROWS_AS(read_snapshot((dir / "missing.bin").string()), std::runtime_error);

    const fs::path good = dir / "good.bin";
    std::vector<double> values(16, 1.25);
    write_snapshot(good.string(), 4, 1.0, 0.0, values);

    // Truncated payload.
    fs::resize_file(good, 32 + 5 * sizeof(double));
    CHECK_THROWS_AS(read_snapshot(good.string()), std::runtime_error);

    // Unsupported version byte.
    write_snapshot(good.string(), 4, 1.0, 0.0, values);
    {
        std::fstream f(good, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(8);
        const std::uint32_t bad_version = 99;
        f.write(reinterpret_cast<const char*>(&bad_version), sizeof(bad_version));
    }
    CHECK_THROWS_AS(read_snapshot(good.string()), std::runtime_error);
}

// ============================================================
// Manifest
// ============================================================

TEST_CASE("manifest embeds a reloadable config and artifact checksums") {
    fs::path dir = fresh_dir("manifest");
    spit(dir / "artifact.csv", "a,b\n1,2\n");

    RunConfig cfg;
    cfg.ensemble.members = 3;
    ManifestBuilder builder("simulate", resolved_config_json(cfg));
    builder.add_constant("kappa", 1.25);
    builder.add_count("steps", 40);
    builder.add_note("tool", "unit-test");
    builder.add_artifact(dir.string(), "artifact.csv");
    builder.write(dir.string());

    json doc = json::parse(slurp(dir / "manifest.json"));
    CHECK(doc["command"] == "simulate");
    CHECK(doc["constants"]["kappa"] == 1.25);
    CHECK(doc["constants"]["steps"] == 40);
    CHECK(doc["notes"]["tool"] == "unit-test");
    CHECK(doc["artifacts"]["artifact.csv"]["bytes"] == 8);

    char expect[20];
    std::snprintf(expect, sizeof(expect), "0x%016llx",
                  static_cast<unsigned long long>(
                      fnv1a_file((dir / "artifact.csv").string())));
    CHECK(doc["artifacts"]["artifact.csv"]["fnv1a_64"] == expect);

    // The embedded echo is itself a valid --config document.
    RunConfig reloaded = parse_run_config(slurp(dir / "manifest.json"));
    CHECK(reloaded.ensemble.members == 3);
}

// ============================================================
// Command-line tool
// ============================================================

TEST_CASE("cli noise-diag writes pinned constants") {
    if (cli_binary().empty()) {
        MESSAGE("SVORT_BIN not set; skipping CLI checks");
        return;
    }
    fs::path dir = fresh_dir("cli_noise");
    spit(dir / "cfg.json", R"({"noise":{"family":"log_euler","gamma":1.0,"n":32}})");
    fs::path out = dir / "run";

    CliResult res = run_cli("noise-diag --config " + (dir / "cfg.json").string() +
                                " --out " + out.string(),
                            dir);
    CAPTURE(res.err);
    REQUIRE(res.code == 0);

    json noise = json::parse(slurp(out / "noise.json"));
    CHECK(noise["family"] == "log_euler");
    // Quarter-trace of the covariance at this resolution, frozen from
    // tools/oracles/spectra_oracle.py.
    CHECK(noise["kappa"].get<double>() ==
          doctest::Approx(1.2655243263392491).epsilon(1e-12));
    for (const char* key : {"k_10", "k_21", "k_53"}) {
        CHECK(std::abs(noise["kappa_identity_residuals"][key].get<double>()) < 1e-12);
    }

    CHECK(slurp(out / "structure.csv").substr(0, 8) == "r,exact\n");
    json man = json::parse(slurp(out / "manifest.json"));
    CHECK(man["config"]["noise"]["n"] == 32);
    CHECK(man["constants"]["kappa"].get<double>() ==
          doctest::Approx(1.2655243263392491).epsilon(1e-12));
}

TEST_CASE("cli rerun from manifest reproduces artifacts byte for byte") {
    if (cli_binary().empty()) {
        MESSAGE("SVORT_BIN not set; skipping CLI checks");
        return;
    }
    fs::path dir = fresh_dir("cli_rerun");
    json cfg = {
        {"noise", {{"family", "log_euler"}, {"n", 16}}},
        {"dynamics",
         {{"scheme", "linear"}, {"dt", 2e-3}, {"horizon", 0.02}}},
        {"data", {{"preset", "single_mode"}, {"amplitude", 0.5}, {"n1", 1}, {"n2", 0}}},
        {"ensemble", {{"members", 2}, {"master_seed", 7}}},
        {"outputs",
         {{"snapshot_times", {0.02}}, {"record_times", {0.01, 0.02}}}},
    };
    spit(dir / "cfg.json", cfg.dump());

    fs::path out1 = dir / "run1";
    fs::path out2 = dir / "run2";
    CliResult first = run_cli("simulate --config " + (dir / "cfg.json").string() +
                                  " --out " + out1.string(),
                              dir);
    CAPTURE(first.err);
    REQUIRE(first.code == 0);

    CliResult second = run_cli("simulate --config " + (out1 / "manifest.json").string() +
                                   " --out " + out2.string(),
                               dir);
    CAPTURE(second.err);
    REQUIRE(second.code == 0);

    for (const char* name : {"diagnostics.csv", "spectra.csv", "snapshot_000.bin"}) {
        CAPTURE(name);
        REQUIRE(fs::exists(out1 / name));
        CHECK(fnv1a_file((out1 / name).string()) == fnv1a_file((out2 / name).string()));
    }

    RawSnapshot snap = read_snapshot((out1 / "snapshot_000.bin").string());
    CHECK(snap.n == 16);
    CHECK(snap.time == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("cli maps failures to documented exit codes") {
    if (cli_binary().empty()) {
        MESSAGE("SVORT_BIN not set; skipping CLI checks");
        return;
    }
    fs::path dir = fresh_dir("cli_err");

    // Unknown key: configuration error, exit 2, JSON diagnostics on stderr.
    spit(dir / "bad.json", R"({"noise":{"familee":"log_euler"}})");
    CliResult res = run_cli("noise-diag --config " + (dir / "bad.json").string() +
                                " --out " + (dir / "o1").string(),
                            dir);
    CHECK(res.code == 2);
    CHECK(json::parse(res.err)["error"] == "config");

    // Missing file: exit 2.
    res = run_cli("noise-diag --config " + (dir / "absent.json").string() + " --out " +
                      (dir / "o2").string(),
                  dir);
    CHECK(res.code == 2);

    // Nonlinear run seeded far beyond stability: numerical failure, exit 3.
    json cfg = {
        {"noise", {{"family", "log_euler"}, {"n", 16}}},
        {"dynamics",
         {{"scheme", "log_euler"},
          {"dt", 0.5},
          {"horizon", 5.0},
          {"cfl_limit", 1e30}}},
        {"data", {{"preset", "single_mode"}, {"amplitude", 1e9}}},
    };
    spit(dir / "blow.json", cfg.dump());
    res = run_cli("simulate --config " + (dir / "blow.json").string() + " --out " +
                      (dir / "o3").string(),
                  dir);
    CHECK(res.code == 3);
    CHECK_FALSE(json::parse(res.err)["error"].get<std::string>().empty());

    // No subcommand: usage error.
    res = run_cli("", dir);
    CHECK(res.code == 2);
}

TEST_CASE("cli selfsimilar and girsanov smoke runs") {
    if (cli_binary().empty()) {
        MESSAGE("SVORT_BIN not set; skipping CLI checks");
        return;
    }
    fs::path dir = fresh_dir("cli_misc");

    {
        json cfg = {
            {"noise", {{"family", "log_euler"}, {"n", 256}}},
            {"selfsimilar",
             {{"alpha", 1.5}, {"beta", 0.5}, {"p", 3}, {"t", 1.0}, {"dt_fd", 1e-3}}},
        };
        spit(dir / "ss.json", cfg.dump());
        fs::path out = dir / "ss";
        CliResult res = run_cli("selfsimilar --config " + (dir / "ss.json").string() +
                                    " --out " + out.string(),
                                dir);
        CAPTURE(res.err);
        REQUIRE(res.code == 0);
        json doc = json::parse(slurp(out / "selfsimilar.json"));
        CHECK_FALSE(doc["predicates"]["full"].get<bool>());
        CHECK(doc["shells"]["omega"]["closed"] == "divergent");  // 1.5 >= 4/3
        CHECK(doc["shells"]["agree"].get<bool>());
        CHECK(doc["residuals"]["transport_rel"].get<double>() < 1e-6);

        std::istringstream lines(slurp(out / "integrands.csv"));
        int count = 0;
        for (std::string line; std::getline(lines, line);) ++count;
        CHECK(count == 58);  // header + 57 samples
    }
    {
        json cfg = {
            {"noise", {{"family", "log_euler"}, {"n", 16}, {"max_mode", 4}}},
            {"dynamics", {{"scheme", "linear"}, {"dt", 1e-3}, {"horizon", 0.01}}},
            {"data", {{"preset", "single_mode"}, {"amplitude", 0.5}}},
            {"ensemble", {{"members", 4}, {"master_seed", 11}}},
            {"girsanov", {{"target", "log_euler"}, {"obs_n1", 1}, {"obs_n2", 0}}},
        };
        spit(dir / "g.json", cfg.dump());
        fs::path out = dir / "g";
        CliResult res = run_cli("girsanov --config " + (dir / "g.json").string() +
                                    " --out " + out.string(),
                                dir);
        CAPTURE(res.err);
        REQUIRE(res.code == 0);
        json doc = json::parse(slurp(out / "girsanov.json"));
        CHECK(doc["estimates"].size() == 4);
        CHECK(doc["entropy_bound"]["value"].get<double>() > 0.0);

        std::istringstream lines(slurp(out / "weights.csv"));
        int count = 0;
        for (std::string line; std::getline(lines, line);) ++count;
        CHECK(count == 5);  // header + one row per member

        // Reweighting is defined for the reference dynamics only.
        json bad = cfg;
        bad["dynamics"]["scheme"] = "log_euler";
        spit(dir / "gbad.json", bad.dump());
        res = run_cli("girsanov --config " + (dir / "gbad.json").string() + " --out " +
                          (dir / "gbad").string(),
                      dir);
        CHECK(res.code == 2);
    }
    {
        json cfg = {
            {"noise", {{"family", "log_euler"}, {"n", 16}, {"max_mode", 2}}},
            {"dynamics", {{"dt", 1e-3}, {"horizon", 0.01}}},
            {"data", {{"amplitude", 1.0}}},
            {"master", {{"closure", "absorbing"}, {"bound", 2}, {"initial", "constant"}}},
        };
        spit(dir / "m.json", cfg.dump());
        fs::path out = dir / "m";
        CliResult res = run_cli("master-eq --config " + (dir / "m.json").string() +
                                    " --out " + out.string(),
                                dir);
        CAPTURE(res.err);
        REQUIRE(res.code == 0);
        RawSnapshot lattice = read_snapshot((out / "lattice_000.bin").string());
        CHECK(lattice.n == 5);  // modes |n_i| <= 2
        json man = json::parse(slurp(out / "manifest.json"));
        CHECK(man["constants"]["mass_final"].get<double>() <=
              man["constants"]["mass_initial"].get<double>() + 1e-12);
        CHECK(man["constants"]["min_entry_final"].get<double>() >= 0.0);
    }
}
