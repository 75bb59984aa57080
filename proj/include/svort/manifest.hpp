#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace svort {

inline constexpr const char* kToolVersion = "svort 1.0.0";

// Collects everything needed to audit and reproduce a run: the resolved
// configuration, derived constants, and a checksum per emitted artifact.
// The config echo is embedded under "config", so the manifest itself is a
// valid --config input and reruns reproduce the artifacts byte for byte
// (the wall_clock stamp is the one non-reproducible field).
class ManifestBuilder {
  public:
    ManifestBuilder(std::string command, std::string resolved_config_json);

    void add_constant(const std::string& name, double value);
    void add_count(const std::string& name, long long value);
    void add_note(const std::string& name, const std::string& value);

    // Checksums directory/filename (must already be written).
    void add_artifact(const std::string& directory, const std::string& filename);

    void write(const std::string& directory) const;  // emits <directory>/manifest.json

  private:
    struct Artifact {
        std::string name;
        std::uint64_t checksum = 0;
        std::uint64_t bytes = 0;
    };

    std::string command_;
    std::string config_json_;
    std::vector<std::pair<std::string, double>> constants_;
    std::vector<std::pair<std::string, long long>> counts_;
    std::vector<std::pair<std::string, std::string>> notes_;
    std::vector<Artifact> artifacts_;
};

}  // namespace svort
