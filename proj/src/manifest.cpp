#include "svort/manifest.hpp"

#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "svort/io.hpp"

namespace svort {

namespace {

std::string utc_now() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

ManifestBuilder::ManifestBuilder(std::string command, std::string resolved_config_json)
    : command_(std::move(command)), config_json_(std::move(resolved_config_json)) {}

void ManifestBuilder::add_constant(const std::string& name, double value) {
    constants_.emplace_back(name, value);
}

void ManifestBuilder::add_count(const std::string& name, long long value) {
    counts_.emplace_back(name, value);
}

void ManifestBuilder::add_note(const std::string& name, const std::string& value) {
    notes_.emplace_back(name, value);
}

void ManifestBuilder::add_artifact(const std::string& directory, const std::string& filename) {
    const std::string path = directory + "/" + filename;
    Artifact art;
    art.name = filename;
    art.checksum = fnv1a_file(path);
    art.bytes = std::filesystem::file_size(path);
    artifacts_.push_back(std::move(art));
}

void ManifestBuilder::write(const std::string& directory) const {
    nlohmann::ordered_json doc;
    doc["tool_version"] = kToolVersion;
    doc["command"] = command_;
    doc["wall_clock"] = utc_now();
    doc["config"] = nlohmann::ordered_json::parse(config_json_);

    nlohmann::ordered_json& consts = doc["constants"];
    consts = nlohmann::ordered_json::object();
    for (const auto& [name, value] : constants_) consts[name] = value;
    for (const auto& [name, value] : counts_) consts[name] = value;

    if (!notes_.empty()) {
        nlohmann::ordered_json& notes = doc["notes"];
        notes = nlohmann::ordered_json::object();
        for (const auto& [name, value] : notes_) notes[name] = value;
    }

    nlohmann::ordered_json& arts = doc["artifacts"];
    arts = nlohmann::ordered_json::object();
    for (const Artifact& art : artifacts_) {
        arts[art.name]["fnv1a_64"] = hex64(art.checksum);
        arts[art.name]["bytes"] = art.bytes;
    }

    const std::string path = directory + "/manifest.json";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << doc.dump(2) << "\n";
}

}  // namespace svort
