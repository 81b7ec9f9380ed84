#pragma once

#include "mftk/tables.h"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace mftk::cli {

struct FileDigest {
    std::string path;
    std::string sha256;
};

// Sidecar record of one run. Tables carry the deterministic part of it
// (version, config, input digests, seeds) in their header comments; the
// manifest adds paths, output digests and wall-clock timestamps.
struct RunManifest {
    std::string tool_version;
    std::string command;
    io::ConfigEcho config;
    std::vector<FileDigest> inputs;
    std::vector<std::uint64_t> seeds;
    std::vector<FileDigest> outputs;
    std::vector<std::string> warnings;
    std::string started_utc;
    std::string finished_utc;
};

nlohmann::ordered_json to_json(const RunManifest& m);

// Digests every output listed, stamps finished_utc and writes the JSON.
void write_manifest(const std::filesystem::path& path, RunManifest m);

}  // namespace mftk::cli
