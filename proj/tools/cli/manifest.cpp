#include "cli/manifest.h"

#include "cli/digest.h"
#include "mftk/error.h"
#include "mftk/rng.h"

#include <fstream>

namespace mftk::cli {

nlohmann::ordered_json to_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool"] = "mftk";
    j["version"] = m.tool_version;
    j["command"] = m.command;
    j["config"] = io::to_json(m.config);
    auto files = [](const std::vector<FileDigest>& list) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& f : list) arr.push_back({{"path", f.path}, {"sha256", f.sha256}});
        return arr;
    };
    j["inputs"] = files(m.inputs);
    j["seeds"] = m.seeds;
    if (!m.seeds.empty()) j["rng"] = kRngAlgorithm;
    j["outputs"] = files(m.outputs);
    j["warnings"] = m.warnings;
    j["started_utc"] = m.started_utc;
    j["finished_utc"] = m.finished_utc;
    return j;
}

void write_manifest(const std::filesystem::path& path, RunManifest m) {
    for (auto& f : m.outputs) f.sha256 = sha256_file(f.path);
    m.finished_utc = utc_timestamp();
    std::ofstream out(path);
    if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
    out << to_json(m).dump(2) << '\n';
}

}  // namespace mftk::cli
