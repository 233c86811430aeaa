#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "voskit/core/errors.hpp"
#include "voskit/datakit/manifest.hpp"

namespace voskit::cli {

namespace fs = std::filesystem;

namespace {

std::set<std::string> read_include_list(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open include list: " + path.string());
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        const auto begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        const auto end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        if (line.empty() || line[0] == '#') continue;
        out.insert(line);
    }
    return out;
}

} // namespace

int run_build_dataset(const BuildDatasetOptions& options) {
    if (options.roots.empty()) {
        throw config_error("build-dataset: at least one --root NAME=PATH is required");
    }
    if (options.out_dir.empty()) {
        throw config_error("build-dataset: --out is required");
    }

    std::vector<datakit::DatasetRoot> roots;
    for (const std::string& spec : options.roots) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
            throw config_error("build-dataset: --root must look like NAME=PATH, got '" + spec +
                               "'");
        }
        datakit::DatasetRoot root{spec.substr(0, eq), fs::path(spec.substr(eq + 1))};
        if (!fs::exists(root.path)) {
            throw io_error("build-dataset: root does not exist: " + root.path.string());
        }
        roots.push_back(std::move(root));
    }

    datakit::IngestOptions ingest;
    ingest.jobs = options.jobs;
    std::vector<std::string> exclusions;
    ingest.exclusion_log = &exclusions;
    if (!options.include_file.empty()) {
        ingest.include = read_include_list(options.include_file);
    }

    const datakit::Manifest manifest =
        datakit::build_manifest(roots, options.target_long_side, ingest);
    for (const std::string& reason : exclusions) {
        std::cerr << "excluded " << reason << "\n";
    }

    fs::create_directories(options.out_dir);
    datakit::save_manifest(fs::path(options.out_dir) / "manifest.json", manifest);

    std::cout << "videos=" << manifest.totals.videos << " instances=" << manifest.totals.instances
              << " annotated_frames=" << manifest.totals.annotated_frames << "\n";
    return kExitOk;
}

} // namespace voskit::cli
