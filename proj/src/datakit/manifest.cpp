#include "voskit/datakit/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>

#include <json.hpp>

#include "voskit/core/errors.hpp"
#include "voskit/datakit/image_io.hpp"
#include "voskit/datakit/palette.hpp"
#include "voskit/util/parallel.hpp"

namespace voskit::datakit {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string lower_ext(const fs::path& p) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return e;
}

std::vector<fs::path> sorted_files_with_ext(const fs::path& dir,
                                            const std::vector<std::string>& exts) {
    std::vector<fs::path> out;
    if (!fs::exists(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const std::string e = lower_ext(entry.path());
        if (std::find(exts.begin(), exts.end(), e) != exts.end()) {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return out;
}

struct SequenceTask {
    std::string dataset;
    std::string name;
    fs::path frames_dir;
    fs::path masks_dir;
};

struct SequenceOutcome {
    std::optional<SequenceRecord> record;
    std::string exclusion; // reason when record is absent
};

SequenceOutcome ingest_sequence(const SequenceTask& task) {
    SequenceOutcome outcome;
    const std::string sequence_id = task.dataset + "/" + task.name;

    const std::vector<fs::path> frames = sorted_files_with_ext(task.frames_dir, {".jpg", ".jpeg"});
    if (frames.empty()) {
        outcome.exclusion = sequence_id + ": no frames";
        return outcome;
    }
    const std::vector<fs::path> masks = sorted_files_with_ext(task.masks_dir, {".png"});
    if (masks.empty()) {
        outcome.exclusion = sequence_id + ": no annotations";
        return outcome;
    }

    std::set<std::string> frame_stems;
    for (const fs::path& f : frames) frame_stems.insert(f.stem().string());
    for (const fs::path& m : masks) {
        if (!frame_stems.count(m.stem().string())) {
            outcome.exclusion = sequence_id + ": annotation " + m.filename().string() +
                                " has no matching frame";
            return outcome;
        }
    }
    if (!std::any_of(masks.begin(), masks.end(), [&frames](const fs::path& m) {
            return m.stem() == frames.front().stem();
        })) {
        outcome.exclusion = sequence_id + ": first frame lacks an annotation";
        return outcome;
    }

    std::set<int32_t> ids;
    for (const fs::path& m : masks) {
        LabelRaster raster;
        try {
            raster = decode_palette_mask(read_binary_file(m));
        } catch (const format_error& e) {
            throw io_error("cannot ingest " + m.string() + ": " + e.what());
        }
        const std::set<int32_t> found = raster.object_ids();
        ids.insert(found.begin(), found.end());
    }
    if (ids.empty()) {
        outcome.exclusion = sequence_id + ": annotations contain no objects";
        return outcome;
    }

    SequenceRecord record;
    record.sequence_id = sequence_id;
    record.source_dataset = task.dataset;
    for (const fs::path& f : frames) record.frame_paths.push_back(f.generic_string());
    for (const fs::path& m : masks) record.mask_paths.push_back(m.generic_string());
    const auto [w, h] = probe_image_size(frames.front());
    record.native_width = w;
    record.native_height = h;
    record.object_ids = std::move(ids);
    outcome.record = std::move(record);
    return outcome;
}

} // namespace

Manifest build_manifest(const std::vector<DatasetRoot>& roots, int target_long_side,
                        const IngestOptions& options) {
    if (target_long_side < 1) {
        throw config_error("build_manifest: target_long_side must be >= 1");
    }

    std::vector<SequenceTask> tasks;
    for (const DatasetRoot& root : roots) {
        if (root.name.empty() || root.name.find('/') != std::string::npos) {
            throw config_error("build_manifest: dataset name must be nonempty and slash-free: '" +
                               root.name + "'");
        }
        const fs::path frames_root = root.path / "JPEGImages";
        if (!fs::exists(frames_root)) {
            throw io_error("build_manifest: missing directory " + frames_root.string());
        }
        std::vector<fs::path> seq_dirs;
        for (const auto& entry : fs::directory_iterator(frames_root)) {
            if (entry.is_directory()) seq_dirs.push_back(entry.path());
        }
        std::sort(seq_dirs.begin(), seq_dirs.end());
        for (const fs::path& dir : seq_dirs) {
            const std::string name = dir.filename().string();
            if (!options.include.empty() && !options.include.count(root.name + "/" + name)) {
                continue;
            }
            tasks.push_back({root.name, name, dir, root.path / "Annotations" / name});
        }
    }

    std::vector<SequenceOutcome> outcomes(tasks.size());
    util::parallel_for(tasks.size(), options.jobs,
                       [&](std::size_t i) { outcomes[i] = ingest_sequence(tasks[i]); });

    Manifest manifest;
    manifest.target_long_side = target_long_side;
    for (SequenceOutcome& outcome : outcomes) {
        if (outcome.record) {
            manifest.records.push_back(std::move(*outcome.record));
        } else if (options.exclusion_log) {
            options.exclusion_log->push_back(outcome.exclusion);
        }
    }
    std::sort(manifest.records.begin(), manifest.records.end(),
              [](const SequenceRecord& a, const SequenceRecord& b) {
                  return a.sequence_id < b.sequence_id;
              });
    for (const SequenceRecord& r : manifest.records) {
        manifest.totals.videos += 1;
        manifest.totals.instances += r.object_ids.size();
        manifest.totals.annotated_frames += r.mask_paths.size();
    }
    return manifest;
}

std::string manifest_to_json(const Manifest& manifest) {
    ordered_json doc;
    doc["schema_version"] = manifest.schema_version;
    doc["target_long_side"] = manifest.target_long_side;
    doc["records"] = ordered_json::array();
    for (const SequenceRecord& r : manifest.records) {
        ordered_json rec;
        rec["sequence_id"] = r.sequence_id;
        rec["source_dataset"] = r.source_dataset;
        rec["frames"] = r.frame_paths;
        rec["masks"] = r.mask_paths;
        rec["native_resolution"] = {r.native_width, r.native_height};
        rec["object_ids"] = std::vector<int32_t>(r.object_ids.begin(), r.object_ids.end());
        doc["records"].push_back(std::move(rec));
    }
    doc["totals"] = {{"videos", manifest.totals.videos},
                     {"instances", manifest.totals.instances},
                     {"annotated_frames", manifest.totals.annotated_frames}};
    return doc.dump(2) + "\n";
}

Manifest manifest_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("manifest: invalid JSON: ") + e.what());
    }
    try {
        Manifest manifest;
        manifest.schema_version = doc.at("schema_version").get<int>();
        if (manifest.schema_version != 1) {
            throw format_error("manifest: unsupported schema_version " +
                               std::to_string(manifest.schema_version));
        }
        manifest.target_long_side = doc.at("target_long_side").get<int>();
        for (const auto& rec : doc.at("records")) {
            SequenceRecord r;
            r.sequence_id = rec.at("sequence_id").get<std::string>();
            r.source_dataset = rec.at("source_dataset").get<std::string>();
            r.frame_paths = rec.at("frames").get<std::vector<std::string>>();
            r.mask_paths = rec.at("masks").get<std::vector<std::string>>();
            const auto res = rec.at("native_resolution");
            r.native_width = res.at(0).get<int>();
            r.native_height = res.at(1).get<int>();
            for (const auto& id : rec.at("object_ids")) {
                r.object_ids.insert(id.get<int32_t>());
            }
            manifest.records.push_back(std::move(r));
        }
        const auto totals = doc.at("totals");
        manifest.totals.videos = totals.at("videos").get<std::uint64_t>();
        manifest.totals.instances = totals.at("instances").get<std::uint64_t>();
        manifest.totals.annotated_frames = totals.at("annotated_frames").get<std::uint64_t>();
        return manifest;
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("manifest: missing or mistyped field: ") + e.what());
    }
}

void save_manifest(const std::filesystem::path& path, const Manifest& manifest) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot create file: " + path.string());
    const std::string text = manifest_to_json(manifest);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw io_error("write failure: " + path.string());
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return manifest_from_json(text);
}

} // namespace voskit::datakit
