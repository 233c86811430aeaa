#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "voskit/augment/pipeline.hpp"
#include "voskit/core/errors.hpp"
#include "voskit/datakit/clip_sampler.hpp"
#include "voskit/datakit/manifest.hpp"
#include "voskit/datakit/palette.hpp"
#include "voskit/util/npy.hpp"
#include "voskit/util/parallel.hpp"
#include "voskit/util/rng.hpp"

namespace voskit::cli {

namespace fs = std::filesystem;

namespace {

std::string zero_pad(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot create file: " + path.string());
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw io_error("write failure: " + path.string());
}

} // namespace

int run_augment(const AugmentOptions& options) {
    if (options.manifest_path.empty()) throw config_error("augment: --manifest is required");
    if (options.out_dir.empty()) throw config_error("augment: --out is required");
    if (options.clip_len < 1) throw config_error("augment: --clip-len must be >= 1");
    if (options.max_objects < 1) throw config_error("augment: --max-objects must be >= 1");
    if (options.clips_per_sequence < 1) {
        throw config_error("augment: --clips-per-sequence must be >= 1");
    }

    const datakit::Manifest manifest = datakit::load_manifest(options.manifest_path);
    if (manifest.records.empty()) {
        throw config_error("augment: manifest has no records");
    }
    augment::AugmentConfig config;
    if (!options.config_path.empty()) {
        config = augment::load_augment_config(options.config_path);
    }
    config.validate();

    struct Task {
        const datakit::SequenceRecord* record;
        int clip_index;
    };
    std::vector<Task> tasks;
    for (const datakit::SequenceRecord& record : manifest.records) {
        for (int k = 0; k < options.clips_per_sequence; ++k) {
            tasks.push_back({&record, k});
        }
    }

    const fs::path out_root(options.out_dir);
    std::atomic<std::uint64_t> frames_written{0};

    util::parallel_for(tasks.size(), options.jobs, [&](std::size_t i) {
        const Task& task = tasks[i];
        const std::uint64_t clip_seed = util::derive_stream(
            options.seed, task.record->sequence_id, static_cast<std::uint64_t>(task.clip_index));

        const datakit::ClipSample sample =
            datakit::sample_clip(*task.record, options.clip_len, options.max_objects,
                                 util::derive_stream(clip_seed, "sample", 0));
        const augment::AugmentedClip augmented =
            augment::augment_pipeline(sample.clip, clip_seed, config);

        const fs::path clip_dir =
            out_root / task.record->sequence_id / ("clip_" + zero_pad(task.clip_index, 3));
        fs::create_directories(clip_dir);

        for (std::size_t f = 0; f < augmented.clip.frames.size(); ++f) {
            const ClipFrame& frame = augmented.clip.frames[f];
            const std::string stem = zero_pad(static_cast<int>(f), 2);
            util::write_npy_f32(clip_dir / ("frame_" + stem + ".npy"), frame.image.data.data(),
                                {static_cast<std::size_t>(frame.image.height),
                                 static_cast<std::size_t>(frame.image.width), 3});
            const std::vector<uint8_t> png = datakit::encode_palette_mask(frame.labels);
            std::ofstream mask_out(clip_dir / ("mask_" + stem + ".png"),
                                   std::ios::binary | std::ios::trunc);
            if (!mask_out) {
                throw io_error("cannot create file: " +
                               (clip_dir / ("mask_" + stem + ".png")).string());
            }
            mask_out.write(reinterpret_cast<const char*>(png.data()),
                           static_cast<std::streamsize>(png.size()));
            if (!mask_out) {
                throw io_error("write failure: " +
                               (clip_dir / ("mask_" + stem + ".png")).string());
            }
        }
        write_text(clip_dir / "provenance.json", augment::provenance_to_json(augmented.provenance));
        frames_written += augmented.clip.frames.size();
    });

    std::cout << "clips=" << tasks.size() << " frames=" << frames_written.load() << "\n";
    return kExitOk;
}

} // namespace voskit::cli
