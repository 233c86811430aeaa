#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "commands.hpp"
#include "voskit/core/errors.hpp"
#include "voskit/datakit/palette.hpp"
#include "voskit/postproc/calibrate.hpp"
#include "voskit/postproc/logit_io.hpp"
#include "voskit/util/parallel.hpp"

namespace voskit::cli {

namespace fs = std::filesystem;

int run_postprocess(const PostprocessOptions& options) {
    if (options.logits_dir.empty()) throw config_error("postprocess: --logits is required");
    if (options.out_dir.empty()) throw config_error("postprocess: --out is required");
    if (!fs::exists(options.logits_dir)) {
        throw io_error("postprocess: logit directory does not exist: " + options.logits_dir);
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(options.logits_dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".mslg") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        throw config_error("postprocess: no .mslg files in " + options.logits_dir);
    }

    std::vector<ScaleConfig> configs;
    if (options.config_path.empty()) {
        configs.push_back(ScaleConfig{});
    } else {
        configs = postproc::load_scale_configs(options.config_path);
    }

    const fs::path out_root(options.out_dir);
    fs::create_directories(out_root);

    util::parallel_for(files.size(), options.jobs, [&](std::size_t i) {
        const LogitStack logits = postproc::read_logit_file(files[i]);
        std::vector<postproc::CalibratedStack> stacks;
        stacks.reserve(configs.size());
        for (const ScaleConfig& c : configs) {
            stacks.push_back(postproc::apply_scaling(logits, c));
        }
        const postproc::FinalLabeling labeling = postproc::fuse_configs(stacks);
        const std::vector<uint8_t> png = datakit::encode_palette_mask(labeling.labels);
        const fs::path out_path = out_root / (files[i].stem().string() + ".png");
        std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot create file: " + out_path.string());
        out.write(reinterpret_cast<const char*>(png.data()),
                  static_cast<std::streamsize>(png.size()));
        if (!out) throw io_error("write failure: " + out_path.string());
    });

    std::cout << "frames=" << files.size() << " configs=" << configs.size() << "\n";
    return kExitOk;
}

} // namespace voskit::cli
