#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace voskit::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitBadInput = 2;

struct BuildDatasetOptions {
    std::vector<std::string> roots; // "NAME=PATH"
    int target_long_side = 1024;
    std::string out_dir;
    std::string include_file; // optional: one sequence_id per line
    int jobs = 1;
};
int run_build_dataset(const BuildDatasetOptions& options);

struct AugmentOptions {
    std::string manifest_path;
    std::string config_path; // optional; defaults apply when empty
    std::uint64_t seed = 0;
    std::string out_dir;
    int jobs = 1;
    int clip_len = 6;
    int max_objects = 10;
    int clips_per_sequence = 1;
};
int run_augment(const AugmentOptions& options);

struct PostprocessOptions {
    std::string logits_dir;
    std::string config_path; // optional; single default config when empty
    std::string out_dir;
    int jobs = 1;
};
int run_postprocess(const PostprocessOptions& options);

struct EvalCliOptions {
    std::string gt_dir;
    std::string pred_dir;
    std::string replay_path; // alternative input: per-track (J, F) rows
    std::string out_dir;
    double tolerance_fraction = 0.008;
    bool include_first = false;
    bool exclude_last = false;
    int jobs = 1;
};
int run_eval(const EvalCliOptions& options);

struct LosscheckOptions {
    std::uint64_t seed = 0;
    int instances = 100;
    std::string config_path; // optional loss block
    bool sabotage = false;   // negative control: corrupt one analytic gradient
};
int run_losscheck(const LosscheckOptions& options);

} // namespace voskit::cli
