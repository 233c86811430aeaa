#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "voskit/core/errors.hpp"

namespace cli = voskit::cli;

int main(int argc, char** argv) {
    CLI::App app{"video object segmentation data and evaluation toolkit"};
    app.require_subcommand(1);

    cli::BuildDatasetOptions build_options;
    CLI::App* build = app.add_subcommand(
        "build-dataset", "scan dataset roots into a unified manifest");
    build->add_option("--root", build_options.roots, "dataset root as NAME=PATH")
        ->required()
        ->take_all();
    build->add_option("--target-long-side", build_options.target_long_side,
                      "long side of the working resolution");
    build->add_option("--include", build_options.include_file,
                      "file listing sequence ids to keep, one per line");
    build->add_option("--jobs", build_options.jobs, "worker threads");
    build->add_option("--out", build_options.out_dir, "output directory")->required();

    cli::AugmentOptions augment_options;
    CLI::App* augment =
        app.add_subcommand("augment", "sample and augment training clips");
    augment->add_option("--manifest", augment_options.manifest_path, "manifest JSON path")
        ->required();
    augment->add_option("--config", augment_options.config_path, "augmentation config JSON");
    augment->add_option("--seed", augment_options.seed, "global seed");
    augment->add_option("--jobs", augment_options.jobs, "worker threads");
    augment->add_option("--out", augment_options.out_dir, "output directory")->required();
    augment->add_option("--clip-len", augment_options.clip_len, "frames per clip");
    augment->add_option("--max-objects", augment_options.max_objects,
                        "instance cap per clip");
    augment->add_option("--clips-per-sequence", augment_options.clips_per_sequence,
                        "clips sampled from each sequence");

    cli::PostprocessOptions post_options;
    CLI::App* post = app.add_subcommand(
        "postprocess", "turn logit files into final label masks");
    post->add_option("--logits", post_options.logits_dir, "directory of .mslg files")
        ->required();
    post->add_option("--config", post_options.config_path, "scale config JSON");
    post->add_option("--jobs", post_options.jobs, "worker threads");
    post->add_option("--out", post_options.out_dir, "output directory")->required();

    cli::EvalCliOptions eval_options;
    CLI::App* eval =
        app.add_subcommand("eval", "score predicted masks against ground truth");
    eval->add_option("--gt", eval_options.gt_dir, "ground-truth mask tree");
    eval->add_option("--pred", eval_options.pred_dir, "predicted mask tree");
    eval->add_option("--replay", eval_options.replay_path,
                     "recompute aggregates from recorded per-track scores");
    eval->add_option("--out", eval_options.out_dir, "output directory")->required();
    eval->add_option("--tolerance-fraction", eval_options.tolerance_fraction,
                     "boundary tolerance as a fraction of the image diagonal");
    eval->add_flag("--include-first", eval_options.include_first,
                   "score the first annotated frame too");
    eval->add_flag("--exclude-last", eval_options.exclude_last, "skip the last frame");
    eval->add_option("--jobs", eval_options.jobs, "worker threads");

    cli::LosscheckOptions loss_options;
    CLI::App* losscheck = app.add_subcommand(
        "losscheck", "compare analytic loss gradients against finite differences");
    losscheck->add_option("--seed", loss_options.seed, "global seed");
    losscheck->add_option("--instances", loss_options.instances,
                          "random instances per loss");
    losscheck->add_option("--config", loss_options.config_path, "loss config JSON");
    losscheck->add_flag("--sabotage", loss_options.sabotage, "perturb analytic gradients")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitBadInput;
    }

    try {
        if (build->parsed()) return cli::run_build_dataset(build_options);
        if (augment->parsed()) return cli::run_augment(augment_options);
        if (post->parsed()) return cli::run_postprocess(post_options);
        if (eval->parsed()) return cli::run_eval(eval_options);
        if (losscheck->parsed()) return cli::run_losscheck(loss_options);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitBadInput;
    }
    return cli::kExitBadInput;
}
