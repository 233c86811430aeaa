#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "commands.hpp"
#include "voskit/core/errors.hpp"
#include "voskit/datakit/image_io.hpp"
#include "voskit/datakit/palette.hpp"
#include "voskit/metrics/metrics.hpp"
#include "voskit/metrics/report_io.hpp"
#include "voskit/util/numeric.hpp"
#include "voskit/util/parallel.hpp"

namespace voskit::cli {

namespace fs = std::filesystem;

namespace {

std::vector<fs::path> sorted_subdirs(const fs::path& root) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) out.push_back(entry.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<fs::path> sorted_pngs(const fs::path& dir) {
    std::vector<fs::path> out;
    if (!fs::exists(dir)) return out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.is_regular_file() && entry.path().extension() == ".png") {
            out.push_back(entry.path());
        }
    }
    std::sort(out.begin(), out.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    return out;
}

MetricReport replay_report(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    const std::string text((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("replay file: invalid JSON: ") + e.what());
    }
    const nlohmann::json* rows = nullptr;
    if (doc.is_array()) {
        rows = &doc;
    } else if (doc.is_object() && doc.contains("tracks")) {
        rows = &doc.at("tracks");
    } else {
        throw format_error("replay file: expected an array or an object with 'tracks'");
    }

    MetricReport seed_report;
    try {
        for (const auto& row : *rows) {
            TrackScore track;
            track.sequence_id = row.at("sequence").get<std::string>();
            track.object_id = row.at("object").get<int32_t>();
            track.j = row.at("j").get<double>();
            track.f = row.at("f").get<double>();
            track.jf = mean_jf(track.j, track.f);
            seed_report.tracks.push_back(std::move(track));
        }
    } catch (const nlohmann::json::exception& e) {
        throw format_error(std::string("replay file: missing or mistyped field: ") + e.what());
    }
    if (seed_report.tracks.empty()) {
        throw format_error("replay file: no tracks");
    }
    return metrics::aggregate_reports({seed_report});
}

} // namespace

int run_eval(const EvalCliOptions& options) {
    if (options.out_dir.empty()) throw config_error("eval: --out is required");

    MetricReport report;
    if (!options.replay_path.empty()) {
        report = replay_report(options.replay_path);
    } else {
        if (options.gt_dir.empty() || options.pred_dir.empty()) {
            throw config_error("eval: --gt and --pred are required (or use --replay)");
        }
        if (!fs::exists(options.gt_dir)) {
            throw io_error("eval: ground-truth directory does not exist: " + options.gt_dir);
        }
        if (!fs::exists(options.pred_dir)) {
            throw io_error("eval: prediction directory does not exist: " + options.pred_dir);
        }

        const std::vector<fs::path> gt_sequences = sorted_subdirs(options.gt_dir);
        if (gt_sequences.empty()) {
            throw config_error("eval: no sequence directories under " + options.gt_dir);
        }
        bool any_common = false;
        for (const fs::path& seq : gt_sequences) {
            if (fs::exists(fs::path(options.pred_dir) / seq.filename())) {
                any_common = true;
                break;
            }
        }
        if (!any_common) {
            throw config_error("eval: prediction and ground-truth trees share no sequences");
        }

        metrics::EvalOptions eval_options;
        eval_options.boundary.tolerance_fraction = options.tolerance_fraction;
        eval_options.exclude_first_annotated = !options.include_first;
        eval_options.exclude_last = options.exclude_last;

        std::vector<MetricReport> reports(gt_sequences.size());
        util::parallel_for(gt_sequences.size(), options.jobs, [&](std::size_t i) {
            const fs::path& seq_dir = gt_sequences[i];
            metrics::SequenceGroundTruth gt;
            gt.sequence_id = seq_dir.filename().string();
            for (const fs::path& png : sorted_pngs(seq_dir)) {
                gt.frames.emplace_back(
                    png.stem().string(),
                    datakit::decode_palette_mask(datakit::read_binary_file(png)));
            }
            metrics::SequencePrediction pred;
            for (const fs::path& png :
                 sorted_pngs(fs::path(options.pred_dir) / seq_dir.filename())) {
                pred.frames.emplace(
                    png.stem().string(),
                    datakit::decode_palette_mask(datakit::read_binary_file(png)));
            }
            reports[i] = metrics::evaluate_sequence(gt, pred, eval_options);
        });
        report = metrics::aggregate_reports(reports);
    }

    fs::create_directories(options.out_dir);
    metrics::save_report(fs::path(options.out_dir) / "report.json",
                         fs::path(options.out_dir) / "report.csv", report);
    for (const std::string& warning : report.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }
    std::cout << "J=" << util::format_fixed4(report.aggregate.j)
              << " F=" << util::format_fixed4(report.aggregate.f)
              << " J&F=" << util::format_fixed4(report.aggregate.jf) << "\n";
    return kExitOk;
}

} // namespace voskit::cli
