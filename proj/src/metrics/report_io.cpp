#include "voskit/metrics/report_io.hpp"

#include <fstream>

#include <json.hpp>

#include "voskit/core/errors.hpp"
#include "voskit/util/numeric.hpp"

namespace voskit::metrics {

using ordered_json = nlohmann::ordered_json;

std::string report_to_json(const MetricReport& report) {
    ordered_json doc;
    doc["aggregate"] = {{"j", report.aggregate.j},
                        {"f", report.aggregate.f},
                        {"jf", report.aggregate.jf}};
    doc["per_sequence"] = ordered_json::object();
    for (const auto& [sequence, score] : report.per_sequence) {
        doc["per_sequence"][sequence] = {{"j", score.j}, {"f", score.f}, {"jf", score.jf}};
    }
    doc["tracks"] = ordered_json::array();
    for (const TrackScore& t : report.tracks) {
        ordered_json track;
        track["sequence_id"] = t.sequence_id;
        track["object_id"] = t.object_id;
        track["j"] = t.j;
        track["f"] = t.f;
        track["jf"] = t.jf;
        track["frames"] = ordered_json::array();
        for (const FrameScore& fs : t.frames) {
            track["frames"].push_back({{"frame", fs.frame}, {"j", fs.j}, {"f", fs.f}});
        }
        doc["tracks"].push_back(std::move(track));
    }
    doc["frames_scored"] = report.frames_scored;
    doc["objects_scored"] = report.objects_scored;
    doc["warnings"] = report.warnings;
    return doc.dump(2) + "\n";
}

std::string report_to_csv(const MetricReport& report) {
    std::string out = "sequence,object,J,F,J&F\n";
    for (const TrackScore& t : report.tracks) {
        out += t.sequence_id;
        out += ',';
        out += std::to_string(t.object_id);
        out += ',';
        out += util::format_fixed4(t.j);
        out += ',';
        out += util::format_fixed4(t.f);
        out += ',';
        out += util::format_fixed4(t.jf);
        out += '\n';
    }
    return out;
}

void save_report(const std::filesystem::path& json_path, const std::filesystem::path& csv_path,
                 const MetricReport& report) {
    {
        std::ofstream out(json_path, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot create file: " + json_path.string());
        const std::string text = report_to_json(report);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw io_error("write failure: " + json_path.string());
    }
    {
        std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot create file: " + csv_path.string());
        const std::string text = report_to_csv(report);
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw io_error("write failure: " + csv_path.string());
    }
}

} // namespace voskit::metrics
