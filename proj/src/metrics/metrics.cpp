#include "voskit/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace voskit::metrics {

namespace {

void require_same_dims(const BinaryMask& a, const BinaryMask& b, const char* who) {
    if (a.width != b.width || a.height != b.height) {
        throw std::domain_error(std::string(who) + ": mask dimensions differ");
    }
}

// Disk dilation of a boundary map by integer radius r.
BinaryMask dilate_disk(const BinaryMask& src, int r) {
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
            if (dx * dx + dy * dy <= r * r) offsets.emplace_back(dx, dy);
        }
    }
    BinaryMask out = make_mask(src.width, src.height);
    for (int y = 0; y < src.height; ++y) {
        for (int x = 0; x < src.width; ++x) {
            if (!src.at(x, y)) continue;
            for (const auto& [dx, dy] : offsets) {
                const int nx = x + dx;
                const int ny = y + dy;
                if (nx >= 0 && nx < src.width && ny >= 0 && ny < src.height) {
                    out.data[static_cast<std::size_t>(ny) * src.width + nx] = 1;
                }
            }
        }
    }
    return out;
}

std::size_t count_in(const BinaryMask& a, const BinaryMask& inside) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        n += (a.data[i] != 0 && inside.data[i] != 0);
    }
    return n;
}

} // namespace

double jaccard(const BinaryMask& pred, const BinaryMask& gt) {
    require_same_dims(pred, gt, "jaccard");
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t i = 0; i < pred.data.size(); ++i) {
        const bool p = pred.data[i] != 0;
        const bool g = gt.data[i] != 0;
        inter += (p && g);
        uni += (p || g);
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

BinaryMask extract_boundary(const BinaryMask& mask) {
    BinaryMask out = make_mask(mask.width, mask.height);
    auto background = [&mask](int x, int y) {
        if (x < 0 || x >= mask.width || y < 0 || y >= mask.height) return true;
        return mask.at(x, y) == 0;
    };
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (!mask.at(x, y)) continue;
            if (background(x - 1, y) || background(x + 1, y) ||
                background(x, y - 1) || background(x, y + 1)) {
                out.data[static_cast<std::size_t>(y) * mask.width + x] = 1;
            }
        }
    }
    return out;
}

int boundary_tolerance_px(int width, int height, const BoundaryParams& p) {
    if (!(p.tolerance_fraction > 0.0)) {
        throw std::domain_error("boundary tolerance_fraction must be positive");
    }
    const double diagonal = std::hypot(static_cast<double>(width), static_cast<double>(height));
    const long r = std::lround(p.tolerance_fraction * diagonal);
    return static_cast<int>(std::max(1L, r));
}

double boundary_f(const BinaryMask& pred, const BinaryMask& gt, const BoundaryParams& p) {
    require_same_dims(pred, gt, "boundary_f");
    const BinaryMask bp = extract_boundary(pred);
    const BinaryMask bg = extract_boundary(gt);
    const std::size_t np = bp.foreground_count();
    const std::size_t ng = bg.foreground_count();
    if (np == 0 && ng == 0) return 1.0;
    if (np == 0 || ng == 0) return 0.0;

    const int r = boundary_tolerance_px(pred.width, pred.height, p);
    const BinaryMask gt_zone = dilate_disk(bg, r);
    const BinaryMask pred_zone = dilate_disk(bp, r);

    const double precision = static_cast<double>(count_in(bp, gt_zone)) / static_cast<double>(np);
    const double recall = static_cast<double>(count_in(bg, pred_zone)) / static_cast<double>(ng);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

MetricReport evaluate_sequence(const SequenceGroundTruth& gt, const SequencePrediction& pred,
                               const EvalOptions& options) {
    if (gt.frames.empty()) {
        throw std::invalid_argument("evaluate_sequence: sequence has no annotated frames");
    }

    MetricReport report;
    std::size_t begin = options.exclude_first_annotated ? 1 : 0;
    std::size_t end = gt.frames.size();
    if (options.exclude_last && end > begin) --end;
    if (begin >= end) {
        report.warnings.push_back(gt.sequence_id + ": no frames left to score after exclusions");
        return report;
    }

    std::set<int32_t> ids;
    for (const auto& [name, raster] : gt.frames) {
        for (int32_t v : raster.labels) {
            if (v != 0) ids.insert(v);
        }
    }
    if (ids.empty()) {
        report.warnings.push_back(gt.sequence_id + ": ground truth contains no objects");
        return report;
    }

    // Frame-level availability, diagnosed once per frame rather than per object.
    std::vector<const LabelRaster*> frame_pred(gt.frames.size(), nullptr);
    for (std::size_t i = begin; i < end; ++i) {
        const auto& [name, graster] = gt.frames[i];
        const auto it = pred.frames.find(name);
        if (it == pred.frames.end()) {
            report.warnings.push_back(gt.sequence_id + "/" + name +
                                      ": missing prediction, scored as 0");
            continue;
        }
        if (it->second.width != graster.width || it->second.height != graster.height) {
            report.warnings.push_back(gt.sequence_id + "/" + name +
                                      ": prediction size mismatch, scored as 0");
            continue;
        }
        frame_pred[i] = &it->second;
    }

    for (int32_t id : ids) {
        TrackScore track;
        track.sequence_id = gt.sequence_id;
        track.object_id = id;
        double jsum = 0.0;
        double fsum = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            const auto& [name, graster] = gt.frames[i];
            double j = 0.0;
            double f = 0.0;
            if (frame_pred[i] != nullptr) {
                const BinaryMask gmask = mask_of(graster, id);
                const BinaryMask pmask = mask_of(*frame_pred[i], id);
                j = jaccard(pmask, gmask);
                f = boundary_f(pmask, gmask, options.boundary);
            }
            track.frames.push_back({name, j, f});
            jsum += j;
            fsum += f;
        }
        const double n = static_cast<double>(track.frames.size());
        track.j = jsum / n;
        track.f = fsum / n;
        track.jf = mean_jf(track.j, track.f);
        report.tracks.push_back(std::move(track));
    }

    double jsum = 0.0;
    double fsum = 0.0;
    for (const TrackScore& t : report.tracks) {
        jsum += t.j;
        fsum += t.f;
    }
    const double nt = static_cast<double>(report.tracks.size());
    TriScore seq;
    seq.j = jsum / nt;
    seq.f = fsum / nt;
    seq.jf = mean_jf(seq.j, seq.f);
    report.per_sequence[gt.sequence_id] = seq;
    report.aggregate = seq;
    report.frames_scored = end - begin;
    report.objects_scored = report.tracks.size();
    return report;
}

MetricReport aggregate_reports(const std::vector<MetricReport>& reports) {
    if (reports.empty()) {
        throw std::domain_error("aggregate_reports: empty report list");
    }

    MetricReport out;
    for (const MetricReport& r : reports) {
        out.tracks.insert(out.tracks.end(), r.tracks.begin(), r.tracks.end());
        out.warnings.insert(out.warnings.end(), r.warnings.begin(), r.warnings.end());
        out.frames_scored += r.frames_scored;
    }
    std::sort(out.tracks.begin(), out.tracks.end(), [](const TrackScore& a, const TrackScore& b) {
        if (a.sequence_id != b.sequence_id) return a.sequence_id < b.sequence_id;
        return a.object_id < b.object_id;
    });
    out.objects_scored = out.tracks.size();

    if (out.tracks.empty()) {
        out.warnings.push_back("aggregate: no tracks scored");
        return out;
    }

    // Per-sequence means over that sequence's tracks, in sorted order.
    std::map<std::string, std::pair<TriScore, std::size_t>> acc;
    for (const TrackScore& t : out.tracks) {
        auto& [sums, count] = acc[t.sequence_id];
        sums.j += t.j;
        sums.f += t.f;
        ++count;
    }
    for (const auto& [seq, entry] : acc) {
        const auto& [sums, count] = entry;
        TriScore s;
        s.j = sums.j / static_cast<double>(count);
        s.f = sums.f / static_cast<double>(count);
        s.jf = mean_jf(s.j, s.f);
        out.per_sequence[seq] = s;
    }

    double jsum = 0.0;
    double fsum = 0.0;
    for (const TrackScore& t : out.tracks) {
        jsum += t.j;
        fsum += t.f;
    }
    const double n = static_cast<double>(out.tracks.size());
    out.aggregate.j = jsum / n;
    out.aggregate.f = fsum / n;
    out.aggregate.jf = mean_jf(out.aggregate.j, out.aggregate.f);
    return out;
}

} // namespace voskit::metrics
