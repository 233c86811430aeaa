#pragma once

#include "voskit/core/types.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace voskit::metrics {

// Boundary-match tolerance as a fraction of the image diagonal. The dilation
// radius never drops below one pixel.
struct BoundaryParams {
    double tolerance_fraction = 0.008;
};

struct EvalOptions {
    BoundaryParams boundary;
    // The first annotated frame is the prompt in semi-supervised evaluation
    // and is excluded from scoring by default.
    bool exclude_first_annotated = true;
    bool exclude_last = false;
};

// Intersection over union. Both-empty pairs score 1.0 (perfect absence).
// Throws std::domain_error on dimension mismatch.
double jaccard(const BinaryMask& pred, const BinaryMask& gt);

// Foreground pixels with at least one background 4-neighbor; the image border
// counts as background.
BinaryMask extract_boundary(const BinaryMask& mask);

// Dilation radius in pixels for a frame of the given size.
int boundary_tolerance_px(int width, int height, const BoundaryParams& p);

// Boundary F-measure: precision/recall of boundary pixels within the dilation
// radius, combined harmonically. Both boundaries empty -> 1.0; exactly one
// empty -> 0.0.
double boundary_f(const BinaryMask& pred, const BinaryMask& gt, const BoundaryParams& p);

struct SequenceGroundTruth {
    std::string sequence_id;
    // (frame name, labels), temporally ordered; every entry is annotated.
    std::vector<std::pair<std::string, LabelRaster>> frames;
};

struct SequencePrediction {
    std::map<std::string, LabelRaster> frames; // keyed by frame name
};

// Scores one sequence. Object identity comes from the ground truth; frames
// with no prediction (or a mis-sized one) score J = F = 0 with a warning, so
// partial runs always evaluate to completion.
MetricReport evaluate_sequence(const SequenceGroundTruth& gt, const SequencePrediction& pred,
                               const EvalOptions& options = {});

// Unweighted mean over all per-sequence-per-object tracks of the inputs.
// Throws std::domain_error on an empty list.
MetricReport aggregate_reports(const std::vector<MetricReport>& reports);

} // namespace voskit::metrics
