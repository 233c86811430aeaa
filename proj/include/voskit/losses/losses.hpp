#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "voskit/core/types.hpp"

namespace voskit::losses {

// Per-object probability map. Values live in [eps, 1-eps]; the clamp keeps
// logs finite in the cross-entropy path. eps = 0 is allowed for callers that
// need exact endpoints (Dice handles them; CE rejects them).
struct ProbMap {
    int width = 0;
    int height = 0;
    int32_t object_id = 0;
    double eps = 1e-7;
    std::vector<double> values; // row-major

    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }

    static ProbMap from_probabilities(int width, int height, std::vector<double> values,
                                      int32_t object_id = 0, double eps = 1e-7);
    static ProbMap from_logits(int width, int height, const std::vector<double>& logits,
                               int32_t object_id = 0, double eps = 1e-7);
};

// Predicted mask quality in [0, 1], one scalar per object.
struct QualityPrediction {
    double predicted_iou = 0.0;

    static QualityPrediction make(double predicted_iou); // throws std::domain_error
};

struct ValueGrad {
    double value = 0.0;
    std::vector<double> gradient;
};

// Mean over pixels of -[y*log(p) + (1-y)*log(1-p)].
// Gradient is taken with respect to the pre-sigmoid logits: (p - y)/N.
ValueGrad ce_loss(const ProbMap& pred, const BinaryMask& gt);

// 1 - (2*sum(p*y) + s)/(sum(p) + sum(y) + s). Gradient with respect to the
// probabilities themselves.
ValueGrad dice_loss(const ProbMap& pred, const BinaryMask& gt, double smoothing = 1.0);

// 1 - cosine(memory, query), in [0, 2]. Gradient with respect to the query
// feature.
ValueGrad sim_loss(const FeaturePair& fp);

// Squared error between a predicted quality score and the actual
// intersection-over-union of the two masks.
double maskiou_loss(const QualityPrediction& q, const BinaryMask& pred_mask,
                    const BinaryMask& gt);

// Per-(frame, object) loss terms collected across a clip. A component with
// zero weight may be left empty; an enabled component must have terms.
struct LossTerms {
    std::vector<double> ce;
    std::vector<double> dice;
    std::vector<double> sim;
    std::vector<double> mask_iou;
};

// Each component reduces to the unweighted mean of its terms; the total is
// the weighted sum of the component means.
LossBreakdown total_loss(const LossTerms& terms, const LossWeights& w);

// Elementwise max |analytic - central difference| at an interior point.
// `f` evaluates the loss at a perturbed copy of `point`.
double gradcheck(const std::function<double(const std::vector<double>&)>& f,
                 const std::vector<double>& point, const std::vector<double>& analytic,
                 double h);

// Convenience wrappers binding each loss to its differentiated argument.
double gradcheck_ce(const std::vector<double>& logits, int width, int height,
                    const BinaryMask& gt, double h, double eps = 1e-7);
double gradcheck_dice(const ProbMap& pred, const BinaryMask& gt, double smoothing, double h);
double gradcheck_sim(const FeaturePair& fp, double h);

} // namespace voskit::losses
