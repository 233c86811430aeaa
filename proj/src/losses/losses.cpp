#include "voskit/losses/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "voskit/metrics/metrics.hpp"
#include "voskit/util/numeric.hpp"

namespace voskit::losses {

namespace {

void require_grid(int width, int height, std::size_t n, const char* who) {
    if (width <= 0 || height <= 0) {
        throw std::domain_error(std::string(who) + ": non-positive dimensions");
    }
    if (n != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw std::domain_error(std::string(who) + ": value count does not match dimensions");
    }
}

void require_same_dims(const ProbMap& p, const BinaryMask& m, const char* who) {
    if (p.width != m.width || p.height != m.height) {
        throw std::domain_error(std::string(who) + ": dimensions differ");
    }
}

double clamp_unit(double v, double eps) {
    return std::min(std::max(v, eps), 1.0 - eps);
}

} // namespace

ProbMap ProbMap::from_probabilities(int width, int height, std::vector<double> values,
                                    int32_t object_id, double eps) {
    require_grid(width, height, values.size(), "ProbMap");
    if (!(eps >= 0.0) || !(eps < 0.5)) {
        throw std::domain_error("ProbMap: eps must lie in [0, 0.5)");
    }
    for (double& v : values) {
        if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
            throw std::domain_error("ProbMap: probability outside [0, 1]");
        }
        v = clamp_unit(v, eps);
    }
    ProbMap out;
    out.width = width;
    out.height = height;
    out.object_id = object_id;
    out.eps = eps;
    out.values = std::move(values);
    return out;
}

ProbMap ProbMap::from_logits(int width, int height, const std::vector<double>& logits,
                             int32_t object_id, double eps) {
    require_grid(width, height, logits.size(), "ProbMap");
    std::vector<double> values(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        if (!std::isfinite(logits[i])) {
            throw std::domain_error("ProbMap: non-finite logit");
        }
        values[i] = util::stable_sigmoid(logits[i]);
    }
    return from_probabilities(width, height, std::move(values), object_id, eps);
}

QualityPrediction QualityPrediction::make(double predicted_iou) {
    if (!std::isfinite(predicted_iou) || predicted_iou < 0.0 || predicted_iou > 1.0) {
        throw std::domain_error("QualityPrediction: score outside [0, 1]");
    }
    return QualityPrediction{predicted_iou};
}

ValueGrad ce_loss(const ProbMap& pred, const BinaryMask& gt) {
    require_same_dims(pred, gt, "ce_loss");
    const std::size_t n = pred.values.size();
    ValueGrad out;
    out.gradient.resize(n);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pred.values[i];
        if (p <= 0.0 || p >= 1.0) {
            throw std::domain_error("ce_loss: probability at 0 or 1 has unbounded loss");
        }
        const double y = gt.data[i] ? 1.0 : 0.0;
        sum += y ? -std::log(p) : -std::log1p(-p);
        out.gradient[i] = (p - y) / static_cast<double>(n);
    }
    out.value = sum / static_cast<double>(n);
    return out;
}

ValueGrad dice_loss(const ProbMap& pred, const BinaryMask& gt, double smoothing) {
    require_same_dims(pred, gt, "dice_loss");
    if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
        throw std::domain_error("dice_loss: smoothing must be finite and non-negative");
    }
    const std::size_t n = pred.values.size();
    double sum_py = 0.0;
    double sum_p = 0.0;
    double sum_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = pred.values[i];
        const double y = gt.data[i] ? 1.0 : 0.0;
        sum_py += p * y;
        sum_p += p;
        sum_y += y;
    }
    const double numer = 2.0 * sum_py + smoothing;
    const double denom = sum_p + sum_y + smoothing;
    if (denom == 0.0) {
        throw std::domain_error("dice_loss: empty prediction and target with zero smoothing");
    }
    ValueGrad out;
    out.value = 1.0 - numer / denom;
    out.gradient.resize(n);
    const double denom_sq = denom * denom;
    for (std::size_t i = 0; i < n; ++i) {
        const double y = gt.data[i] ? 1.0 : 0.0;
        out.gradient[i] = -(2.0 * y * denom - numer) / denom_sq;
    }
    return out;
}

ValueGrad sim_loss(const FeaturePair& fp) {
    const auto& m = fp.memory_feature;
    const auto& q = fp.query_feature;
    if (m.empty() || m.size() != q.size()) {
        throw std::domain_error("sim_loss: features must be nonempty and of equal length");
    }
    double dot = 0.0;
    double m2 = 0.0;
    double q2 = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!std::isfinite(m[i]) || !std::isfinite(q[i])) {
            throw std::domain_error("sim_loss: non-finite feature value");
        }
        dot += m[i] * q[i];
        m2 += m[i] * m[i];
        q2 += q[i] * q[i];
    }
    if (m2 == 0.0 || q2 == 0.0) {
        throw std::domain_error("sim_loss: zero feature vector has undefined cosine");
    }
    const double mn = std::sqrt(m2);
    const double qn = std::sqrt(q2);
    const double cosine = std::clamp(dot / (mn * qn), -1.0, 1.0);

    ValueGrad out;
    out.value = 1.0 - cosine;
    out.gradient.resize(q.size());
    const double inv_mq = 1.0 / (mn * qn);
    const double dot_over_q3 = dot / (mn * qn * qn * qn);
    for (std::size_t i = 0; i < q.size(); ++i) {
        out.gradient[i] = -m[i] * inv_mq + q[i] * dot_over_q3;
    }
    return out;
}

double maskiou_loss(const QualityPrediction& q, const BinaryMask& pred_mask,
                    const BinaryMask& gt) {
    if (!std::isfinite(q.predicted_iou) || q.predicted_iou < 0.0 || q.predicted_iou > 1.0) {
        throw std::domain_error("maskiou_loss: quality score outside [0, 1]");
    }
    const double diff = q.predicted_iou - metrics::jaccard(pred_mask, gt);
    return diff * diff;
}

LossBreakdown total_loss(const LossTerms& terms, const LossWeights& w) {
    w.validate();
    auto component = [](const std::vector<double>& t, double weight, const char* name) {
        if (t.empty()) {
            if (weight > 0.0) {
                throw std::domain_error(std::string("total_loss: no terms for enabled component ") +
                                        name);
            }
            return 0.0;
        }
        double sum = 0.0;
        for (double v : t) {
            if (!std::isfinite(v)) {
                throw std::domain_error(std::string("total_loss: non-finite term in ") + name);
            }
            sum += v;
        }
        return sum / static_cast<double>(t.size());
    };
    const double ce = component(terms.ce, w.ce, "ce");
    const double dice = component(terms.dice, w.dice, "dice");
    const double sim = component(terms.sim, w.sim, "sim");
    const double mask_iou = component(terms.mask_iou, w.mask_iou, "mask_iou");
    return LossBreakdown::from_components(ce, dice, sim, mask_iou, w);
}

double gradcheck(const std::function<double(const std::vector<double>&)>& f,
                 const std::vector<double>& point, const std::vector<double>& analytic,
                 double h) {
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw std::invalid_argument("gradcheck: step must be positive and finite");
    }
    if (point.size() != analytic.size()) {
        throw std::invalid_argument("gradcheck: point and gradient sizes differ");
    }
    double worst = 0.0;
    std::vector<double> x = point;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = x[i];
        x[i] = saved + h;
        const double fp = f(x);
        x[i] = saved - h;
        const double fm = f(x);
        x[i] = saved;
        const double numeric = (fp - fm) / (2.0 * h);
        worst = std::max(worst, std::abs(analytic[i] - numeric));
    }
    return worst;
}

double gradcheck_ce(const std::vector<double>& logits, int width, int height,
                    const BinaryMask& gt, double h, double eps) {
    const ProbMap base = ProbMap::from_logits(width, height, logits, 0, eps);
    const ValueGrad vg = ce_loss(base, gt);
    auto f = [&](const std::vector<double>& z) {
        return ce_loss(ProbMap::from_logits(width, height, z, 0, eps), gt).value;
    };
    return gradcheck(f, logits, vg.gradient, h);
}

double gradcheck_dice(const ProbMap& pred, const BinaryMask& gt, double smoothing, double h) {
    const ValueGrad vg = dice_loss(pred, gt, smoothing);
    auto f = [&](const std::vector<double>& p) {
        ProbMap map = pred;
        map.values = p;
        return dice_loss(map, gt, smoothing).value;
    };
    return gradcheck(f, pred.values, vg.gradient, h);
}

double gradcheck_sim(const FeaturePair& fp, double h) {
    const ValueGrad vg = sim_loss(fp);
    auto f = [&](const std::vector<double>& q) {
        return sim_loss(FeaturePair{fp.memory_feature, q}).value;
    };
    return gradcheck(f, fp.query_feature, vg.gradient, h);
}

} // namespace voskit::losses
