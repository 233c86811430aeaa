#include <cmath>
#include <cstdio>
#include <iostream>
#include <vector>

#include "commands.hpp"
#include "voskit/core/errors.hpp"
#include "voskit/core/types.hpp"
#include "voskit/losses/loss_config.hpp"
#include "voskit/losses/losses.hpp"
#include "voskit/util/rng.hpp"

namespace voskit::cli {

namespace {

constexpr int kGridSide = 8;
constexpr int kFeatureDim = 16;
constexpr double kPassBound = 1e-6;

BinaryMask random_mask(util::Rng& rng, int side) {
    BinaryMask mask = make_mask(side, side);
    for (auto& v : mask.data) v = rng.bernoulli(0.5) ? 1 : 0;
    return mask;
}

// Max deviation between analytic and central-difference gradients over one
// random instance; the sabotage offset is a negative control that must trip
// the pass bound.
double check_ce(util::Rng& rng, const losses::LossConfig& config, bool sabotage) {
    std::vector<double> logits(kGridSide * kGridSide);
    for (auto& v : logits) v = rng.uniform(-2.0, 2.0);
    const BinaryMask gt = random_mask(rng, kGridSide);

    auto eval = [&](const std::vector<double>& z) {
        const auto map = losses::ProbMap::from_logits(kGridSide, kGridSide, z, 1,
                                                      config.clamp_eps);
        return losses::ce_loss(map, gt).value;
    };
    const auto map =
        losses::ProbMap::from_logits(kGridSide, kGridSide, logits, 1, config.clamp_eps);
    std::vector<double> analytic = losses::ce_loss(map, gt).gradient;
    if (sabotage) analytic[0] += 1e-3;
    return losses::gradcheck(eval, logits, analytic, 1e-5);
}

double check_dice(util::Rng& rng, const losses::LossConfig& config, bool sabotage) {
    std::vector<double> probs(kGridSide * kGridSide);
    for (auto& v : probs) v = rng.uniform(0.05, 0.95);
    const BinaryMask gt = random_mask(rng, kGridSide);

    auto eval = [&](const std::vector<double>& p) {
        const auto map = losses::ProbMap::from_probabilities(kGridSide, kGridSide, p, 1, 0.0);
        return losses::dice_loss(map, gt, config.smoothing).value;
    };
    const auto map = losses::ProbMap::from_probabilities(kGridSide, kGridSide, probs, 1, 0.0);
    std::vector<double> analytic = losses::dice_loss(map, gt, config.smoothing).gradient;
    if (sabotage) analytic[0] += 1e-3;
    return losses::gradcheck(eval, probs, analytic, 1e-5);
}

double check_sim(util::Rng& rng, bool sabotage) {
    auto draw_vector = [&]() {
        std::vector<double> v(kFeatureDim);
        while (true) {
            double norm_sq = 0.0;
            for (auto& x : v) {
                x = rng.uniform(-1.0, 1.0);
                norm_sq += x * x;
            }
            if (std::sqrt(norm_sq) >= 0.1) return v;
        }
    };
    const std::vector<double> memory = draw_vector();
    const std::vector<double> query = draw_vector();

    auto eval = [&](const std::vector<double>& q) {
        return losses::sim_loss(FeaturePair{memory, q}).value;
    };
    std::vector<double> analytic = losses::sim_loss(FeaturePair{memory, query}).gradient;
    if (sabotage) analytic[0] += 1e-3;
    return losses::gradcheck(eval, query, analytic, 1e-6);
}

} // namespace

int run_losscheck(const LosscheckOptions& options) {
    if (options.instances < 1) throw config_error("losscheck: --instances must be positive");
    losses::LossConfig config;
    if (!options.config_path.empty()) config = losses::load_loss_config(options.config_path);

    util::Rng ce_rng(util::derive_stream(options.seed, "ce", 0));
    util::Rng dice_rng(util::derive_stream(options.seed, "dice", 0));
    util::Rng sim_rng(util::derive_stream(options.seed, "sim", 0));

    double worst_ce = 0.0;
    double worst_dice = 0.0;
    double worst_sim = 0.0;
    for (int i = 0; i < options.instances; ++i) {
        worst_ce = std::max(worst_ce, check_ce(ce_rng, config, options.sabotage));
        worst_dice = std::max(worst_dice, check_dice(dice_rng, config, options.sabotage));
        worst_sim = std::max(worst_sim, check_sim(sim_rng, options.sabotage));
    }

    const bool pass =
        worst_ce < kPassBound && worst_dice < kPassBound && worst_sim < kPassBound;
    std::printf("ce=%.3e dice=%.3e sim=%.3e instances=%d result=%s\n", worst_ce,
                worst_dice, worst_sim, options.instances, pass ? "pass" : "fail");
    return pass ? kExitOk : kExitCheckFailed;
}

} // namespace voskit::cli
