#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "voskit/core/errors.hpp"
#include "voskit/losses/loss_config.hpp"
#include "voskit/losses/losses.hpp"
#include "voskit/util/rng.hpp"

using namespace voskit;

namespace {

BinaryMask mask_of_bits(int w, int h, const std::vector<int>& bits) {
    BinaryMask mask = make_mask(w, h);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        mask.data[i] = static_cast<std::uint8_t>(bits[i]);
    }
    return mask;
}

BinaryMask random_mask(util::Rng& rng, int w, int h) {
    BinaryMask mask = make_mask(w, h);
    for (auto& v : mask.data) v = rng.bernoulli(0.5) ? 1 : 0;
    return mask;
}

} // namespace

TEST_SUITE("losses") {

TEST_CASE("prob map construction and clamping") {
    const auto map = losses::ProbMap::from_probabilities(2, 1, {0.0, 1.0}, 4);
    CHECK(map.values[0] == 1e-7);
    CHECK(map.values[1] == 1.0 - 1e-7);
    CHECK(map.object_id == 4);

    CHECK_THROWS_AS(losses::ProbMap::from_probabilities(2, 1, {-0.1, 0.5}), std::domain_error);
    CHECK_THROWS_AS(losses::ProbMap::from_probabilities(2, 1, {0.5}), std::domain_error);
    CHECK_THROWS_AS(losses::ProbMap::from_probabilities(2, 1, {0.5, 0.5}, 0, 0.6),
                    std::domain_error);

    const auto from_z = losses::ProbMap::from_logits(1, 1, {0.0});
    CHECK(from_z.values[0] == 0.5);
}

TEST_CASE("cross-entropy value and gradient") {
    // Perfect prediction: only the clamp keeps the loss nonzero.
    const BinaryMask gt = mask_of_bits(2, 2, {1, 0, 1, 1});
    std::vector<double> perfect;
    for (auto v : gt.data) perfect.push_back(v ? 1.0 : 0.0);
    const auto perfect_map = losses::ProbMap::from_probabilities(2, 2, perfect);
    CHECK(losses::ce_loss(perfect_map, gt).value <= 1.2e-7);
    CHECK(losses::ce_loss(perfect_map, gt).value >= 0.0);

    // Coin-flip prediction costs ln 2 regardless of the target.
    const auto half = losses::ProbMap::from_probabilities(2, 2, {0.5, 0.5, 0.5, 0.5});
    CHECK(losses::ce_loss(half, gt).value ==
          doctest::Approx(0.6931471805599453).epsilon(1e-15));

    // Gradient with respect to logits is (p - y)/N.
    const auto grad = losses::ce_loss(half, gt).gradient;
    REQUIRE(grad.size() == 4);
    CHECK(grad[0] == doctest::Approx((0.5 - 1.0) / 4.0).epsilon(1e-15));
    CHECK(grad[1] == doctest::Approx((0.5 - 0.0) / 4.0).epsilon(1e-15));

    const BinaryMask small = make_mask(1, 1);
    CHECK_THROWS_AS(losses::ce_loss(half, small), std::domain_error);
}

TEST_CASE("cross-entropy rejects exact endpoints when unclamped") {
    const BinaryMask gt = mask_of_bits(1, 1, {0});
    const auto endpoint = losses::ProbMap::from_probabilities(1, 1, {1.0}, 0, 0.0);
    CHECK_THROWS_AS(losses::ce_loss(endpoint, gt), std::domain_error);
}

TEST_CASE("cross-entropy gradient passes finite differences") {
    util::Rng rng(31);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> logits(64);
        for (auto& z : logits) z = rng.uniform(-2.0, 2.0);
        const BinaryMask gt = random_mask(rng, 8, 8);
        worst = std::max(worst, losses::gradcheck_ce(logits, 8, 8, gt, 1e-5));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("dice value on reference cases") {
    // Hard equality: numerator and denominator collapse.
    const BinaryMask gt = mask_of_bits(2, 2, {1, 1, 0, 0});
    std::vector<double> hard;
    for (auto v : gt.data) hard.push_back(v ? 1.0 : 0.0);
    const auto exact = losses::ProbMap::from_probabilities(2, 2, hard, 0, 0.0);
    CHECK(losses::dice_loss(exact, gt).value == 0.0);

    // Two pixels, p = (0.5, 0.5), y = (1, 0), no smoothing: loss 0.5.
    const auto half = losses::ProbMap::from_probabilities(2, 1, {0.5, 0.5}, 0, 0.0);
    const BinaryMask y10 = mask_of_bits(2, 1, {1, 0});
    CHECK(losses::dice_loss(half, y10, 0.0).value == 0.5);

    // Disjoint and large: loss approaches 1 within s/(sum p + sum y).
    const int side = 16;
    std::vector<double> left(side * side, 0.0);
    BinaryMask right = make_mask(side, side);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            if (x < side / 2) left[static_cast<std::size_t>(y) * side + x] = 1.0;
            else right.data[static_cast<std::size_t>(y) * side + x] = 1;
        }
    }
    const auto disjoint = losses::ProbMap::from_probabilities(side, side, left, 0, 0.0);
    const double value = losses::dice_loss(disjoint, right, 1.0).value;
    CHECK(1.0 - value <= 1.0 / 256.0);
    CHECK(value < 1.0);

    const BinaryMask small = make_mask(1, 1);
    CHECK_THROWS_AS(losses::dice_loss(half, small, 1.0), std::domain_error);
}

TEST_CASE("dice is symmetric on hard masks") {
    util::Rng rng(37);
    for (int i = 0; i < 20; ++i) {
        const BinaryMask a = random_mask(rng, 6, 6);
        const BinaryMask b = random_mask(rng, 6, 6);
        auto as_probs = [](const BinaryMask& m) {
            std::vector<double> p;
            for (auto v : m.data) p.push_back(v ? 1.0 : 0.0);
            return losses::ProbMap::from_probabilities(m.width, m.height, p, 0, 0.0);
        };
        CHECK(losses::dice_loss(as_probs(a), b).value ==
              doctest::Approx(losses::dice_loss(as_probs(b), a).value).epsilon(1e-14));
    }
}

TEST_CASE("dice gradient passes finite differences") {
    util::Rng rng(41);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        std::vector<double> probs(64);
        for (auto& p : probs) p = rng.uniform(0.05, 0.95);
        const auto map = losses::ProbMap::from_probabilities(8, 8, probs, 0, 0.0);
        const BinaryMask gt = random_mask(rng, 8, 8);
        worst = std::max(worst, losses::gradcheck_dice(map, gt, 1.0, 1e-5));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("similarity loss endpoints") {
    CHECK(losses::sim_loss({{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}}).value ==
          doctest::Approx(0.0).epsilon(1e-15));
    CHECK(losses::sim_loss({{1.0, 0.0}, {0.0, 2.0}}).value == 1.0);
    CHECK(losses::sim_loss({{1.0, 1.0}, {-2.0, -2.0}}).value ==
          doctest::Approx(2.0).epsilon(1e-15));

    CHECK_THROWS_AS(losses::sim_loss({{0.0, 0.0}, {1.0, 1.0}}), std::domain_error);
    CHECK_THROWS_AS(losses::sim_loss({{1.0}, {1.0, 2.0}}), std::domain_error);
    CHECK_THROWS_AS(losses::sim_loss({{}, {}}), std::domain_error);
}

TEST_CASE("similarity gradient passes finite differences") {
    util::Rng rng(43);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        FeaturePair fp;
        for (int k = 0; k < 16; ++k) {
            fp.memory_feature.push_back(rng.uniform(-1.0, 1.0));
            fp.query_feature.push_back(rng.uniform(-1.0, 1.0));
        }
        worst = std::max(worst, losses::gradcheck_sim(fp, 1e-6));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("mask IoU loss is squared calibration error") {
    const BinaryMask a = mask_of_bits(2, 2, {1, 1, 0, 0});
    CHECK(losses::maskiou_loss(losses::QualityPrediction::make(1.0), a, a) == 0.0);

    // IoU 0.5: prediction covers half of the target.
    const BinaryMask halfm = mask_of_bits(2, 2, {1, 0, 0, 0});
    CHECK(losses::maskiou_loss(losses::QualityPrediction::make(1.0), halfm, a) == 0.25);

    // Intersection 2, union 6.
    BinaryMask left = make_mask(4, 4);
    BinaryMask right = make_mask(4, 4);
    for (int y = 0; y < 2; ++y) {
        for (int x = 0; x < 2; ++x) left.data[static_cast<std::size_t>(y) * 4 + x] = 1;
        for (int x = 1; x < 3; ++x) right.data[static_cast<std::size_t>(y) * 4 + x] = 1;
    }
    const double expected = (0.8 - 1.0 / 3.0) * (0.8 - 1.0 / 3.0);
    CHECK(losses::maskiou_loss(losses::QualityPrediction::make(0.8), left, right) ==
          doctest::Approx(expected).epsilon(1e-15));

    CHECK_THROWS_AS(losses::QualityPrediction::make(1.5), std::domain_error);
    CHECK_THROWS_AS(losses::QualityPrediction::make(-0.1), std::domain_error);
}

TEST_CASE("total loss aggregation") {
    losses::LossTerms terms;
    terms.ce = {0.2};
    terms.dice = {0.3};
    terms.sim = {0.1};
    terms.mask_iou = {0.05};
    LossWeights w;
    const LossBreakdown b = losses::total_loss(terms, w);
    CHECK(b.total == doctest::Approx(0.65).epsilon(1e-15));
    CHECK(b.ce == doctest::Approx(0.2).epsilon(1e-15));

    // Component means are unweighted means over terms.
    terms.ce = {0.2, 0.4};
    const LossBreakdown b2 = losses::total_loss(terms, w);
    CHECK(b2.ce == doctest::Approx(0.3).epsilon(1e-15));

    LossWeights ce_only{1.0, 0.0, 0.0, 0.0};
    losses::LossTerms only;
    only.ce = {0.7};
    const LossBreakdown b3 = losses::total_loss(only, ce_only);
    CHECK(b3.total == doctest::Approx(0.7).epsilon(1e-15));

    // Missing terms for an enabled component are an error.
    losses::LossTerms missing;
    missing.ce = {0.7};
    CHECK_THROWS_AS(losses::total_loss(missing, w), std::domain_error);
}

TEST_CASE("total loss is linear in the weights") {
    util::Rng rng(47);
    for (int i = 0; i < 50; ++i) {
        losses::LossTerms terms;
        terms.ce = {rng.uniform()};
        terms.dice = {rng.uniform()};
        terms.sim = {rng.uniform(0.0, 2.0)};
        terms.mask_iou = {rng.uniform()};
        LossWeights w;
        w.ce = rng.uniform(0.1, 2.0);
        w.dice = rng.uniform(0.1, 2.0);
        w.sim = rng.uniform(0.1, 2.0);
        w.mask_iou = rng.uniform(0.1, 2.0);
        const double c = rng.uniform(0.5, 3.0);
        LossWeights scaled = w;
        scaled.ce *= c;
        scaled.dice *= c;
        scaled.sim *= c;
        scaled.mask_iou *= c;
        const double base = losses::total_loss(terms, w).total;
        const double scaled_total = losses::total_loss(terms, scaled).total;
        CHECK(scaled_total == doctest::Approx(c * base).epsilon(1e-12));
    }
}

TEST_CASE("gradcheck interface guards") {
    const auto f = [](const std::vector<double>& x) { return x[0] * x[0]; };
    CHECK_THROWS_AS(losses::gradcheck(f, {1.0}, {2.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(losses::gradcheck(f, {1.0}, {2.0, 1.0}, 1e-5), std::invalid_argument);
    CHECK(losses::gradcheck(f, {1.5}, {3.0}, 1e-5) < 1e-9);
}

TEST_CASE("loss config parsing") {
    const losses::LossConfig defaults = losses::loss_config_from_json("{}");
    CHECK(defaults.weights.ce == 1.0);
    CHECK(defaults.smoothing == 1.0);
    CHECK(defaults.clamp_eps == 1e-7);

    const std::string doc = R"({
      "loss": {
        "weights": {"ce": 2.0, "dice": 0.5, "sim": 0.0, "mask_iou": 1.5},
        "smoothing": 2.0,
        "clamp_eps": 1e-6
      }
    })";
    const losses::LossConfig parsed = losses::loss_config_from_json(doc);
    CHECK(parsed.weights.ce == 2.0);
    CHECK(parsed.weights.sim == 0.0);
    CHECK(parsed.smoothing == 2.0);
    CHECK(parsed.clamp_eps == 1e-6);

    CHECK_THROWS_AS(losses::loss_config_from_json(R"({"loss": {"unknown": 1}})"),
                    voskit::config_error);
    CHECK_THROWS_AS(losses::loss_config_from_json("not json"), voskit::config_error);
}

} // TEST_SUITE
