#pragma once

#include <filesystem>
#include <string>

#include "voskit/core/types.hpp"

namespace voskit::losses {

// The "loss" block of the shared JSON config document.
struct LossConfig {
    LossWeights weights;
    double smoothing = 1.0;  // dice
    double clamp_eps = 1e-7; // probability clamp

    void validate() const; // throws std::domain_error
};

// Reads the "loss" block from a whole config document; a missing block
// yields the defaults. Throws config_error on schema violations.
LossConfig loss_config_from_json(const std::string& document_text);
LossConfig load_loss_config(const std::filesystem::path& path);

} // namespace voskit::losses
