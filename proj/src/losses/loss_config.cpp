#include "voskit/losses/loss_config.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "voskit/core/errors.hpp"

namespace voskit::losses {

using ordered_json = nlohmann::ordered_json;

void LossConfig::validate() const {
    weights.validate();
    if (!(smoothing >= 0.0) || !std::isfinite(smoothing)) {
        throw std::domain_error("loss config: smoothing must be finite and non-negative");
    }
    if (!(clamp_eps >= 0.0) || !(clamp_eps < 0.5)) {
        throw std::domain_error("loss config: clamp_eps must lie in [0, 0.5)");
    }
}

LossConfig loss_config_from_json(const std::string& document_text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(document_text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("loss config: invalid JSON: ") + e.what());
    }
    LossConfig config;
    if (!doc.is_object() || !doc.contains("loss")) {
        return config;
    }
    const auto& block = doc.at("loss");
    try {
        for (const auto& [key, value] : block.items()) {
            if (key == "weights") {
                for (const auto& [wkey, wvalue] : value.items()) {
                    if (wkey == "ce") {
                        config.weights.ce = wvalue.get<double>();
                    } else if (wkey == "dice") {
                        config.weights.dice = wvalue.get<double>();
                    } else if (wkey == "sim") {
                        config.weights.sim = wvalue.get<double>();
                    } else if (wkey == "mask_iou") {
                        config.weights.mask_iou = wvalue.get<double>();
                    } else {
                        throw config_error("loss config: unknown weight '" + wkey + "'");
                    }
                }
            } else if (key == "smoothing") {
                config.smoothing = value.get<double>();
            } else if (key == "clamp_eps") {
                config.clamp_eps = value.get<double>();
            } else {
                throw config_error("loss config: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("loss config: mistyped field: ") + e.what());
    }
    try {
        config.validate();
    } catch (const std::domain_error& e) {
        throw config_error(e.what());
    }
    return config;
}

LossConfig load_loss_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return loss_config_from_json(text);
}

} // namespace voskit::losses
