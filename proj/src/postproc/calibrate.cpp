#include "voskit/postproc/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "voskit/core/errors.hpp"
#include "voskit/util/numeric.hpp"

namespace voskit::postproc {

using ordered_json = nlohmann::ordered_json;

namespace {

void require_stack(const CalibratedStack& stack, const char* who) {
    if (stack.width <= 0 || stack.height <= 0) {
        throw std::domain_error(std::string(who) + ": empty stack");
    }
    const std::size_t n = static_cast<std::size_t>(stack.width) * stack.height;
    for (const auto& [id, map] : stack.per_object) {
        if (map.size() != n) {
            throw std::domain_error(std::string(who) + ": probability map size mismatch");
        }
    }
}

} // namespace

CalibratedStack apply_scaling(const LogitStack& logits, const ScaleConfig& c) {
    c.validate();
    if (logits.width <= 0 || logits.height <= 0) {
        throw std::domain_error("apply_scaling: empty logit stack");
    }
    const std::size_t n = static_cast<std::size_t>(logits.width) * logits.height;

    CalibratedStack out;
    out.width = logits.width;
    out.height = logits.height;
    out.config = c;
    for (const auto& [id, z] : logits.per_object) {
        if (z.size() != n) {
            throw std::domain_error("apply_scaling: logit map size mismatch");
        }
        std::vector<double>& p = out.per_object[id];
        p.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!std::isfinite(z[i])) {
                throw std::domain_error("apply_scaling: non-finite logit");
            }
            p[i] = util::stable_sigmoid(c.sigmoid_scale * static_cast<double>(z[i]) +
                                        c.sigmoid_bias);
        }
    }
    return out;
}

std::map<int32_t, BinaryMask> binarize(const CalibratedStack& stack) {
    require_stack(stack, "binarize");
    std::map<int32_t, BinaryMask> out;
    for (const auto& [id, p] : stack.per_object) {
        BinaryMask mask = make_mask(stack.width, stack.height);
        for (std::size_t i = 0; i < p.size(); ++i) {
            mask.data[i] = p[i] >= stack.config.threshold ? 1 : 0;
        }
        out.emplace(id, std::move(mask));
    }
    return out;
}

FinalLabeling resolve_overlaps(const CalibratedStack& stack) {
    require_stack(stack, "resolve_overlaps");
    const std::size_t n = static_cast<std::size_t>(stack.width) * stack.height;

    FinalLabeling out;
    out.labels = make_raster(stack.width, stack.height);

    std::map<int32_t, double> sums;
    std::map<int32_t, std::uint64_t> counts;
    for (std::size_t i = 0; i < n; ++i) {
        int32_t winner = 0;
        double best = -1.0;
        for (const auto& [id, p] : stack.per_object) {
            // Ascending map order plus strict > gives the lower ID on ties.
            if (p[i] > best) {
                best = p[i];
                winner = id;
            }
        }
        if (winner != 0 && best >= stack.config.threshold) {
            out.labels.labels[i] = winner;
            sums[winner] += best;
            counts[winner] += 1;
        }
    }
    for (const auto& [id, total] : sums) {
        out.confidence[id] = total / static_cast<double>(counts[id]);
    }
    return out;
}

FinalLabeling fuse_configs(const std::vector<CalibratedStack>& stacks) {
    if (stacks.empty()) {
        throw std::domain_error("fuse_configs: need at least one stack");
    }
    for (const CalibratedStack& s : stacks) {
        require_stack(s, "fuse_configs");
        if (s.width != stacks.front().width || s.height != stacks.front().height) {
            throw std::domain_error("fuse_configs: stack dimensions differ");
        }
        if (s.per_object.size() != stacks.front().per_object.size()) {
            throw std::domain_error("fuse_configs: object sets differ");
        }
        for (const auto& [id, p] : stacks.front().per_object) {
            if (!s.per_object.count(id)) {
                throw std::domain_error("fuse_configs: object sets differ");
            }
        }
    }

    const std::size_t n =
        static_cast<std::size_t>(stacks.front().width) * stacks.front().height;
    const double count = static_cast<double>(stacks.size());

    CalibratedStack fused;
    fused.width = stacks.front().width;
    fused.height = stacks.front().height;

    // Per-pixel sorted summation makes the average independent of the order
    // the stacks were supplied in.
    std::vector<double> samples(stacks.size());
    for (const auto& [id, unused] : stacks.front().per_object) {
        std::vector<double>& acc = fused.per_object[id];
        acc.resize(n);
        std::vector<const std::vector<double>*> maps;
        maps.reserve(stacks.size());
        for (const CalibratedStack& s : stacks) {
            maps.push_back(&s.per_object.at(id));
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < maps.size(); ++k) {
                samples[k] = (*maps[k])[i];
            }
            std::sort(samples.begin(), samples.end());
            double sum = 0.0;
            for (double v : samples) sum += v;
            acc[i] = sum / count;
        }
    }

    std::vector<double> thresholds;
    thresholds.reserve(stacks.size());
    for (const CalibratedStack& s : stacks) thresholds.push_back(s.config.threshold);
    std::sort(thresholds.begin(), thresholds.end());
    double threshold_sum = 0.0;
    for (double t : thresholds) threshold_sum += t;

    fused.config.sigmoid_scale = 1.0;
    fused.config.sigmoid_bias = 0.0;
    fused.config.threshold = threshold_sum / count;
    fused.config.tag = "fused";
    return resolve_overlaps(fused);
}

std::vector<ScaleConfig> scale_configs_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("run config: invalid JSON: ") + e.what());
    }

    const ordered_json* list = nullptr;
    if (doc.is_array()) {
        list = &doc;
    } else if (doc.is_object() && doc.contains("configs")) {
        if (doc.contains("schema_version") && doc.at("schema_version").get<int>() != 1) {
            throw config_error("run config: unsupported schema_version");
        }
        list = &doc.at("configs");
    } else {
        throw config_error("run config: expected an array or an object with 'configs'");
    }

    std::vector<ScaleConfig> out;
    for (const auto& entry : *list) {
        if (!entry.is_object()) {
            throw config_error("run config: each config must be an object");
        }
        ScaleConfig c;
        for (const auto& [key, value] : entry.items()) {
            if (key == "sigmoid_scale") {
                c.sigmoid_scale = value.get<double>();
            } else if (key == "sigmoid_bias") {
                c.sigmoid_bias = value.get<double>();
            } else if (key == "threshold") {
                c.threshold = value.get<double>();
            } else if (key == "tag") {
                c.tag = value.get<std::string>();
            } else {
                throw config_error("run config: unknown key '" + key + "'");
            }
        }
        try {
            c.validate();
        } catch (const std::domain_error& e) {
            throw config_error(std::string("run config: ") + e.what());
        }
        out.push_back(std::move(c));
    }
    if (out.empty()) {
        throw config_error("run config: needs at least one config");
    }
    return out;
}

std::vector<ScaleConfig> load_scale_configs(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return scale_configs_from_json(text);
}

std::string scale_configs_to_json(const std::vector<ScaleConfig>& configs) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["configs"] = ordered_json::array();
    for (const ScaleConfig& c : configs) {
        doc["configs"].push_back({{"sigmoid_scale", c.sigmoid_scale},
                                  {"sigmoid_bias", c.sigmoid_bias},
                                  {"threshold", c.threshold},
                                  {"tag", c.tag}});
    }
    return doc.dump(2) + "\n";
}

} // namespace voskit::postproc
