#include "voskit/augment/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "voskit/core/errors.hpp"
#include "voskit/util/rng.hpp"

namespace voskit::augment {

using ordered_json = nlohmann::ordered_json;

namespace {

const char* selection_name(GrayscaleSelection s) {
    switch (s) {
    case GrayscaleSelection::all_frames: return "all_frames";
    case GrayscaleSelection::independent: return "independent";
    case GrayscaleSelection::one_per_clip: return "one_per_clip";
    }
    return "all_frames";
}

GrayscaleSelection selection_from_name(const std::string& name) {
    if (name == "all_frames") return GrayscaleSelection::all_frames;
    if (name == "independent") return GrayscaleSelection::independent;
    if (name == "one_per_clip") return GrayscaleSelection::one_per_clip;
    throw config_error("augment config: unknown grayscale_selection '" + name + "'");
}

void reject_unknown_keys(const ordered_json& block, const std::vector<std::string>& known,
                         const std::string& where) {
    for (const auto& [key, value] : block.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw config_error("augment config: unknown key '" + key + "' in " + where);
        }
    }
}

template <typename T>
T read_or(const ordered_json& block, const char* key, T fallback) {
    if (!block.contains(key)) return fallback;
    try {
        return block.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw config_error(std::string("augment config: field '") + key + "' has the wrong type");
    }
}

ordered_json affine_to_json(const Affine& m) {
    return ordered_json::array({m.a, m.b, m.tx, m.c, m.d, m.ty});
}

} // namespace

void AugmentConfig::validate() const {
    geom.validate();
    color.validate();
    normalize.validate();
}

AugmentConfig augment_config_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("augment config: invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw config_error("augment config: document must be a JSON object");
    }
    reject_unknown_keys(doc, {"schema_version", "geometry", "color", "normalize", "loss"},
                        "the top level");
    const int version = read_or<int>(doc, "schema_version", 1);
    if (version != 1) {
        throw config_error("augment config: unsupported schema_version " +
                           std::to_string(version));
    }

    AugmentConfig config;
    if (doc.contains("geometry")) {
        const auto& g = doc.at("geometry");
        reject_unknown_keys(g,
                            {"enabled", "rotation_max_deg", "shear_max_deg", "scale_min",
                             "scale_max", "output_width", "output_height"},
                            "geometry");
        config.geom_enabled = read_or<bool>(g, "enabled", true);
        config.geom.rotation_max_deg = read_or<double>(g, "rotation_max_deg", 20.0);
        config.geom.shear_max_deg = read_or<double>(g, "shear_max_deg", 10.0);
        config.geom.scale_min = read_or<double>(g, "scale_min", 0.75);
        config.geom.scale_max = read_or<double>(g, "scale_max", 1.25);
        config.geom.output_width = read_or<int>(g, "output_width", 0);
        config.geom.output_height = read_or<int>(g, "output_height", 0);
    }
    if (doc.contains("color")) {
        const auto& c = doc.at("color");
        reject_unknown_keys(c,
                            {"enabled", "factor_lo", "factor_hi", "grayscale_prob",
                             "inconsistent_prob", "grayscale_selection"},
                            "color");
        config.color_enabled = read_or<bool>(c, "enabled", true);
        config.color.factor_lo = read_or<double>(c, "factor_lo", 0.7);
        config.color.factor_hi = read_or<double>(c, "factor_hi", 1.3);
        config.color.grayscale_prob = read_or<double>(c, "grayscale_prob", 0.05);
        config.color.inconsistent_prob = read_or<double>(c, "inconsistent_prob", 0.2);
        config.color.selection = selection_from_name(
            read_or<std::string>(c, "grayscale_selection", "all_frames"));
    }
    if (doc.contains("normalize")) {
        const auto& n = doc.at("normalize");
        reject_unknown_keys(n, {"enabled", "mean", "std"}, "normalize");
        config.normalize_enabled = read_or<bool>(n, "enabled", true);
        if (n.contains("mean")) {
            const auto mean = n.at("mean").get<std::vector<double>>();
            if (mean.size() != 3) throw config_error("augment config: mean needs 3 entries");
            std::copy(mean.begin(), mean.end(), config.normalize.mean.begin());
        }
        if (n.contains("std")) {
            const auto sd = n.at("std").get<std::vector<double>>();
            if (sd.size() != 3) throw config_error("augment config: std needs 3 entries");
            std::copy(sd.begin(), sd.end(), config.normalize.std.begin());
        }
    }
    try {
        config.validate();
    } catch (const std::domain_error& e) {
        throw config_error(std::string("augment config: ") + e.what());
    }
    return config;
}

std::string augment_config_to_json(const AugmentConfig& config) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["geometry"] = {{"enabled", config.geom_enabled},
                       {"rotation_max_deg", config.geom.rotation_max_deg},
                       {"shear_max_deg", config.geom.shear_max_deg},
                       {"scale_min", config.geom.scale_min},
                       {"scale_max", config.geom.scale_max},
                       {"output_width", config.geom.output_width},
                       {"output_height", config.geom.output_height}};
    doc["color"] = {{"enabled", config.color_enabled},
                    {"factor_lo", config.color.factor_lo},
                    {"factor_hi", config.color.factor_hi},
                    {"grayscale_prob", config.color.grayscale_prob},
                    {"inconsistent_prob", config.color.inconsistent_prob},
                    {"grayscale_selection", selection_name(config.color.selection)}};
    doc["normalize"] = {
        {"enabled", config.normalize_enabled},
        {"mean", std::vector<double>(config.normalize.mean.begin(), config.normalize.mean.end())},
        {"std", std::vector<double>(config.normalize.std.begin(), config.normalize.std.end())}};
    return doc.dump(2) + "\n";
}

AugmentConfig load_augment_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return augment_config_from_json(text);
}

std::string provenance_to_json(const Provenance& p) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["sequence_id"] = p.sequence_id;
    doc["seed"] = p.seed;

    ordered_json geom;
    geom["enabled"] = p.geom_enabled;
    if (p.geom_enabled) {
        geom["hflip"] = p.geom.hflip;
        geom["rotation_deg"] = p.geom.rotation_deg;
        geom["shear_x_deg"] = p.geom.shear_x_deg;
        geom["shear_y_deg"] = p.geom.shear_y_deg;
        geom["scale"] = p.geom.scale;
        geom["output_width"] = p.geom.output_width;
        geom["output_height"] = p.geom.output_height;
        geom["frame_matrices"] = ordered_json::array();
        for (const Affine& m : p.frame_matrices) {
            geom["frame_matrices"].push_back(affine_to_json(m));
        }
    }
    doc["geometry"] = std::move(geom);

    ordered_json color;
    color["enabled"] = p.color_enabled;
    if (p.color_enabled) {
        color["mode"] = p.color.mode == ColorMode::inconsistent ? "inconsistent" : "consistent";
        color["grayscale"] = p.color.grayscale;
        color["grayscale_selection"] = selection_name(p.color.ranges.selection);
        color["frames"] = ordered_json::array();
        for (const FrameColorDraw& d : p.color_draws) {
            color["frames"].push_back({{"brightness", d.brightness},
                                       {"contrast", d.contrast},
                                       {"saturation", d.saturation},
                                       {"grayscale", d.grayscale}});
        }
    }
    doc["color"] = std::move(color);

    ordered_json norm;
    norm["enabled"] = p.normalize_enabled;
    if (p.normalize_enabled) {
        norm["mean"] =
            std::vector<double>(p.normalize.mean.begin(), p.normalize.mean.end());
        norm["std"] = std::vector<double>(p.normalize.std.begin(), p.normalize.std.end());
    }
    doc["normalize"] = std::move(norm);
    return doc.dump(2) + "\n";
}

AugmentedClip augment_pipeline(const Clip& clip, uint64_t seed, const AugmentConfig& config) {
    config.validate();
    const ValidationResult check = validate_clip(clip);
    if (!check.ok) {
        throw std::invalid_argument("augment_pipeline: invalid clip: " +
                                    check.violations.front());
    }

    AugmentedClip out;
    out.provenance.sequence_id = clip.sequence_id;
    out.provenance.seed = seed;
    out.provenance.geom_enabled = config.geom_enabled;
    out.provenance.color_enabled = config.color_enabled;
    out.provenance.normalize_enabled = config.normalize_enabled;
    out.provenance.normalize = config.normalize;

    Clip current = clip;
    if (config.geom_enabled) {
        const GeomParams p = sample_geom(util::derive_stream(seed, "geom", 0), config.geom);
        out.provenance.geom = p;
        const int in_w = current.frames.front().image.width;
        const int in_h = current.frames.front().image.height;
        const int out_w = p.output_width > 0 ? p.output_width : in_w;
        const int out_h = p.output_height > 0 ? p.output_height : in_h;
        const Affine m = affine_matrix(p, in_w, in_h, out_w, out_h);
        out.provenance.frame_matrices.assign(current.frames.size(), m);
        current = apply_geom(current, p);
    }
    if (config.color_enabled) {
        const ColorParams p = sample_color(util::derive_stream(seed, "color", 0), config.color);
        out.provenance.color = p;
        ColorOutcome outcome =
            apply_color(current, p, util::derive_stream(seed, "color-draws", 0));
        out.provenance.color_draws = std::move(outcome.draws);
        current = std::move(outcome.clip);
    }
    if (config.normalize_enabled) {
        for (ClipFrame& frame : current.frames) {
            frame.image = normalize(frame.image, config.normalize);
        }
    }
    out.clip = std::move(current);
    return out;
}

} // namespace voskit::augment
