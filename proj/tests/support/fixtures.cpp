#include "support/fixtures.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "voskit/datakit/image_io.hpp"
#include "voskit/datakit/palette.hpp"
#include "voskit/postproc/logit_io.hpp"
#include "voskit/util/rng.hpp"

namespace voskit::testsupport {

namespace fs = std::filesystem;

std::string shape_sequence_name(int sequence_index) {
    std::string n = std::to_string(sequence_index);
    return "shape_" + std::string(n.size() < 2 ? 2 - n.size() : 0, '0') + n;
}

std::string shape_frame_stem(int frame_index) {
    std::string n = std::to_string(frame_index);
    return std::string(n.size() < 5 ? 5 - n.size() : 0, '0') + n;
}

LabelRaster shape_raster(const ShapeDatasetSpec& spec, int sequence_index, int frame_index) {
    LabelRaster raster = make_raster(spec.width, spec.height);
    const int s = sequence_index;
    const int t = frame_index;

    // Rectangle, label 1, drifting right in the left half.
    const int rx = 4 + 2 * t + s;
    const int ry = 6 + (s + t) % 3;
    for (int y = ry; y < ry + 12; ++y) {
        for (int x = rx; x < rx + 18; ++x) {
            raster.at(x, y) = 1;
        }
    }

    // Disk, label 2, drifting down-left in the right half.
    const int cx = 70 - s - t;
    const int cy = 20 + 2 * t + s;
    const int r = 8;
    for (int y = cy - r; y <= cy + r; ++y) {
        for (int x = cx - r; x <= cx + r; ++x) {
            const int dx = x - cx;
            const int dy = y - cy;
            if (dx * dx + dy * dy <= r * r) raster.at(x, y) = 2;
        }
    }
    return raster;
}

FrameImage shape_frame(const ShapeDatasetSpec& spec, int sequence_index, int frame_index) {
    util::Rng rng(util::derive_stream(spec.seed, shape_sequence_name(sequence_index), 0));
    const float base_r = static_cast<float>(0.2 + 0.3 * rng.uniform());
    const float base_g = static_cast<float>(0.2 + 0.3 * rng.uniform());
    const float base_b = static_cast<float>(0.2 + 0.3 * rng.uniform());

    const LabelRaster raster = shape_raster(spec, sequence_index, frame_index);
    FrameImage frame = make_frame(spec.width, spec.height);
    for (int y = 0; y < spec.height; ++y) {
        for (int x = 0; x < spec.width; ++x) {
            const float gradient = static_cast<float>(x + y) /
                                   static_cast<float>(spec.width + spec.height);
            float r = base_r + 0.3f * gradient;
            float g = base_g + 0.2f * gradient;
            float b = base_b + 0.1f * gradient;
            if (raster.at(x, y) == 1) {
                r = 0.85f;
                g = 0.35f;
                b = 0.25f;
            } else if (raster.at(x, y) == 2) {
                r = 0.20f;
                g = 0.55f;
                b = 0.90f;
            }
            frame.at(x, y, 0) = r;
            frame.at(x, y, 1) = g;
            frame.at(x, y, 2) = b;
        }
    }
    return frame;
}

void write_shape_dataset(const fs::path& root, const ShapeDatasetSpec& spec) {
    for (int s = 0; s < spec.sequences; ++s) {
        const std::string name = shape_sequence_name(s);
        const fs::path image_dir = root / "JPEGImages" / name;
        const fs::path mask_dir = root / "Annotations" / name;
        fs::create_directories(image_dir);
        fs::create_directories(mask_dir);
        for (int t = 0; t < spec.frames; ++t) {
            const std::string stem = shape_frame_stem(t);
            datakit::save_jpeg_rgb(image_dir / (stem + ".jpg"), shape_frame(spec, s, t));
            datakit::write_binary_file(mask_dir / (stem + ".png"),
                                       datakit::encode_palette_mask(shape_raster(spec, s, t)));
        }
    }
}

std::vector<double> signed_distance(const BinaryMask& mask) {
    const int w = mask.width;
    const int h = mask.height;
    const std::size_t n = mask.data.size();
    const int unreachable = w + h + 2;

    // BFS grid distance from the seed set into the other phase.
    auto sweep = [&](bool seeds_are_foreground) {
        std::vector<int> dist(n, unreachable);
        std::deque<std::size_t> queue;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask.data[i] != 0) == seeds_are_foreground) {
                dist[i] = 0;
                queue.push_back(i);
            }
        }
        while (!queue.empty()) {
            const std::size_t i = queue.front();
            queue.pop_front();
            const int x = static_cast<int>(i % w);
            const int y = static_cast<int>(i / w);
            const int step[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
            for (const auto& d : step) {
                const int nx = x + d[0];
                const int ny = y + d[1];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                const std::size_t ni = static_cast<std::size_t>(ny) * w + nx;
                if ((mask.data[ni] != 0) == seeds_are_foreground) continue;
                if (dist[ni] <= dist[i] + 1) continue;
                dist[ni] = dist[i] + 1;
                queue.push_back(ni);
            }
        }
        return dist;
    };

    const std::vector<int> to_foreground = sweep(true);  // valid outside
    const std::vector<int> to_background = sweep(false); // valid inside

    std::vector<double> sd(n);
    for (std::size_t i = 0; i < n; ++i) {
        sd[i] = mask.data[i] != 0 ? static_cast<double>(to_background[i])
                                  : -static_cast<double>(to_foreground[i]);
    }
    return sd;
}

LogitStack logits_for_raster(const LabelRaster& raster) {
    LogitStack stack;
    stack.width = raster.width;
    stack.height = raster.height;
    for (int32_t id : raster.object_ids()) {
        const std::vector<double> sd = signed_distance(mask_of(raster, id));
        std::vector<float> z(sd.size());
        for (std::size_t i = 0; i < sd.size(); ++i) {
            z[i] = static_cast<float>(sd[i] / 3.0 + 4.0 / 7.5);
        }
        stack.per_object[id] = std::move(z);
    }
    return stack;
}

void write_logits_tree(const fs::path& dataset_root, const fs::path& logits_root) {
    const fs::path annotations = dataset_root / "Annotations";
    for (const auto& seq_entry : fs::directory_iterator(annotations)) {
        if (!seq_entry.is_directory()) continue;
        const fs::path out_dir = logits_root / seq_entry.path().filename();
        fs::create_directories(out_dir);
        for (const auto& mask_entry : fs::directory_iterator(seq_entry.path())) {
            if (mask_entry.path().extension() != ".png") continue;
            const LabelRaster raster =
                datakit::decode_palette_mask(datakit::read_binary_file(mask_entry.path()));
            postproc::write_logit_file(out_dir / (mask_entry.path().stem().string() + ".mslg"),
                                       logits_for_raster(raster));
        }
    }
}

CliResult run_cli(const std::vector<std::string>& args) {
    static std::atomic<uint64_t> counter{0};
    const uint64_t id = counter.fetch_add(1);
    const fs::path out_path = fs::temp_directory_path() /
                              ("voskit_cli_out_" + std::to_string(::getpid()) + "_" +
                               std::to_string(id) + ".txt");
    const fs::path err_path = fs::temp_directory_path() /
                              ("voskit_cli_err_" + std::to_string(::getpid()) + "_" +
                               std::to_string(id) + ".txt");

    std::string command = "'";
    command += VOSKIT_CLI_PATH;
    command += "'";
    for (const std::string& arg : args) {
        command += " '" + arg + "'";
    }
    command += " >'" + out_path.string() + "' 2>'" + err_path.string() + "'";

    const int status = std::system(command.c_str());

    CliResult result;
    if (status == -1) {
        result.exit_code = -1;
    } else if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else {
        result.exit_code = 128;
    }
    result.out = read_text_file(out_path);
    result.err = read_text_file(err_path);
    fs::remove(out_path);
    fs::remove(err_path);
    return result;
}

TempDir::TempDir(const std::string& tag) {
    static std::atomic<uint64_t> counter{0};
    path_ = fs::temp_directory_path() /
            ("voskit_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

namespace {

constexpr uint64_t kFnvOffset = 1469598103934665603ull;
constexpr uint64_t kFnvPrime = 1099511628211ull;

uint64_t fnv_update(uint64_t h, const char* data, std::size_t size) {
    for (std::size_t i = 0; i < size; ++i) {
        h ^= static_cast<unsigned char>(data[i]);
        h *= kFnvPrime;
    }
    return h;
}

uint64_t fnv_file(uint64_t h, const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("hash: cannot open " + path.string());
    char buffer[8192];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        h = fnv_update(h, buffer, static_cast<std::size_t>(in.gcount()));
    }
    return h;
}

} // namespace

uint64_t hash_file(const fs::path& path) { return fnv_file(kFnvOffset, path); }

uint64_t hash_tree(const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::recursive_directory_iterator(root)) {
        if (entry.is_regular_file()) files.push_back(fs::relative(entry.path(), root));
    }
    std::sort(files.begin(), files.end());

    uint64_t h = kFnvOffset;
    for (const fs::path& rel : files) {
        const std::string name = rel.generic_string();
        h = fnv_update(h, name.data(), name.size());
        h = fnv_update(h, "\0", 1);
        h = fnv_file(h, root / rel);
        h = fnv_update(h, "\0", 1);
    }
    return h;
}

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return {};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace voskit::testsupport
