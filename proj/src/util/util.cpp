#include "voskit/util/numeric.hpp"
#include "voskit/util/parallel.hpp"
#include "voskit/util/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace voskit::util {

std::string format_fixed4(double v) {
    const long long k = std::llround(v * 10000.0); // llround = half away from zero
    const long long a = k < 0 ? -k : k;
    std::string out = k < 0 ? "-" : "";
    out += std::to_string(a / 10000);
    out += '.';
    const std::string frac = std::to_string(a % 10000);
    out += std::string(4 - frac.size(), '0');
    out += frac;
    return out;
}

std::uint64_t splitmix64(std::uint64_t state) {
    std::uint64_t z = state + 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::uint64_t derive_stream(std::uint64_t global_seed, std::string_view sequence_id,
                            std::uint64_t clip_index, std::uint64_t salt) {
    std::uint64_t h = splitmix64(global_seed);
    h = splitmix64(h ^ fnv1a64(sequence_id));
    h = splitmix64(h ^ clip_index);
    return splitmix64(h ^ salt);
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
    if (n == 0) return;
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace voskit::util
