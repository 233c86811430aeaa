#include <doctest.h>

#include <atomic>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "support/fixtures.hpp"
#include "voskit/util/npy.hpp"
#include "voskit/util/numeric.hpp"
#include "voskit/util/parallel.hpp"
#include "voskit/util/rng.hpp"

using namespace voskit;

TEST_SUITE("util") {

TEST_CASE("format_fixed4 rounds half away from zero") {
    // The literal 0.86285 is stored a hair above the half, the computed mean
    // a hair below; the display layer must follow the stored value.
    CHECK(util::format_fixed4(0.86285) == "0.8629");
    CHECK(util::format_fixed4((0.8250 + 0.9007) / 2.0) == "0.8628");
    CHECK(util::format_fixed4(0.5) == "0.5000");
    CHECK(util::format_fixed4(1.0) == "1.0000");
    CHECK(util::format_fixed4(0.0) == "0.0000");
    CHECK(util::format_fixed4(0.00005) == "0.0001");
    CHECK(util::format_fixed4(-0.00005) == "-0.0001");
    CHECK(util::format_fixed4(2.71828) == "2.7183");
    CHECK(util::format_fixed4(-1.23456) == "-1.2346");
}

TEST_CASE("stable_sigmoid reference values") {
    CHECK(util::stable_sigmoid(0.0) == 0.5);
    CHECK(util::stable_sigmoid(-4.0) == doctest::Approx(0.017986209962091559).epsilon(1e-14));
    CHECK(util::stable_sigmoid(700.0) == 1.0);
    CHECK(util::stable_sigmoid(-700.0) > 0.0);
    CHECK(util::stable_sigmoid(-700.0) < 1e-300);
    util::Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform(-30.0, 30.0);
        CHECK(util::stable_sigmoid(t) + util::stable_sigmoid(-t) ==
              doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("rng streams are reproducible and well-ranged") {
    util::Rng a(42);
    util::Rng b(42);
    for (int i = 0; i < 100; ++i) {
        CHECK(a.next_u64() == b.next_u64());
    }
    util::Rng c(42);
    util::Rng d(43);
    bool all_equal = true;
    for (int i = 0; i < 16; ++i) {
        if (c.next_u64() != d.next_u64()) all_equal = false;
    }
    CHECK_FALSE(all_equal);

    util::Rng r(7);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = r.uniform(2.0, 5.0);
        CHECK(v >= 2.0);
        CHECK(v < 5.0);
        CHECK(r.below(10) < 10);
    }
    CHECK(r.uniform(3.25, 3.25) == 3.25);
}

TEST_CASE("below covers its range") {
    util::Rng r(19);
    std::set<uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        seen.insert(r.below(7));
    }
    CHECK(seen == std::set<uint64_t>{0, 1, 2, 3, 4, 5, 6});
}

TEST_CASE("derive_stream separates workers and reproduces") {
    const uint64_t s1 = util::derive_stream(5, "video_a", 0);
    const uint64_t s2 = util::derive_stream(5, "video_a", 0);
    CHECK(s1 == s2);
    CHECK(s1 != util::derive_stream(5, "video_a", 1));
    CHECK(s1 != util::derive_stream(5, "video_b", 0));
    CHECK(s1 != util::derive_stream(6, "video_a", 0));
    CHECK(s1 != util::derive_stream(5, "video_a", 0, 1));
}

TEST_CASE("parallel_for fills slots identically at any worker count") {
    const std::size_t n = 500;
    auto run = [n](int jobs) {
        std::vector<uint64_t> slots(n, 0);
        util::parallel_for(n, jobs, [&](std::size_t i) {
            slots[i] = util::splitmix64(i * 2654435761u);
        });
        return slots;
    };
    const auto serial = run(1);
    CHECK(run(4) == serial);
    CHECK(run(8) == serial);
}

TEST_CASE("parallel_for propagates worker exceptions") {
    CHECK_THROWS_AS(util::parallel_for(16, 4,
                                       [](std::size_t i) {
                                           if (i == 7) throw std::runtime_error("boom");
                                       }),
                    std::runtime_error);
    // n = 0 is a no-op.
    CHECK_NOTHROW(util::parallel_for(0, 4, [](std::size_t) { throw std::runtime_error("x"); }));
}

TEST_CASE("npy float32 round-trip") {
    testsupport::TempDir dir("npy");
    util::Rng rng(23);
    std::vector<float> data(5 * 4 * 3);
    for (auto& v : data) v = static_cast<float>(rng.uniform(-2.0, 2.0));

    const auto path = dir.path() / "a.npy";
    util::write_npy_f32(path, data.data(), {5, 4, 3});
    const util::NpyArrayF32 back = util::read_npy_f32(path);
    CHECK(back.shape == std::vector<std::size_t>{5, 4, 3});
    CHECK(back.data == data);

    const std::string text = testsupport::read_text_file(path);
    REQUIRE(text.size() > 10);
    CHECK(text[0] == '\x93');
    CHECK(text.substr(1, 5) == "NUMPY");
}

} // TEST_SUITE
