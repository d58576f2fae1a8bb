#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "gaitauth/rng.hpp"
#include "gaitauth/wavelet.hpp"

using namespace gait;

namespace {

double energy(const std::vector<double>& x) {
    double e = 0.0;
    for (double v : x) e += v * v;
    return e;
}

}  // namespace

TEST_SUITE_BEGIN("wavelet");

TEST_CASE("constants pass through denoising unchanged") {
    std::vector<double> x(100, 3.25);
    auto y = wavelet_denoise(x, 2);
    REQUIRE(y.size() == x.size());
    for (double v : y) CHECK(std::abs(v - 3.25) < 1e-9);
}

TEST_CASE("decompose/reconstruct without zeroing reproduces the input") {
    Rng rng(42);
    for (std::size_t n : {64u, 65u, 100u, 101u, 128u, 777u, 4096u}) {
        std::vector<double> x(n);
        for (auto& v : x) v = rng.normal();
        for (int levels : {1, 2, 3}) {
            auto dec = db6_decompose(x, levels);
            auto back = db6_reconstruct(dec);
            REQUIRE(back.size() == n);
            double err = 0.0;
            for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(back[i] - x[i]));
            CHECK(err < 1e-9);
        }
    }
}

TEST_CASE("a Nyquist tone is almost entirely detail energy") {
    std::vector<double> x(128);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = (i % 2 == 0) ? 1.0 : -1.0;
    auto y = wavelet_denoise(x, 2);
    CHECK(energy(y) < 0.05 * energy(x));
}

TEST_CASE("denoising never adds energy") {
    Rng rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const auto n = static_cast<std::size_t>(rng.uniform(12, 700));
        std::vector<double> x(n);
        for (auto& v : x) v = rng.normal(rng.uniform(-3, 3), rng.uniform(0.1, 4.0));
        auto y = wavelet_denoise(x, 2);
        CHECK(energy(y) <= energy(x) + 1e-9);
    }
}

TEST_CASE("series shorter than the filter are rejected") {
    std::vector<double> x(11, 1.0);
    CHECK_THROWS_WITH_AS(wavelet_denoise(x, 2), doctest::Contains("too short"),
                         std::runtime_error);
    CHECK_THROWS_AS(wavelet_denoise(std::vector<double>(20, 1.0), 0), std::invalid_argument);
}

TEST_SUITE_END();
