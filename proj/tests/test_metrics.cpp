#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "test_util.hpp"
#include "ttvsr/metrics.hpp"

using namespace ttvsr;

TEST_SUITE_BEGIN("metrics");

TEST_CASE("identical images: infinite PSNR, SSIM of one") {
    const FeatureMap a = ttest::random_map(3, 16, 16, 70);
    CHECK(std::isinf(psnr(a, a)));
    CHECK(psnr(a, a) > 0);
    CHECK(ssim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(ssim(a, a, true) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("uniform difference of 0.1 gives 20 dB") {
    const FeatureMap a = ttest::random_map(3, 12, 12, 71, 0.0f, 0.8f);
    std::vector<float> shifted(a.data().begin(), a.data().end());
    for (float& v : shifted) v += 0.1f;
    const FeatureMap b(3, 12, 12, std::move(shifted));
    CHECK(psnr(a, b) == doctest::Approx(20.0).epsilon(1e-6));
}

TEST_CASE("PSNR tracks a brute-force MSE oracle on noisy images") {
    std::mt19937 rng(72);
    std::vector<float> base(static_cast<std::size_t>(3) * 16 * 16, 0.5f);
    const FeatureMap a(3, 16, 16, std::move(base));
    std::vector<float> noisy(a.data().begin(), a.data().end());
    for (float& v : noisy) {
        // Seeded, clipped perturbation around sigma = 0.05.
        const float u1 = (static_cast<float>(rng()) + 0.5f) / 4294967296.0f;
        const float u2 = (static_cast<float>(rng()) + 0.5f) / 4294967296.0f;
        const float n = std::sqrt(-2.0f * std::log(u1)) * std::cos(6.2831853f * u2);
        v = std::clamp(v + 0.05f * n, 0.0f, 1.0f);
    }
    const FeatureMap b(3, 16, 16, std::move(noisy));

    double mse = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = static_cast<double>(a.data()[k]) - b.data()[k];
        mse += d * d;
    }
    mse /= static_cast<double>(a.size());
    const double want = -10.0 * std::log10(mse);
    CHECK(psnr(a, b) == doctest::Approx(want).epsilon(1e-9));
    CHECK(std::abs(psnr(a, b) - want) <= 0.2);
}

TEST_CASE("luma-only PSNR weighs channels by BT.601") {
    const FeatureMap a = ttest::random_map(3, 8, 8, 76, 0.2f, 0.8f);
    std::vector<float> shifted(a.data().begin(), a.data().end());
    // Shift only the red channel; luma sees 0.299 of it.
    for (std::size_t k = 0; k < 64; ++k) shifted[k] += 0.1f;
    const FeatureMap b(3, 8, 8, std::move(shifted));
    const double rgb = psnr(a, b);
    const double luma = psnr(a, b, true);
    CHECK(rgb == doctest::Approx(-10.0 * std::log10(0.01 / 3.0)).epsilon(1e-6));
    CHECK(luma == doctest::Approx(-10.0 * std::log10(0.01 * 0.299 * 0.299)).epsilon(1e-6));
    CHECK(std::isinf(psnr(a, a, true)));
    const FeatureMap gray = ttest::random_map(1, 8, 8, 77);
    CHECK_THROWS_AS(psnr(gray, gray, true), SizeError);
}

TEST_CASE("SSIM drops for degraded images and respects bounds") {
    const FeatureMap a = ttest::random_map(3, 20, 20, 73, 0.2f, 0.8f);
    std::vector<float> degraded(a.data().begin(), a.data().end());
    std::mt19937 rng(74);
    for (float& v : degraded) {
        v = std::clamp(v + 0.2f * (static_cast<float>(rng()) / 4294967296.0f - 0.5f),
                       0.0f, 1.0f);
    }
    const FeatureMap b(3, 20, 20, std::move(degraded));
    const double s = ssim(a, b);
    CHECK(s < 1.0);
    CHECK(s > -1.0);
    const double sy = ssim(a, b, true);
    CHECK(sy < 1.0);
}

TEST_CASE("metrics validate shapes") {
    const FeatureMap a = ttest::random_map(3, 16, 16, 75);
    const FeatureMap b = ttest::random_map(3, 16, 12, 75);
    CHECK_THROWS_AS(psnr(a, b), SizeError);
    CHECK_THROWS_AS(ssim(a, b), SizeError);
    const FeatureMap tiny = ttest::random_map(3, 8, 8, 75);
    CHECK_THROWS_AS(ssim(tiny, tiny), SizeError);
}

TEST_SUITE_END();
