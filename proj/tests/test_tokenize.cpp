#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "test_util.hpp"
#include "ttvsr/tensor_ops.hpp"
#include "ttvsr/tokenize.hpp"

using namespace ttvsr;

namespace {

// Brute-force cross-scale token: direct clamped patch reads and bin means,
// no shared code with the implementation.
std::vector<float> reference_cs_token(const FeatureMap& f, int gi, int gj,
                                      const std::vector<int>& kernels, int base) {
    std::vector<double> acc(static_cast<std::size_t>(f.channels()) * base * base, 0.0);
    for (int k : kernels) {
        const int pad = static_cast<int>(std::ceil((k - base) / 2.0));
        std::size_t idx = 0;
        for (int c = 0; c < f.channels(); ++c) {
            for (int bi = 0; bi < base; ++bi) {
                for (int bj = 0; bj < base; ++bj, ++idx) {
                    const int r0 = static_cast<int>(std::floor(bi * k / double(base)));
                    const int r1 = static_cast<int>(std::floor((bi + 1) * k / double(base)));
                    const int c0 = static_cast<int>(std::floor(bj * k / double(base)));
                    const int c1 = static_cast<int>(std::floor((bj + 1) * k / double(base)));
                    double bin = 0.0;
                    for (int r = r0; r < r1; ++r) {
                        for (int cc = c0; cc < c1; ++cc) {
                            bin += f.at_clamped(c, gi * base - pad + r, gj * base - pad + cc);
                        }
                    }
                    acc[idx] += bin / ((r1 - r0) * (c1 - c0));
                }
            }
        }
    }
    std::vector<float> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        out[i] = static_cast<float>(acc[i] / kernels.size());
    }
    return out;
}

// Element-wise bilinear read, independent of tokens_from_map_at.
float reference_bilinear(const FeatureMap& f, int c, double r, double col) {
    r = std::clamp(r, 0.0, static_cast<double>(f.height() - 1));
    col = std::clamp(col, 0.0, static_cast<double>(f.width() - 1));
    const int i0 = static_cast<int>(std::floor(r));
    const int j0 = static_cast<int>(std::floor(col));
    const int i1 = std::min(i0 + 1, f.height() - 1);
    const int j1 = std::min(j0 + 1, f.width() - 1);
    const double fr = r - i0, fc = col - j0;
    return static_cast<float>((1 - fr) * ((1 - fc) * f.at(c, i0, j0) + fc * f.at(c, i0, j1)) +
                              fr * ((1 - fc) * f.at(c, i1, j0) + fc * f.at(c, i1, j1)));
}

} // namespace

TEST_SUITE_BEGIN("tokenize");

TEST_CASE("cross-scale tokens of a constant map are constant") {
    std::vector<float> v(static_cast<std::size_t>(2) * 8 * 8, 0.6f);
    const FeatureMap f(2, 8, 8, std::move(v));
    const std::vector<int> kernels{4, 6, 8};
    const TokenGrid tg = cross_scale_tokenize(f, kernels, 4);
    REQUIRE(tg.grid_h() == 2);
    REQUIRE(tg.token_len() == 2 * 16);
    for (float x : tg.data()) CHECK(x == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("a single base kernel degenerates to plain unfold") {
    const FeatureMap f = ttest::random_map(3, 8, 8, 40);
    const std::vector<int> kernels{4};
    const TokenGrid cs = cross_scale_tokenize(f, kernels, 4);
    const TokenGrid plain = unfold(f, 4, 4, 0);
    REQUIRE(cs.token_len() == plain.token_len());
    for (int gi = 0; gi < cs.grid_h(); ++gi) {
        for (int gj = 0; gj < cs.grid_w(); ++gj) {
            const auto a = cs.token(gi, gj);
            const auto b = plain.token(gi, gj);
            for (std::size_t k = 0; k < a.size(); ++k) {
                CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("shape arithmetic and the brute-force patch/pool oracle") {
    const FeatureMap f = ttest::random_map(8, 16, 16, 41);
    const std::vector<int> kernels{4, 6, 8};
    const TokenGrid tg = cross_scale_tokenize(f, kernels, 4);
    REQUIRE(tg.grid_h() == 4);
    REQUIRE(tg.grid_w() == 4);
    REQUIRE(tg.token_len() == 128);
    for (int gi = 0; gi < 4; ++gi) {
        for (int gj = 0; gj < 4; ++gj) {
            const auto ref = reference_cs_token(f, gi, gj, kernels, 4);
            const auto tok = tg.token(gi, gj);
            for (std::size_t k = 0; k < ref.size(); ++k) {
                CHECK(tok[k] == doctest::Approx(ref[k]).epsilon(1e-5));
            }
        }
    }
}

TEST_CASE("cross-scale tokenization validates its inputs") {
    const FeatureMap f = ttest::random_map(1, 6, 6, 42);
    const std::vector<int> kernels{4, 6};
    CHECK_THROWS_AS(cross_scale_tokenize(f, kernels, 4), SizeError);
    const FeatureMap g = ttest::random_map(1, 8, 8, 42);
    CHECK_THROWS_AS(cross_scale_tokenize(g, std::vector<int>{}, 4), PreconditionError);
    CHECK_THROWS_AS(cross_scale_tokenize(g, std::vector<int>{2}, 4), PreconditionError);
}

TEST_CASE("translating the map by one base stride shifts interior tokens") {
    const FeatureMap f = ttest::random_map(1, 24, 24, 43);
    FeatureMap shifted(1, 24, 24);
    for (int i = 0; i < 24; ++i) {
        for (int j = 0; j < 24; ++j) {
            shifted.at(0, i, j) = f.at_clamped(0, i - 4, j - 4);
        }
    }
    const std::vector<int> kernels{4, 6, 8};
    const TokenGrid a = cross_scale_tokenize(f, kernels, 4);
    const TokenGrid b = cross_scale_tokenize(shifted, kernels, 4);
    for (int gi = 1; gi < a.grid_h() - 2; ++gi) {
        for (int gj = 1; gj < a.grid_w() - 2; ++gj) {
            const auto ta = a.token(gi, gj);
            const auto tb = b.token(gi + 1, gj + 1);
            for (std::size_t k = 0; k < ta.size(); ++k) {
                CHECK(tb[k] == doctest::Approx(ta[k]).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("duplicate scales collapse: kernels {4,4} equals {4}") {
    const FeatureMap f = ttest::random_map(2, 8, 8, 44);
    const TokenGrid a = cross_scale_tokenize(f, std::vector<int>{4, 4}, 4);
    const TokenGrid b = cross_scale_tokenize(f, std::vector<int>{4}, 4);
    for (std::size_t k = 0; k < a.data().size(); ++k) {
        CHECK(a.data()[k] == doctest::Approx(b.data()[k]).epsilon(1e-6));
    }
}

TEST_CASE("tokens stay inside the value hull") {
    const FeatureMap f = ttest::random_map(2, 16, 16, 45, 0.2f, 0.9f);
    const std::vector<int> kernels{4, 6, 8};
    const TokenGrid tg = cross_scale_tokenize(f, kernels, 4);
    for (float x : tg.data()) {
        CHECK(x >= f.min_value() - 1e-6f);
        CHECK(x <= f.max_value() + 1e-6f);
    }
}

TEST_CASE("cross_scale_map lays tokens back on the pixel grid") {
    const FeatureMap f = ttest::random_map(2, 8, 8, 46);
    const std::vector<int> kernels{4};
    const FeatureMap m = cross_scale_map(f, kernels, 4);
    for (std::size_t k = 0; k < f.size(); ++k) {
        CHECK(m.data()[k] == doctest::Approx(f.data()[k]).epsilon(1e-6));
    }
    const std::vector<int> multi{4, 6, 8};
    const FeatureMap cs = cross_scale_map(f, multi, 4);
    const TokenGrid tg = cross_scale_tokenize(f, multi, 4);
    const TokenGrid back = unfold(cs, 4, 4, 0);
    for (std::size_t k = 0; k < tg.data().size(); ++k) {
        CHECK(back.data()[k] == tg.data()[k]);
    }
}

TEST_CASE("1x1 patch tokens at integer centers read single pixels") {
    const FeatureMap f = ttest::random_map(3, 4, 4, 47);
    const std::vector<Coord> centers{{2.0f, 1.0f}};
    const auto toks = tokens_from_map_at(f, centers, 1);
    REQUIRE(toks.size() == 1);
    REQUIRE(toks[0].size() == 3);
    for (int c = 0; c < 3; ++c) CHECK(toks[0][static_cast<std::size_t>(c)] == f.at(c, 2, 1));
}

TEST_CASE("patch tokens of a constant map are constant for any center") {
    std::vector<float> v(static_cast<std::size_t>(1) * 5 * 5, 0.25f);
    const FeatureMap f(1, 5, 5, std::move(v));
    const std::vector<Coord> centers{{-1.0f, 7.3f}, {2.2f, 2.9f}, {0.0f, 0.0f}};
    for (const auto& tok : tokens_from_map_at(f, centers, 3)) {
        for (float x : tok) CHECK(x == doctest::Approx(0.25));
    }
}

TEST_CASE("fractional patch tokens equal element-wise bilinear reads") {
    const FeatureMap f(1, 4, 4, ttest::iota_data(16));
    const std::vector<Coord> centers{{1.5f, 1.5f}};
    const auto toks = tokens_from_map_at(f, centers, 2);
    REQUIRE(toks[0].size() == 4);
    std::size_t idx = 0;
    for (int ki = 0; ki < 2; ++ki) {
        for (int kj = 0; kj < 2; ++kj, ++idx) {
            const float want = reference_bilinear(f, 0, 1.5 + ki - 0.5, 1.5 + kj - 0.5);
            CHECK(toks[0][idx] == want);
        }
    }

    const FeatureMap g = ttest::random_map(2, 7, 7, 48);
    const std::vector<Coord> more{{3.3f, 2.7f}, {0.4f, 6.6f}};
    const auto gt = tokens_from_map_at(g, more, 3);
    for (std::size_t ci = 0; ci < more.size(); ++ci) {
        std::size_t k = 0;
        for (int c = 0; c < 2; ++c) {
            for (int ki = 0; ki < 3; ++ki) {
                for (int kj = 0; kj < 3; ++kj, ++k) {
                    const float want = reference_bilinear(g, c, more[ci].row + ki - 1.0,
                                                          more[ci].col + kj - 1.0);
                    CHECK(gt[ci][k] == doctest::Approx(want).epsilon(1e-6));
                }
            }
        }
    }
}

TEST_SUITE_END();
