#include "ttvsr/metrics.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace ttvsr {

namespace {

void check_same_shape(const FeatureMap& a, const FeatureMap& b, const char* op) {
    if (a.channels() != b.channels() || a.height() != b.height() ||
        a.width() != b.width()) {
        throw SizeError(std::string(op) + ": shapes differ (" +
                        std::to_string(a.channels()) + "x" + std::to_string(a.height()) +
                        "x" + std::to_string(a.width()) + " vs " +
                        std::to_string(b.channels()) + "x" + std::to_string(b.height()) +
                        "x" + std::to_string(b.width()) + ")");
    }
}

constexpr int kWindow = 11;

std::array<double, kWindow> gaussian_window() {
    std::array<double, kWindow> w{};
    const double sigma = 1.5;
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double x = i - (kWindow - 1) / 2.0;
        w[i] = std::exp(-x * x / (2.0 * sigma * sigma));
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

double ssim_plane(const std::vector<double>& x, const std::vector<double>& y, int h,
                  int w) {
    if (h < kWindow || w < kWindow) {
        throw SizeError("ssim: image smaller than the 11x11 window");
    }
    static const std::array<double, kWindow> g = gaussian_window();
    constexpr double c1 = 0.01 * 0.01;
    constexpr double c2 = 0.03 * 0.03;
    double total = 0.0;
    long count = 0;
    for (int i = 0; i + kWindow <= h; ++i) {
        for (int j = 0; j + kWindow <= w; ++j) {
            double mx = 0, my = 0, mxx = 0, myy = 0, mxy = 0;
            for (int wi = 0; wi < kWindow; ++wi) {
                for (int wj = 0; wj < kWindow; ++wj) {
                    const double weight = g[wi] * g[wj];
                    const double xv = x[static_cast<std::size_t>(i + wi) * w + (j + wj)];
                    const double yv = y[static_cast<std::size_t>(i + wi) * w + (j + wj)];
                    mx += weight * xv;
                    my += weight * yv;
                    mxx += weight * xv * xv;
                    myy += weight * yv * yv;
                    mxy += weight * xv * yv;
                }
            }
            const double vx = mxx - mx * mx;
            const double vy = myy - my * my;
            const double cov = mxy - mx * my;
            const double num = (2.0 * mx * my + c1) * (2.0 * cov + c2);
            const double den = (mx * mx + my * my + c1) * (vx + vy + c2);
            total += num / den;
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

std::vector<double> luma_plane(const FeatureMap& f) {
    std::vector<double> y(static_cast<std::size_t>(f.height()) * f.width());
    for (int i = 0; i < f.height(); ++i) {
        for (int j = 0; j < f.width(); ++j) {
            y[static_cast<std::size_t>(i) * f.width() + j] =
                0.299 * f.at(0, i, j) + 0.587 * f.at(1, i, j) + 0.114 * f.at(2, i, j);
        }
    }
    return y;
}

} // namespace

double psnr(const FeatureMap& a, const FeatureMap& b, bool luma_only) {
    check_same_shape(a, b, "psnr");
    double mse = 0.0;
    if (luma_only) {
        if (a.channels() != 3) throw SizeError("psnr: luma mode needs 3 channels");
        const auto ya = luma_plane(a);
        const auto yb = luma_plane(b);
        for (std::size_t k = 0; k < ya.size(); ++k) {
            const double d = ya[k] - yb[k];
            mse += d * d;
        }
        mse /= static_cast<double>(ya.size());
    } else {
        for (std::size_t k = 0; k < a.size(); ++k) {
            const double d = static_cast<double>(a.data()[k]) - b.data()[k];
            mse += d * d;
        }
        mse /= static_cast<double>(a.size());
    }
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return -10.0 * std::log10(mse);
}

double ssim(const FeatureMap& a, const FeatureMap& b, bool luma_only) {
    check_same_shape(a, b, "ssim");
    if (luma_only) {
        if (a.channels() != 3) throw SizeError("ssim: luma mode needs 3 channels");
        return ssim_plane(luma_plane(a), luma_plane(b), a.height(), a.width());
    }
    double total = 0.0;
    std::vector<double> x(static_cast<std::size_t>(a.height()) * a.width());
    std::vector<double> y(x.size());
    for (int c = 0; c < a.channels(); ++c) {
        auto pa = a.channel(c);
        auto pb = b.channel(c);
        for (std::size_t k = 0; k < x.size(); ++k) {
            x[k] = pa[k];
            y[k] = pb[k];
        }
        total += ssim_plane(x, y, a.height(), a.width());
    }
    return total / a.channels();
}

} // namespace ttvsr
