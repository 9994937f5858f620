#include "arnum/image.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace arnum {

BinaryImage binarize(const GrayImage& img, int threshold) {
    BinaryImage out(img.height(), img.width());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            out.set(r, c, img.at(r, c) < threshold);
    return out;
}

int otsu_threshold(const GrayImage& img) {
    std::array<long long, 256> hist{};
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) ++hist[img.at(r, c)];

    const long long total = static_cast<long long>(img.height()) * img.width();
    long long weighted_sum = 0;
    for (int v = 0; v < 256; ++v) weighted_sum += static_cast<long long>(v) * hist[v];

    // Threshold t puts intensities < t in the black class.
    int best_t = -1;
    double best_var = -1.0;
    long long count_lo = 0, sum_lo = 0;
    for (int t = 1; t <= 255; ++t) {
        count_lo += hist[t - 1];
        sum_lo += static_cast<long long>(t - 1) * hist[t - 1];
        const long long count_hi = total - count_lo;
        if (count_lo == 0 || count_hi == 0) continue;
        const double mean_lo = static_cast<double>(sum_lo) / count_lo;
        const double mean_hi =
            static_cast<double>(weighted_sum - sum_lo) / count_hi;
        const double d = mean_lo - mean_hi;
        const double var =
            static_cast<double>(count_lo) * count_hi * d * d;
        if (var > best_var) {
            best_var = var;
            best_t = t;
        }
    }
    return best_t < 0 ? 128 : best_t;  // constant image
}

BinaryImage scale_to(const BinaryImage& img, int out_h, int out_w) {
    if (out_h < 1 || out_w < 1)
        throw ImageError("scale_to: output dimensions must be positive");
    BinaryImage out(out_h, out_w);
    for (int r = 0; r < out_h; ++r) {
        const int sr = static_cast<int>(
            static_cast<long long>(r) * img.height() / out_h);
        for (int c = 0; c < out_w; ++c) {
            const int sc = static_cast<int>(
                static_cast<long long>(c) * img.width() / out_w);
            out.set(r, c, img.black(sr, sc));
        }
    }
    return out;
}

BoundingBox minimal_bounding_box(const BinaryImage& img) {
    int rmin = std::numeric_limits<int>::max(), rmax = -1;
    int cmin = std::numeric_limits<int>::max(), cmax = -1;
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            if (img.black(r, c)) {
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
                cmin = std::min(cmin, c);
                cmax = std::max(cmax, c);
            }
    if (rmax < 0) throw EmptyImageError();
    return {rmin, cmin, rmax - rmin + 1, cmax - cmin + 1};
}

OctantId octant_of(int row, int col, const BoundingBox& box) {
    const double cy = box.top + box.h / 2.0;
    const double cx = box.left + box.w / 2.0;
    const double dr = (row + 0.5) - cy;
    const double dc = (col + 0.5) - cx;
    if (dr == 0.0 && dc == 0.0) return {0};
    double theta = std::atan2(dr, dc) * 180.0 / M_PI;
    if (theta < 0) theta += 360.0;
    int k = static_cast<int>(theta / 45.0);
    if (k > 7) k = 7;  // guard against theta rounding to 360
    return {k};
}

}  // namespace arnum
