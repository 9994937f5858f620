#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace arnum {

struct ImageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyImageError : ImageError {
    EmptyImageError() : ImageError("image contains no black pixel") {}
};
struct WrongFrameSizeError : ImageError {
    WrongFrameSizeError(int h, int w)
        : ImageError("expected a 32x32 frame, got " + std::to_string(h) + "x" +
                     std::to_string(w)) {}
};

/// Row-major grid of black/white pixels. Black is the foreground (ink).
class BinaryImage {
public:
    BinaryImage(int height, int width, bool fill_black = false)
        : height_(height), width_(width),
          pixels_(static_cast<size_t>(height) * width, fill_black ? 1 : 0) {
        if (height < 1 || width < 1)
            throw ImageError("BinaryImage dimensions must be positive");
    }

    int height() const { return height_; }
    int width() const { return width_; }

    bool black(int r, int c) const {
        return pixels_[static_cast<size_t>(r) * width_ + c] != 0;
    }
    void set(int r, int c, bool black) {
        pixels_[static_cast<size_t>(r) * width_ + c] = black ? 1 : 0;
    }

    int count_black() const {
        int n = 0;
        for (auto p : pixels_) n += p;
        return n;
    }

    bool operator==(const BinaryImage&) const = default;

private:
    int height_;
    int width_;
    std::vector<std::uint8_t> pixels_;
};

/// Grayscale input before thresholding, intensities in [0,255].
class GrayImage {
public:
    GrayImage(int height, int width, std::uint8_t fill = 0)
        : height_(height), width_(width),
          intensities_(static_cast<size_t>(height) * width, fill) {
        if (height < 1 || width < 1)
            throw ImageError("GrayImage dimensions must be positive");
    }

    int height() const { return height_; }
    int width() const { return width_; }

    std::uint8_t at(int r, int c) const {
        return intensities_[static_cast<size_t>(r) * width_ + c];
    }
    void set(int r, int c, std::uint8_t v) {
        intensities_[static_cast<size_t>(r) * width_ + c] = v;
    }

private:
    int height_;
    int width_;
    std::vector<std::uint8_t> intensities_;
};

/// Minimal axis-aligned rectangle of black pixels.
struct BoundingBox {
    int top = 0;
    int left = 0;
    int h = 1;
    int w = 1;

    bool contains(int r, int c) const {
        return r >= top && r < top + h && c >= left && c < left + w;
    }
    bool operator==(const BoundingBox&) const = default;
};

/// One of the 8 angular sectors of a bounding box. Index in [0,7], sector k
/// covers angles [45k, 45(k+1)) degrees, 0 degrees pointing toward +columns
/// and increasing toward +rows.
struct OctantId {
    int index = 0;
};

BinaryImage binarize(const GrayImage& img, int threshold);

/// Otsu's method: threshold maximizing between-class variance, ties broken
/// toward the smaller threshold. A constant image returns 128.
int otsu_threshold(const GrayImage& img);

/// Nearest-neighbor resampling; output pixel (r,c) copies input pixel
/// (floor(r*H/out_h), floor(c*W/out_w)).
BinaryImage scale_to(const BinaryImage& img, int out_h, int out_w);

BoundingBox minimal_bounding_box(const BinaryImage& img);

/// Angular sector of a pixel inside a box. The pixel's center is
/// (row+0.5, col+0.5); a center coinciding with the box center maps to
/// octant 0.
OctantId octant_of(int row, int col, const BoundingBox& box);

}  // namespace arnum
