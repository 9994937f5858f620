#include "arnum/features.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arnum {

namespace {

double cross(const Point2d& o, const Point2d& a, double row, double col) {
    return (a.col - o.col) * (row - o.row) - (a.row - o.row) * (col - o.col);
}

constexpr double kGeomEps = 1e-9;

}  // namespace

bool OctantTriangle::contains(double row, double col) const {
    // Closed triangle: boundary points count as inside, so pixels on a
    // midline or diagonal belong to both adjacent octants.
    const double d1 = cross(center, perimeter_a, row, col);
    const double d2 = cross(perimeter_a, perimeter_b, row, col);
    const double d3 = cross(perimeter_b, center, row, col);
    const bool has_neg = d1 < -kGeomEps || d2 < -kGeomEps || d3 < -kGeomEps;
    const bool has_pos = d1 > kGeomEps || d2 > kGeomEps || d3 > kGeomEps;
    return !(has_neg && has_pos);
}

Point2d OctantTriangle::centroid() const {
    return {(center.row + perimeter_a.row + perimeter_b.row) / 3.0,
            (center.col + perimeter_a.col + perimeter_b.col) / 3.0};
}

std::array<OctantTriangle, 8> octant_triangles(const BoundingBox& box) {
    const double cy = box.top + box.h / 2.0;
    const double cx = box.left + box.w / 2.0;
    const double t = box.top, l = box.left;
    const double b = box.top + box.h, r = box.left + box.w;
    // Perimeter cycle in angular order (0 deg = +columns, increasing
    // toward +rows): right midpoint, BR, bottom midpoint, BL, left
    // midpoint, TL, top midpoint, TR.
    const std::array<Point2d, 8> ring = {{{cy, r}, {b, r}, {b, cx}, {b, l},
                                          {cy, l}, {t, l}, {t, cx}, {t, r}}};
    std::array<OctantTriangle, 8> tris;
    for (int k = 0; k < 8; ++k) {
        tris[k].center = {cy, cx};
        tris[k].perimeter_a = ring[k];
        tris[k].perimeter_b = ring[(k + 1) % 8];
        tris[k].a_is_midline = (k % 2 == 0);
    }
    return tris;
}

namespace {

struct Side {
    Point2d a;
    Point2d b;
    double len() const { return std::hypot(b.row - a.row, b.col - a.col); }
};

// Shadow of the unit pixel square centered at (row,col) on the side's line,
// as the parameter interval [lo,hi] along the side from its first endpoint.
void project_pixel(const Side& s, double row, double col, double& lo,
                   double& hi) {
    const double len = s.len();
    const double ur = (s.b.row - s.a.row) / len;
    const double uc = (s.b.col - s.a.col) / len;
    const double t = (row - s.a.row) * ur + (col - s.a.col) * uc;
    const double half = (std::abs(ur) + std::abs(uc)) / 2.0;
    lo = t - half;
    hi = t + half;
}

void emit_side_coverage(const std::vector<bool>& covered, double* out) {
    const int n = static_cast<int>(covered.size());
    int count = 0, first = -1, last = -1;
    for (int i = 0; i < n; ++i)
        if (covered[i]) {
            ++count;
            if (first < 0) first = i;
            last = i;
        }
    if (count == 0) {
        out[0] = out[1] = out[2] = 0.0;
    } else {
        out[0] = static_cast<double>(count) / n;
        out[1] = static_cast<double>(first) / n;
        out[2] = static_cast<double>(last + 1) / n;
    }
}

}  // namespace

FeatureVector shadow72(const BinaryImage& img) {
    const BoundingBox box = minimal_bounding_box(img);
    const auto tris = octant_triangles(box);

    FeatureVector out(72);
    int idx = 0;
    for (int k = 0; k < 8; ++k) {
        const OctantTriangle& tri = tris[k];
        const std::array<Side, 3> sides = {
            Side{tri.perimeter_a, tri.perimeter_b},
            Side{tri.center, tri.midline_end()},
            Side{tri.center, tri.diagonal_end()}};
        for (const Side& s : sides) {
            const int bins = static_cast<int>(std::ceil(s.len()));
            std::vector<bool> covered(bins, false);
            for (int r = box.top; r < box.top + box.h; ++r)
                for (int c = box.left; c < box.left + box.w; ++c) {
                    if (!img.black(r, c)) continue;
                    const double pr = r + 0.5, pc = c + 0.5;
                    if (!tri.contains(pr, pc)) continue;
                    double lo, hi;
                    project_pixel(s, pr, pc, lo, hi);
                    lo = std::max(lo, 0.0);
                    hi = std::min(hi, static_cast<double>(bins));
                    // Bin m covered iff the interval overlaps [m, m+1).
                    const int m0 = std::max(0, static_cast<int>(std::floor(lo)));
                    const int m1 =
                        std::min(bins - 1, static_cast<int>(std::ceil(hi)) - 1);
                    for (int m = m0; m <= m1; ++m)
                        if (hi > m && lo < m + 1) covered[m] = true;
                }
            emit_side_coverage(covered, out.data() + idx);
            idx += 3;
        }
    }
    return out;
}

FeatureVector centroid16(const BinaryImage& img) {
    const BoundingBox box = minimal_bounding_box(img);
    const auto tris = octant_triangles(box);

    std::array<double, 8> sum_r{}, sum_c{};
    std::array<int, 8> count{};
    for (int r = box.top; r < box.top + box.h; ++r)
        for (int c = box.left; c < box.left + box.w; ++c)
            if (img.black(r, c)) {
                const int k = octant_of(r, c, box).index;
                sum_r[k] += r + 0.5;
                sum_c[k] += c + 0.5;
                ++count[k];
            }

    FeatureVector out(16);
    for (int k = 0; k < 8; ++k) {
        double mr, mc;
        if (count[k] > 0) {
            mr = sum_r[k] / count[k];
            mc = sum_c[k] / count[k];
        } else {
            const Point2d g = tris[k].centroid();
            mr = g.row;
            mc = g.col;
        }
        out[2 * k] = (mr - box.top) / box.h;
        out[2 * k + 1] = (mc - box.left) / box.w;
    }
    return out;
}

namespace {

// Corner ray direction: `a` degrees off the horizontal box edge adjacent to
// the corner, rotating toward the interior.
Point2d corner_ray(int corner, double a_deg) {
    const double a = a_deg * M_PI / 180.0;
    const double s = std::sin(a), c = std::cos(a);
    switch (corner) {
        case 0: return {s, c};    // top-left
        case 1: return {s, -c};   // top-right
        case 2: return {-s, -c};  // bottom-right
        default: return {-s, c};  // bottom-left
    }
}

bool black_at_point(const BinaryImage& img, const BoundingBox& box, double row,
                    double col) {
    int r = static_cast<int>(std::floor(row));
    int c = static_cast<int>(std::floor(col));
    r = std::clamp(r, box.top, box.top + box.h - 1);
    c = std::clamp(c, box.left, box.left + box.w - 1);
    return img.black(r, c);
}

double march_ray(const BinaryImage& img, const BoundingBox& box, Point2d start,
                 Point2d dir, double step) {
    const double diag = std::hypot(box.h, box.w);
    for (double d = 0.0;; d += step) {
        const double row = start.row + d * dir.row;
        const double col = start.col + d * dir.col;
        if (row < box.top - kGeomEps || row > box.top + box.h + kGeomEps ||
            col < box.left - kGeomEps || col > box.left + box.w + kGeomEps)
            return 1.0;
        if (black_at_point(img, box, row, col)) return std::min(d / diag, 1.0);
    }
}

}  // namespace

FeatureVector angular16(const BinaryImage& img) {
    const BoundingBox box = minimal_bounding_box(img);
    const double t = box.top, l = box.left;
    const double b = box.top + box.h, r = box.left + box.w;
    const std::array<Point2d, 4> corners = {{{t, l}, {t, r}, {b, r}, {b, l}}};
    const std::array<double, 4> angles = {0.0, 22.5, 45.0, 67.5};

    FeatureVector out(16);
    int idx = 0;
    for (int corner = 0; corner < 4; ++corner)
        for (double a : angles)
            out[idx++] =
                march_ray(img, box, corners[corner], corner_ray(corner, a),
                          0.05);
    return out;
}

namespace {

void require_frame(const BinaryImage& img) {
    if (img.height() != 32 || img.width() != 32)
        throw WrongFrameSizeError(img.height(), img.width());
}

int left_margin(const BinaryImage& img, int r) {
    for (int c = 0; c < img.width(); ++c)
        if (img.black(r, c)) return c;
    return img.width();
}

int right_margin(const BinaryImage& img, int r) {
    for (int c = img.width() - 1; c >= 0; --c)
        if (img.black(r, c)) return img.width() - 1 - c;
    return img.width();
}

int top_margin(const BinaryImage& img, int c) {
    for (int r = 0; r < img.height(); ++r)
        if (img.black(r, c)) return r;
    return img.height();
}

int bottom_margin(const BinaryImage& img, int c) {
    for (int r = img.height() - 1; r >= 0; --r)
        if (img.black(r, c)) return img.height() - 1 - r;
    return img.height();
}

}  // namespace

FeatureVector span8(const BinaryImage& img) {
    require_frame(img);
    FeatureVector out(8);
    for (int band = 0; band < 4; ++band) {
        double left = 0.0, right = 0.0;
        for (int r = band * 8; r < (band + 1) * 8; ++r) {
            left += left_margin(img, r);
            right += right_margin(img, r);
        }
        out[2 * band] = left / 8.0 / 32.0;
        out[2 * band + 1] = right / 8.0 / 32.0;
    }
    return out;
}

FeatureVector span128(const BinaryImage& img) {
    require_frame(img);
    FeatureVector out(128);
    for (int r = 0; r < 32; ++r) {
        out[2 * r] = left_margin(img, r) / 32.0;
        out[2 * r + 1] = right_margin(img, r) / 32.0;
    }
    for (int c = 0; c < 32; ++c) {
        out[64 + 2 * c] = top_margin(img, c) / 32.0;
        out[64 + 2 * c + 1] = bottom_margin(img, c) / 32.0;
    }
    return out;
}

namespace {

struct Rect {
    int top, left, h, w;
};

// Centre of gravity of the black pixels inside the rectangle; a rectangle
// with no black pixel (or no area) reports its geometric center.
Point2d region_cg(const BinaryImage& img, const Rect& reg) {
    double sr = 0.0, sc = 0.0;
    long long n = 0;
    for (int r = reg.top; r < reg.top + reg.h; ++r)
        for (int c = reg.left; c < reg.left + reg.w; ++c)
            if (img.black(r, c)) {
                sr += r + 0.5;
                sc += c + 0.5;
                ++n;
            }
    if (n == 0) return {reg.top + reg.h / 2.0, reg.left + reg.w / 2.0};
    return {sr / n, sc / n};
}

std::array<Rect, 4> split_rect(const Rect& reg, const Point2d& cg) {
    int sr, sc;
    if (reg.h >= 2)
        sr = std::clamp<int>(std::lround(cg.row), reg.top + 1,
                             reg.top + reg.h - 1);
    else
        sr = reg.top + reg.h;
    if (reg.w >= 2)
        sc = std::clamp<int>(std::lround(cg.col), reg.left + 1,
                             reg.left + reg.w - 1);
    else
        sc = reg.left + reg.w;
    const int top_h = sr - reg.top, bot_h = reg.top + reg.h - sr;
    const int left_w = sc - reg.left, right_w = reg.left + reg.w - sc;
    return {{{reg.top, reg.left, top_h, left_w},
             {reg.top, sc, top_h, right_w},
             {sr, reg.left, bot_h, left_w},
             {sr, sc, bot_h, right_w}}};
}

}  // namespace

FeatureVector dcg40(const BinaryImage& img) {
    require_frame(img);
    if (img.count_black() == 0) throw EmptyImageError();

    const Rect frame{0, 0, 32, 32};
    const Point2d root = region_cg(img, frame);
    const auto level1 = split_rect(frame, root);

    FeatureVector out(40);
    int idx = 0;
    std::array<Point2d, 4> cg1;
    for (int i = 0; i < 4; ++i) {
        cg1[i] = region_cg(img, level1[i]);
        out[idx++] = cg1[i].row / 32.0;
        out[idx++] = cg1[i].col / 32.0;
    }
    for (int i = 0; i < 4; ++i) {
        const auto level2 = split_rect(level1[i], cg1[i]);
        for (const Rect& child : level2) {
            const Point2d g = region_cg(img, child);
            out[idx++] = g.row / 32.0;
            out[idx++] = g.col / 32.0;
        }
    }
    return out;
}

namespace {

bool in_image(const BinaryImage& img, int r, int c) {
    return r >= 0 && r < img.height() && c >= 0 && c < img.width();
}

// Longest-run sum along direction (dr,dc) over the region: per scan line,
// the longest maximal black run touching the region, runs extended along
// the full image line.
long long longest_run_sum(const BinaryImage& img, const Rect& reg, int dr,
                          int dc) {
    // Line start cells: region cells whose predecessor along (dr,dc) lies
    // outside the region.
    std::vector<std::pair<int, int>> starts;
    for (int r = reg.top; r < reg.top + reg.h; ++r)
        for (int c = reg.left; c < reg.left + reg.w; ++c) {
            const int pr = r - dr, pc = c - dc;
            const bool pred_inside = pr >= reg.top && pr < reg.top + reg.h &&
                                     pc >= reg.left && pc < reg.left + reg.w;
            if (!pred_inside) starts.emplace_back(r, c);
        }

    long long sum = 0;
    for (auto [sr, sc] : starts) {
        long long best = 0;
        int r = sr, c = sc;
        while (r >= reg.top && r < reg.top + reg.h && c >= reg.left &&
               c < reg.left + reg.w) {
            if (img.black(r, c)) {
                int br = r, bc = c;
                while (in_image(img, br - dr, bc - dc) &&
                       img.black(br - dr, bc - dc)) {
                    br -= dr;
                    bc -= dc;
                }
                int er = r, ec = c;
                while (in_image(img, er + dr, ec + dc) &&
                       img.black(er + dr, ec + dc)) {
                    er += dr;
                    ec += dc;
                }
                const long long len = std::max(std::abs(er - br), std::abs(ec - bc)) + 1;
                best = std::max(best, len);
                r = er + dr;  // skip past the run
                c = ec + dc;
            } else {
                r += dr;
                c += dc;
            }
        }
        sum += best;
    }
    return sum;
}

}  // namespace

FeatureVector run36(const BinaryImage& img) {
    const BoundingBox box = minimal_bounding_box(img);
    const int h = box.h, w = box.w;
    const int reg_h = (h + 1) / 2, reg_w = (w + 1) / 2;

    FeatureVector out(36);
    int idx = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            const int top = box.top + i * h / 4;
            const int left = box.left + j * w / 4;
            const Rect reg{top, left, std::min(reg_h, box.top + h - top),
                           std::min(reg_w, box.left + w - left)};
            const double norm = static_cast<double>(h) * w;
            out[idx++] = std::min(longest_run_sum(img, reg, 0, 1) / norm, 1.0);
            out[idx++] = std::min(longest_run_sum(img, reg, 1, 0) / norm, 1.0);
            out[idx++] = std::min(longest_run_sum(img, reg, 1, 1) / norm, 1.0);
            out[idx++] = std::min(longest_run_sum(img, reg, 1, -1) / norm, 1.0);
        }
    return out;
}

const std::vector<FeatureSetSpec>& feature_set_registry() {
    static const std::vector<FeatureSetSpec> registry = {
        {"Set1", {"shadow72", "centroid16"}, 88},
        {"Set2", {"angular16", "span8"}, 24},
        {"Set3", {"dcg40"}, 40},
        {"Set4", {"run36"}, 36},
        {"Set5", {"span128"}, 128},
        {"Set6", {"run36", "dcg40", "angular16", "span8"}, 100},
        {"Set7", {"shadow72", "centroid16", "run36"}, 124},
    };
    return registry;
}

const FeatureSetSpec& feature_set(const std::string& id) {
    for (const auto& s : feature_set_registry())
        if (s.id == id) return s;
    throw std::invalid_argument("unknown feature set: " + id);
}

int extractor_dimension(const std::string& name) {
    if (name == "shadow72") return 72;
    if (name == "centroid16") return 16;
    if (name == "angular16") return 16;
    if (name == "span8") return 8;
    if (name == "span128") return 128;
    if (name == "dcg40") return 40;
    if (name == "run36") return 36;
    throw std::invalid_argument("unknown extractor: " + name);
}

FeatureVector extract_one(const BinaryImage& img, const std::string& name) {
    if (name == "shadow72") return shadow72(img);
    if (name == "centroid16") return centroid16(img);
    if (name == "angular16") return angular16(img);
    if (name == "span8") return span8(img);
    if (name == "span128") return span128(img);
    if (name == "dcg40") return dcg40(img);
    if (name == "run36") return run36(img);
    throw std::invalid_argument("unknown extractor: " + name);
}

FeatureVector extract_set(const BinaryImage& img, const FeatureSetSpec& set) {
    FeatureVector out(set.dimension);
    int offset = 0;
    for (const auto& name : set.extractors) {
        const FeatureVector part = extract_one(img, name);
        out.segment(offset, part.size()) = part;
        offset += static_cast<int>(part.size());
    }
    return out;
}

}  // namespace arnum
