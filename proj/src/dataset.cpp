#include "arnum/dataset.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "arnum/mlp.hpp"  // SplitMix64

namespace arnum {

namespace {

// Tokenizer for PBM headers: skips whitespace and '#' comments.
struct PbmReader {
    const std::string& bytes;
    size_t pos = 0;

    void skip_space_and_comments() {
        while (pos < bytes.size()) {
            const char ch = bytes[pos];
            if (ch == '#') {
                while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
            } else if (std::isspace(static_cast<unsigned char>(ch))) {
                ++pos;
            } else {
                break;
            }
        }
    }

    int read_int() {
        skip_space_and_comments();
        if (pos >= bytes.size() ||
            !std::isdigit(static_cast<unsigned char>(bytes[pos])))
            throw PbmParseError("expected integer in PBM header");
        long v = 0;
        while (pos < bytes.size() &&
               std::isdigit(static_cast<unsigned char>(bytes[pos]))) {
            v = v * 10 + (bytes[pos] - '0');
            if (v > 1 << 20) throw PbmParseError("PBM dimension too large");
            ++pos;
        }
        return static_cast<int>(v);
    }
};

}  // namespace

BinaryImage parse_pbm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' ||
        (bytes[1] != '1' && bytes[1] != '4'))
        throw PbmParseError("bad PBM magic");
    const bool packed = bytes[1] == '4';

    PbmReader rd{bytes, 2};
    const int w = rd.read_int();
    const int h = rd.read_int();
    if (w < 1 || h < 1) throw PbmParseError("bad PBM dimensions");

    BinaryImage img(h, w);
    if (!packed) {
        int r = 0, c = 0;
        while (r < h) {
            rd.skip_space_and_comments();
            if (rd.pos >= bytes.size())
                throw PbmParseError("truncated P1 raster");
            const char ch = bytes[rd.pos++];
            if (ch != '0' && ch != '1')
                throw PbmParseError("bad P1 raster character");
            img.set(r, c, ch == '1');
            if (++c == w) {
                c = 0;
                ++r;
            }
        }
    } else {
        // Raster starts after exactly one whitespace byte past the height.
        if (rd.pos >= bytes.size() ||
            !std::isspace(static_cast<unsigned char>(bytes[rd.pos])))
            throw PbmParseError("missing whitespace before P4 raster");
        ++rd.pos;
        const size_t row_bytes = (w + 7) / 8;
        if (bytes.size() - rd.pos < row_bytes * h)
            throw PbmParseError("truncated P4 raster");
        for (int r = 0; r < h; ++r) {
            const size_t row_off = rd.pos + r * row_bytes;
            for (int c = 0; c < w; ++c) {
                const unsigned char byte = bytes[row_off + c / 8];
                img.set(r, c, (byte >> (7 - c % 8)) & 1);
            }
        }
    }
    return img;
}

std::string write_pbm(const BinaryImage& img, PbmVariant variant) {
    std::ostringstream os;
    os << (variant == PbmVariant::P1 ? "P1" : "P4") << '\n' << img.width()
       << ' ' << img.height() << '\n';
    if (variant == PbmVariant::P1) {
        for (int r = 0; r < img.height(); ++r) {
            for (int c = 0; c < img.width(); ++c)
                os << (img.black(r, c) ? '1' : '0');
            os << '\n';
        }
    } else {
        const int row_bytes = (img.width() + 7) / 8;
        for (int r = 0; r < img.height(); ++r) {
            for (int i = 0; i < row_bytes; ++i) {
                unsigned char byte = 0;
                for (int b = 0; b < 8; ++b) {
                    const int c = i * 8 + b;
                    if (c < img.width() && img.black(r, c))
                        byte |= 1u << (7 - b);
                }
                os << static_cast<char>(byte);
            }
        }
    }
    return os.str();
}

namespace {

BinaryImage normalize_frame(const BinaryImage& img) {
    if (img.height() == 32 && img.width() == 32) return img;
    const BoundingBox box = minimal_bounding_box(img);
    BinaryImage cropped(box.h, box.w);
    for (int r = 0; r < box.h; ++r)
        for (int c = 0; c < box.w; ++c)
            cropped.set(r, c, img.black(box.top + r, box.left + c));
    return scale_to(cropped, 32, 32);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ManifestError("cannot open image file: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

}  // namespace

Dataset load_manifest(const std::string& manifest_text,
                      const std::string& base_path) {
    Dataset ds;
    std::istringstream is(manifest_text);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const size_t comma = line.rfind(',');
        if (comma == std::string::npos || comma == 0)
            throw ManifestError("manifest line " + std::to_string(line_no) +
                                ": expected `path,label`");
        const std::string path = line.substr(0, comma);
        const std::string label_str = line.substr(comma + 1);
        int label;
        try {
            size_t used = 0;
            label = std::stoi(label_str, &used);
            if (used != label_str.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ManifestError("manifest line " + std::to_string(line_no) +
                                ": bad label `" + label_str + "`");
        }
        if (label < 0 || label > 9)
            throw ManifestError("manifest line " + std::to_string(line_no) +
                                ": label " + std::to_string(label) +
                                " out of range [0,9]");
        const std::string full =
            base_path.empty() ? path : base_path + "/" + path;
        BinaryImage img(1, 1);
        try {
            img = normalize_frame(parse_pbm(read_file(full)));
        } catch (const ManifestError&) {
            throw;
        } catch (const std::exception& e) {
            throw ManifestError(full + ": " + e.what());
        }
        ds.samples.push_back({img, label, line_no});
    }
    if (ds.samples.empty()) throw ManifestError("manifest contains no samples");
    return ds;
}

namespace {

using Polyline = std::vector<std::pair<int, int>>;  // (row, col) points

// Stroke templates loosely shaped after the Arabic-Indic digits; the only
// hard requirement is that clean renders are pairwise distinct and
// nearest-template separable.
const std::array<std::vector<Polyline>, 10>& glyph_strokes() {
    static const std::array<std::vector<Polyline>, 10> strokes = {{
        // 0: filled dot at the center
        {{{13, 13}, {13, 18}}, {{14, 13}, {14, 18}}, {{15, 13}, {15, 18}},
         {{16, 13}, {16, 18}}, {{17, 13}, {17, 18}}, {{18, 13}, {18, 18}}},
        // 1: vertical stroke
        {{{4, 16}, {27, 16}}},
        // 2: top bar with a long descender to the lower left
        {{{5, 9}, {5, 22}}, {{5, 22}, {27, 13}}},
        // 3: bumpy top with a descender
        {{{8, 7}, {4, 12}}, {{4, 12}, {8, 16}}, {{8, 16}, {4, 21}},
         {{4, 21}, {8, 25}}, {{8, 25}, {27, 14}}},
        // 4: zigzag open to the left
        {{{5, 22}, {5, 10}}, {{5, 10}, {15, 18}}, {{15, 18}, {26, 8}},
         {{26, 8}, {26, 22}}},
        // 5: large ring
        {{{6, 12}, {6, 19}}, {{6, 19}, {12, 25}}, {{12, 25}, {19, 25}},
         {{19, 25}, {25, 19}}, {{25, 19}, {25, 12}}, {{25, 12}, {19, 6}},
         {{19, 6}, {12, 6}}, {{12, 6}, {6, 12}}},
        // 6: full-width top bar with a straight vertical descender
        {{{5, 6}, {5, 25}}, {{5, 18}, {27, 18}}},
        // 7: V shape
        {{{4, 8}, {26, 16}}, {{26, 16}, {4, 24}}},
        // 8: inverted V
        {{{26, 8}, {4, 16}}, {{4, 16}, {26, 24}}},
        // 9: square head with a tail
        {{{4, 11}, {4, 20}}, {{4, 20}, {12, 20}}, {{12, 20}, {12, 11}},
         {{12, 11}, {4, 11}}, {{12, 20}, {27, 20}}},
    }};
    return strokes;
}

void plot(BinaryImage& img, int r, int c, int thickness) {
    for (int dr = 0; dr < thickness; ++dr)
        for (int dc = 0; dc < thickness; ++dc) {
            const int rr = r + dr, cc = c + dc;
            if (rr >= 0 && rr < img.height() && cc >= 0 && cc < img.width())
                img.set(rr, cc, true);
        }
}

void draw_segment(BinaryImage& img, int r0, int c0, int r1, int c1,
                  int thickness) {
    const int steps = std::max(std::abs(r1 - r0), std::abs(c1 - c0));
    for (int k = 0; k <= steps; ++k) {
        const double t = steps == 0 ? 0.0 : static_cast<double>(k) / steps;
        plot(img, static_cast<int>(std::lround(r0 + t * (r1 - r0))),
             static_cast<int>(std::lround(c0 + t * (c1 - c0))), thickness);
    }
}

BinaryImage render_glyph(int label, int dy, int dx, int thickness) {
    BinaryImage img(32, 32);
    for (const Polyline& poly : glyph_strokes()[label])
        for (size_t i = 0; i + 1 < poly.size(); ++i)
            draw_segment(img, poly[i].first + dy, poly[i].second + dx,
                         poly[i + 1].first + dy, poly[i + 1].second + dx,
                         thickness);
    return img;
}

}  // namespace

BinaryImage glyph_template(int label) { return render_glyph(label, 0, 0, 1); }

Dataset generate_synthetic(int per_class, std::uint64_t seed) {
    return generate_synthetic(per_class, seed, GlyphPerturbation{});
}

Dataset generate_synthetic(int per_class, std::uint64_t seed,
                           const GlyphPerturbation& pert) {
    if (per_class < 1) throw std::invalid_argument("per_class must be >= 1");
    Dataset ds;
    SplitMix64 master(seed);
    int source_id = 0;
    for (int label = 0; label < 10; ++label)
        for (int i = 0; i < per_class; ++i) {
            SplitMix64 rng(master.next());
            const int span = 2 * pert.max_translation + 1;
            const int dy = pert.max_translation == 0
                               ? 0
                               : static_cast<int>(rng.next_below(span)) -
                                     pert.max_translation;
            const int dx = pert.max_translation == 0
                               ? 0
                               : static_cast<int>(rng.next_below(span)) -
                                     pert.max_translation;
            const int thickness =
                pert.vary_thickness ? 1 + static_cast<int>(rng.next_below(2)) : 1;
            BinaryImage img = render_glyph(label, dy, dx, thickness);
            for (int r = 0; r < 32; ++r)
                for (int c = 0; c < 32; ++c)
                    if (rng.next_unit() < pert.flip_prob)
                        img.set(r, c, !img.black(r, c));
            ds.samples.push_back({img, label, source_id++});
        }
    return ds;
}

SplitPair split(const Dataset& ds, int train_per_class, int test_per_class,
                std::uint64_t seed) {
    std::array<std::vector<size_t>, 10> by_class;
    for (size_t i = 0; i < ds.samples.size(); ++i)
        by_class[ds.samples[i].label].push_back(i);

    SplitPair pair;
    SplitMix64 rng(seed);
    for (int label = 0; label < 10; ++label) {
        auto& idx = by_class[label];
        if (static_cast<int>(idx.size()) < train_per_class + test_per_class)
            throw InsufficientSamples(label);
        for (size_t i = idx.size(); i > 1; --i)
            std::swap(idx[i - 1], idx[rng.next_below(i)]);
        for (int i = 0; i < train_per_class; ++i)
            pair.train.samples.push_back(ds.samples[idx[i]]);
        for (int i = 0; i < test_per_class; ++i)
            pair.test.samples.push_back(ds.samples[idx[train_per_class + i]]);
    }
    return pair;
}

}  // namespace arnum
