#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arnum/features.hpp"
#include "arnum/mlp.hpp"
#include "oracles.hpp"

using namespace arnum;

namespace {

BinaryImage all_black32() { return BinaryImage(32, 32, true); }

BinaryImage translated(const BinaryImage& img, int dy, int dx) {
    BinaryImage out(img.height(), img.width());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c)
            if (img.black(r, c)) out.set(r + dy, c + dx, true);
    return out;
}

void check_abs(const FeatureVector& a, const FeatureVector& b, double tol) {
    REQUIRE(a.size() == b.size());
    for (int i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) <= tol);
}

}  // namespace

TEST_CASE("shadow72") {
    SUBCASE("all-black image saturates every side") {
        const FeatureVector f = shadow72(all_black32());
        REQUIRE(f.size() == 72);
        for (int k = 0; k < 24; ++k) {
            CHECK(f[3 * k] == doctest::Approx(1.0));      // covered fraction
            CHECK(f[3 * k + 1] == doctest::Approx(0.0));  // first bin
            CHECK(f[3 * k + 2] == doctest::Approx(1.0));  // last bin
        }
    }
    SUBCASE("pixels confined to one octant leave the others at zero") {
        // Octant 0 of a 32x32 box: between the right midline and the
        // down-right diagonal. Keep strictly inside.
        BinaryImage img(32, 32);
        img.set(0, 0, true);   // box anchors (corners sit on diagonals,
        img.set(31, 31, true); // projecting only onto diagonal sides)
        img.set(18, 26, true);
        img.set(19, 28, true);
        const BoundingBox box = minimal_bounding_box(img);
        REQUIRE(box == BoundingBox{0, 0, 32, 32});
        const FeatureVector f = shadow72(img);
        // Octants 2..3 and 6..7 contain no pixel at all, not even anchors.
        for (int k : {2, 3, 6, 7}) {
            CHECK(f[9 * k] == 0.0);
            CHECK(f[9 * k + 3] == 0.0);
            CHECK(f[9 * k + 6] == 0.0);
        }
        // Octant 0's perimeter side sees the two interior pixels.
        CHECK(f[0] > 0.0);
    }
    SUBCASE("plus-sign glyph matches the per-pixel projection reference") {
        BinaryImage img(8, 8);
        for (int i = 1; i < 7; ++i) {
            img.set(3, i, true);
            img.set(4, i, true);
            img.set(i, 3, true);
            img.set(i, 4, true);
        }
        check_abs(shadow72(img), oracles::shadow_reference(img), 1e-9);
    }
    SUBCASE("random images match the reference") {
        SplitMix64 rng(101);
        for (int i = 0; i < 40; ++i) {
            const int h = 8 + static_cast<int>(rng.next_below(25));
            const int w = 8 + static_cast<int>(rng.next_below(25));
            const BinaryImage img = oracles::random_image(rng, h, w);
            check_abs(shadow72(img), oracles::shadow_reference(img), 1e-9);
        }
    }
}

TEST_CASE("centroid16") {
    SUBCASE("single off-center pixel cluster") {
        BinaryImage img(16, 16);
        img.set(0, 0, true);
        img.set(15, 15, true);
        img.set(4, 2, true);
        const BoundingBox box = minimal_bounding_box(img);
        REQUIRE(box == BoundingBox{0, 0, 16, 16});
        const int k = octant_of(4, 2, box).index;
        const FeatureVector f = centroid16(img);
        REQUIRE(f.size() == 16);
        // The octant holding only (4,2) reports that pixel's center.
        const int k00 = octant_of(0, 0, box).index;
        const int k15 = octant_of(15, 15, box).index;
        REQUIRE(k != k00);
        REQUIRE(k != k15);
        CHECK(f[2 * k] == doctest::Approx(4.5 / 16));
        CHECK(f[2 * k + 1] == doctest::Approx(2.5 / 16));
        // Empty octants report their triangle centroids.
        const auto tris = octant_triangles(box);
        for (int o = 0; o < 8; ++o) {
            if (o == k || o == k00 || o == k15) continue;
            const Point2d g = tris[o].centroid();
            CHECK(f[2 * o] == doctest::Approx((g.row - box.top) / box.h));
            CHECK(f[2 * o + 1] == doctest::Approx((g.col - box.left) / box.w));
        }
    }
    SUBCASE("all-black matches the exhaustive per-octant mean") {
        check_abs(centroid16(all_black32()),
                  oracles::centroid_reference(all_black32()), 1e-12);
    }
    SUBCASE("random images match the reference") {
        SplitMix64 rng(202);
        for (int i = 0; i < 40; ++i) {
            const int h = 8 + static_cast<int>(rng.next_below(25));
            const int w = 8 + static_cast<int>(rng.next_below(25));
            const BinaryImage img = oracles::random_image(rng, h, w);
            check_abs(centroid16(img), oracles::centroid_reference(img), 1e-12);
        }
    }
}

TEST_CASE("angular16") {
    SUBCASE("all-black image gives zero distances") {
        const FeatureVector f = angular16(all_black32());
        for (int i = 0; i < 16; ++i) CHECK(f[i] == 0.0);
    }
    SUBCASE("rays missing a far-corner pixel emit 1.0") {
        BinaryImage img(32, 32);
        img.set(0, 0, true);
        img.set(31, 31, true);
        const FeatureVector f = angular16(img);
        // Top-right and bottom-left corner rays at 22.5 degrees pass well
        // clear of both corner pixels.
        CHECK(f[4 + 1] == 1.0);
        CHECK(f[12 + 1] == 1.0);
        // The corners sitting on black pixels report distance 0.
        CHECK(f[0] == 0.0);
        CHECK(f[8] == 0.0);
    }
    SUBCASE("random images match the fine-step reference within 0.1") {
        SplitMix64 rng(303);
        for (int i = 0; i < 40; ++i) {
            const BinaryImage img = oracles::random_image(rng, 16, 16, 0.15);
            check_abs(angular16(img), oracles::angular_reference(img), 0.1);
        }
    }
}

TEST_CASE("span8") {
    SUBCASE("all-black gives zero margins") {
        const FeatureVector f = span8(all_black32());
        for (int i = 0; i < 8; ++i) CHECK(f[i] == 0.0);
    }
    SUBCASE("all-white gives full margins") {
        const FeatureVector f = span8(BinaryImage(32, 32));
        for (int i = 0; i < 8; ++i) CHECK(f[i] == 1.0);
    }
    SUBCASE("vertical line at column 8") {
        BinaryImage img(32, 32);
        for (int r = 0; r < 32; ++r) img.set(r, 8, true);
        const FeatureVector f = span8(img);
        for (int band = 0; band < 4; ++band) {
            CHECK(f[2 * band] == doctest::Approx(8.0 / 32));
            CHECK(f[2 * band + 1] == doctest::Approx(23.0 / 32));
        }
    }
    SUBCASE("wrong frame size throws") {
        CHECK_THROWS_AS(span8(BinaryImage(16, 16, true)), WrongFrameSizeError);
    }
}

TEST_CASE("span128") {
    SUBCASE("all-white and all-black extremes") {
        const FeatureVector white = span128(BinaryImage(32, 32));
        const FeatureVector black = span128(all_black32());
        for (int i = 0; i < 128; ++i) {
            CHECK(white[i] == 1.0);
            CHECK(black[i] == 0.0);
        }
    }
    SUBCASE("single black pixel at the origin") {
        BinaryImage img(32, 32);
        img.set(0, 0, true);
        const FeatureVector f = span128(img);
        CHECK(f[0] == 0.0);
        CHECK(f[1] == doctest::Approx(31.0 / 32));
        for (int r = 1; r < 32; ++r) {
            CHECK(f[2 * r] == 1.0);
            CHECK(f[2 * r + 1] == 1.0);
        }
        CHECK(f[64] == 0.0);
        CHECK(f[65] == doctest::Approx(31.0 / 32));
        for (int c = 1; c < 32; ++c) {
            CHECK(f[64 + 2 * c] == 1.0);
            CHECK(f[64 + 2 * c + 1] == 1.0);
        }
    }
    SUBCASE("random frames match the reference") {
        SplitMix64 rng(404);
        for (int i = 0; i < 40; ++i) {
            const BinaryImage img = oracles::random_image(rng, 32, 32, 0.1);
            check_abs(span128(img), oracles::span128_reference(img), 1e-12);
            check_abs(span8(img), oracles::span8_reference(img), 1e-12);
        }
    }
}

TEST_CASE("dcg40") {
    SUBCASE("single black pixel") {
        BinaryImage img(32, 32);
        img.set(10, 10, true);
        const FeatureVector f = dcg40(img);
        REQUIRE(f.size() == 40);
        // Root c.g. (10.5,10.5) splits at (11,11); the top-left region
        // holds the pixel and reports its center.
        CHECK(f[0] == doctest::Approx(10.5 / 32));
        CHECK(f[1] == doctest::Approx(10.5 / 32));
        // Top-right region [0,11)x[11,32) is empty: geometric center.
        CHECK(f[2] == doctest::Approx(5.5 / 32));
        CHECK(f[3] == doctest::Approx(21.5 / 32));
    }
    SUBCASE("all-black matches the recursive exhaustive-mean reference") {
        check_abs(dcg40(all_black32()), oracles::dcg_reference(all_black32()),
                  1e-12);
    }
    SUBCASE("random frames match the reference and stay in range") {
        SplitMix64 rng(505);
        for (int i = 0; i < 40; ++i) {
            const BinaryImage img = oracles::random_image(rng, 32, 32, 0.05);
            const FeatureVector f = dcg40(img);
            check_abs(f, oracles::dcg_reference(img), 1e-12);
            for (int j = 0; j < 40; ++j) {
                CHECK(f[j] >= 0.0);
                CHECK(f[j] <= 1.0);
            }
        }
    }
    SUBCASE("empty frame throws") {
        CHECK_THROWS_AS(dcg40(BinaryImage(32, 32)), EmptyImageError);
    }
}

TEST_CASE("run36") {
    SUBCASE("all-black row and column features are exactly 0.5") {
        const FeatureVector f = run36(all_black32());
        for (int reg = 0; reg < 9; ++reg) {
            CHECK(f[4 * reg] == doctest::Approx(0.5));
            CHECK(f[4 * reg + 1] == doctest::Approx(0.5));
        }
    }
    SUBCASE("single 5-pixel row segment") {
        BinaryImage img(32, 32);
        for (int c = 2; c <= 6; ++c) img.set(2, c, true);
        // Bounding box is 1x5; the row-wise feature of every region that
        // holds the run is 5/(h*w) = 1.0.
        const FeatureVector f = run36(img);
        CHECK(f[0] == doctest::Approx(1.0));
    }
    SUBCASE("random images match the run-enumeration reference") {
        SplitMix64 rng(606);
        for (int i = 0; i < 200; ++i) {
            const BinaryImage img = oracles::random_image(rng, 12, 12, 0.4);
            check_abs(run36(img), oracles::run_reference(img), 1e-12);
        }
    }
}

TEST_CASE("feature set registry") {
    const auto& reg = feature_set_registry();
    REQUIRE(reg.size() == 7);
    const int dims[7] = {88, 24, 40, 36, 128, 100, 124};
    for (int i = 0; i < 7; ++i) {
        CHECK(reg[i].id == "Set" + std::to_string(i + 1));
        CHECK(reg[i].dimension == dims[i]);
        int total = 0;
        for (const auto& name : reg[i].extractors)
            total += extractor_dimension(name);
        CHECK(total == reg[i].dimension);
    }
    CHECK_THROWS_AS(feature_set("Set8"), std::invalid_argument);
}

TEST_CASE("extract_set concatenates in declared order") {
    SplitMix64 rng(707);
    const BinaryImage img = oracles::random_image(rng, 32, 32, 0.2);
    CHECK(extract_set(img, feature_set("Set1")).size() == 88);
    CHECK(extract_set(img, feature_set("Set7")).size() == 124);
    const FeatureVector six = extract_set(img, feature_set("Set6"));
    REQUIRE(six.size() == 100);
    const FeatureVector runs = run36(img);
    for (int i = 0; i < 36; ++i) CHECK(six[i] == runs[i]);
}

TEST_CASE("range and determinism across all extractors") {
    const char* names[] = {"shadow72", "centroid16", "angular16", "span8",
                           "span128",  "dcg40",      "run36"};
    SplitMix64 rng(808);
    for (int i = 0; i < 25; ++i) {
        const BinaryImage img = oracles::random_image(rng, 32, 32, 0.2);
        for (const char* name : names) {
            const FeatureVector f = extract_one(img, name);
            CHECK(f.size() == extractor_dimension(name));
            for (int j = 0; j < f.size(); ++j) {
                CHECK(f[j] >= 0.0);
                CHECK(f[j] <= 1.0);
            }
            const FeatureVector again = extract_one(img, name);
            CHECK(f == again);  // bit-identical
        }
    }
}

TEST_CASE("box-relative extractors are translation invariant") {
    SplitMix64 rng(909);
    for (int i = 0; i < 10; ++i) {
        // Glyph confined to the upper-left 16x16 so a (+5,+7) shift stays
        // inside the frame.
        BinaryImage img(32, 32);
        for (int r = 0; r < 16; ++r)
            for (int c = 0; c < 16; ++c)
                if (rng.next_unit() < 0.3) img.set(r, c, true);
        if (img.count_black() == 0) img.set(4, 4, true);
        const BinaryImage moved = translated(img, 5, 7);
        for (const char* name : {"shadow72", "centroid16", "angular16", "run36"}) {
            const FeatureVector a = extract_one(img, name);
            const FeatureVector b = extract_one(moved, name);
            for (int j = 0; j < a.size(); ++j)
                CHECK(a[j] == doctest::Approx(b[j]).epsilon(1e-12));
        }
    }
}
