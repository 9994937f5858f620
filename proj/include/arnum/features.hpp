#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <vector>

#include "arnum/image.hpp"

namespace arnum {

using FeatureVector = Eigen::VectorXd;

struct Point2d {
    double row = 0.0;
    double col = 0.0;
};

/// Octant triangle of a bounding box: the box center plus two consecutive
/// points of the perimeter cycle (edge midpoints and corners, ordered by
/// angle starting at the right-edge midpoint). The center-to-midpoint side
/// lies on a midline, the center-to-corner side on a diagonal.
struct OctantTriangle {
    Point2d center;
    Point2d perimeter_a;  // at angle 45k
    Point2d perimeter_b;  // at angle 45(k+1)
    bool a_is_midline = true;

    Point2d midline_end() const { return a_is_midline ? perimeter_a : perimeter_b; }
    Point2d diagonal_end() const { return a_is_midline ? perimeter_b : perimeter_a; }
    bool contains(double row, double col) const;
    Point2d centroid() const;
};

std::array<OctantTriangle, 8> octant_triangles(const BoundingBox& box);

// The six extractors. Dimensions: 72, 16, 16, 8, 128, 40, 36.
FeatureVector shadow72(const BinaryImage& img);
FeatureVector centroid16(const BinaryImage& img);
FeatureVector angular16(const BinaryImage& img);
FeatureVector span8(const BinaryImage& img);
FeatureVector span128(const BinaryImage& img);
FeatureVector dcg40(const BinaryImage& img);
FeatureVector run36(const BinaryImage& img);

struct FeatureSetSpec {
    std::string id;                        // "Set1".."Set7"
    std::vector<std::string> extractors;   // ordered component names
    int dimension = 0;                     // sum of component dimensions
};

/// The seven fixed feature-set compositions, Set1..Set7.
const std::vector<FeatureSetSpec>& feature_set_registry();

/// Lookup by id; throws std::invalid_argument for unknown ids.
const FeatureSetSpec& feature_set(const std::string& id);

int extractor_dimension(const std::string& name);

FeatureVector extract_one(const BinaryImage& img, const std::string& extractor);

/// Concatenation of the set's component extractor outputs, in order.
FeatureVector extract_set(const BinaryImage& img, const FeatureSetSpec& set);

}  // namespace arnum
