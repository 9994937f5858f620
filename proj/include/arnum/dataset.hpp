#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "arnum/image.hpp"

namespace arnum {

struct PbmParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientSamples : std::runtime_error {
    explicit InsufficientSamples(int label)
        : std::runtime_error("not enough samples of class " +
                             std::to_string(label)),
          label(label) {}
    int label;
};

enum class PbmVariant { P1, P4 };

/// PBM P1 (ASCII) or P4 (packed) decoder; 1-bits map to black.
BinaryImage parse_pbm(const std::string& bytes);

/// Canonical encoding: magic, single space, "w h", newline, raster.
std::string write_pbm(const BinaryImage& img, PbmVariant variant);

struct Sample {
    BinaryImage image;
    int label = 0;
    int source_id = 0;
};

struct Dataset {
    std::vector<Sample> samples;
};

struct SplitPair {
    Dataset train;
    Dataset test;
};

/// Loads `relative/path.pbm,label` lines; non-32x32 images are cropped to
/// their bounding box and rescaled to 32x32.
Dataset load_manifest(const std::string& manifest_text,
                      const std::string& base_path);

/// Perturbation knobs for synthetic generation; the defaults are what
/// generate_synthetic uses.
struct GlyphPerturbation {
    int max_translation = 2;   // integer shift drawn from [-max, max]^2
    bool vary_thickness = true;  // stroke thickness drawn from {1,2}
    double flip_prob = 0.02;   // independent per-pixel flip probability
};

/// Clean 32x32 render of the class template, stroke thickness 1.
BinaryImage glyph_template(int label);

/// Deterministic synthetic digit dataset: per_class instances of each of
/// the 10 glyph templates, perturbed from the seed. Ordered class 0
/// instances first, then class 1, ...
Dataset generate_synthetic(int per_class, std::uint64_t seed);
Dataset generate_synthetic(int per_class, std::uint64_t seed,
                           const GlyphPerturbation& pert);

/// Per class, a seeded shuffle assigns the first train_per_class samples
/// to train and the next test_per_class to test.
SplitPair split(const Dataset& ds, int train_per_class, int test_per_class,
                std::uint64_t seed);

}  // namespace arnum
