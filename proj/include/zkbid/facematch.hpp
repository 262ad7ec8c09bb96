#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "zkbid/bytes.hpp"

namespace zkbid {

inline constexpr size_t kFeatureDim = 128;
inline constexpr int64_t kCoordScale = 1ll << 16;   // fixed-point scale per coordinate
inline constexpr int64_t kCoordBound = 1ll << 17;   // open bound on |coordinate|
inline constexpr int64_t kSimScale = 1ll << 32;     // scale of similarity values
inline constexpr int64_t kNormTolerance = 1ll << 20;

using FeatureVector = std::array<int64_t, kFeatureDim>;

struct ThresholdConfig {
    double tau = 0.90;
    int64_t tau_fixed = 0;
    int64_t eps_norm = kNormTolerance;

    static ThresholdConfig from_tau(double tau);
};

// L2-normalizes then rounds each coordinate to kCoordScale units.
// Throws ZeroNormVector when the input norm is too small to normalize.
FeatureVector normalize_features(const std::array<double, kFeatureDim>& raw);

// exact integer dot product; ~2^32 for equal unit vectors
int64_t cosine_similarity_fixed(const FeatureVector& a, const FeatureVector& b);

// |sum of squares - kSimScale|
int64_t feature_norm_error(const FeatureVector& v);

bool feature_vector_valid(const FeatureVector& v, int64_t eps_norm = kNormTolerance);

// decision rule: similarity >= tau_fixed (boundary inclusive)
bool face_match(const FeatureVector& a, const FeatureVector& b, const ThresholdConfig& cfg);

std::string feature_vector_to_json(const FeatureVector& v);
std::optional<FeatureVector> feature_vector_from_json(const std::string& text);
void save_feature_vector(const std::filesystem::path& file, const FeatureVector& v);
FeatureVector load_feature_vector(const std::filesystem::path& file);

// ---------------------------------------------------------------- dataset

struct DatasetParams {
    size_t n_subjects = 500;
    size_t per_subject = 2;
    double intra_noise = 0.05;  // expected norm of the perturbation vector
};

struct PairRef {
    uint32_t subject_a, sample_a;
    uint32_t subject_b, sample_b;
    bool same;
};

struct Dataset {
    DatasetParams params;
    uint64_t seed = 0;
    std::vector<std::vector<FeatureVector>> subjects;
    std::vector<PairRef> pairs;

    const FeatureVector& first(const PairRef& p) const { return subjects[p.subject_a][p.sample_a]; }
    const FeatureVector& second(const PairRef& p) const { return subjects[p.subject_b][p.sample_b]; }
};

Dataset generate_synthetic_dataset(const DatasetParams& params, uint64_t seed);

// one similarity per dataset pair; OpenMP across pairs
std::vector<int64_t> pair_similarities(const Dataset& ds);
std::vector<int64_t> pair_similarities_reference(const Dataset& ds);

struct SweepPoint {
    double threshold;
    double accuracy;
};

// classification accuracy of the decision rule at each threshold
std::vector<SweepPoint> accuracy_sweep(const Dataset& ds, const std::vector<double>& thresholds);

std::string sweep_to_csv(const std::vector<SweepPoint>& sweep);

}  // namespace zkbid
