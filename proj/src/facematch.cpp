#include "zkbid/facematch.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>

#include "zkbid/errors.hpp"
#include "zkbid/rng.hpp"

namespace zkbid {

ThresholdConfig ThresholdConfig::from_tau(double tau) {
    if (!(tau > 0.0) || tau > 1.0) throw ConfigError("threshold must lie in (0, 1]");
    ThresholdConfig cfg;
    cfg.tau = tau;
    cfg.tau_fixed = llround(tau * double(kSimScale));
    return cfg;
}

FeatureVector normalize_features(const std::array<double, kFeatureDim>& raw) {
    double norm2 = 0;
    for (double x : raw) norm2 += x * x;
    double norm = std::sqrt(norm2);
    if (!(norm > 1e-9)) throw ZeroNormVector("cannot normalize a near-zero feature vector");
    FeatureVector out;
    for (size_t i = 0; i < kFeatureDim; ++i)
        out[i] = llround(raw[i] / norm * double(kCoordScale));
    return out;
}

int64_t cosine_similarity_fixed(const FeatureVector& a, const FeatureVector& b) {
    int64_t acc = 0;
    for (size_t i = 0; i < kFeatureDim; ++i) acc += a[i] * b[i];
    return acc;
}

int64_t feature_norm_error(const FeatureVector& v) {
    int64_t n = cosine_similarity_fixed(v, v);
    return n >= kSimScale ? n - kSimScale : kSimScale - n;
}

bool feature_vector_valid(const FeatureVector& v, int64_t eps_norm) {
    for (int64_t c : v)
        if (c <= -kCoordBound || c >= kCoordBound) return false;
    return feature_norm_error(v) <= eps_norm;
}

bool face_match(const FeatureVector& a, const FeatureVector& b, const ThresholdConfig& cfg) {
    return cosine_similarity_fixed(a, b) >= cfg.tau_fixed;
}

std::string feature_vector_to_json(const FeatureVector& v) {
    nlohmann::json j;
    j["version"] = 1;
    j["encoding"] = "fixed";
    j["coords"] = v;
    return j.dump();
}

std::optional<FeatureVector> feature_vector_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.contains("coords") || !j["coords"].is_array()) return std::nullopt;
    if (j["coords"].size() != kFeatureDim) return std::nullopt;
    std::string enc = j.value("encoding", "fixed");
    if (enc == "fixed") {
        FeatureVector v;
        for (size_t i = 0; i < kFeatureDim; ++i) {
            if (!j["coords"][i].is_number_integer()) return std::nullopt;
            v[i] = j["coords"][i].get<int64_t>();
        }
        return v;
    }
    if (enc == "float") {
        std::array<double, kFeatureDim> raw;
        for (size_t i = 0; i < kFeatureDim; ++i) {
            if (!j["coords"][i].is_number()) return std::nullopt;
            raw[i] = j["coords"][i].get<double>();
        }
        try {
            return normalize_features(raw);
        } catch (const ZeroNormVector&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

void save_feature_vector(const std::filesystem::path& file, const FeatureVector& v) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << feature_vector_to_json(v) << "\n";
}

FeatureVector load_feature_vector(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot read " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    auto v = feature_vector_from_json(text);
    if (!v) throw IoError("malformed feature vector file " + file.string());
    return *v;
}

// ---------------------------------------------------------------- dataset

namespace {

std::array<double, kFeatureDim> random_unit(Rng& rng) {
    std::array<double, kFeatureDim> v;
    double n2 = 0;
    do {
        n2 = 0;
        for (auto& x : v) {
            x = rng.gaussian();
            n2 += x * x;
        }
    } while (n2 < 1e-12);
    double inv = 1.0 / std::sqrt(n2);
    for (auto& x : v) x *= inv;
    return v;
}

}  // namespace

Dataset generate_synthetic_dataset(const DatasetParams& params, uint64_t seed) {
    if (params.n_subjects == 0 || params.per_subject == 0)
        throw ConfigError("dataset needs at least one subject and one sample");
    Dataset ds;
    ds.params = params;
    ds.seed = seed;
    Rng rng(seed);

    // One shared mean face plus a per-subject offset of varying magnitude:
    // distinct subjects stay well below unit similarity while sharing enough
    // structure that cross-pair similarities spread over a wide band.
    auto mean_face = random_unit(rng);
    // per-coordinate sigma so the whole perturbation has expected norm
    // params.intra_noise
    double coord_sigma = params.intra_noise / std::sqrt(double(kFeatureDim));

    ds.subjects.resize(params.n_subjects);
    for (size_t s = 0; s < params.n_subjects; ++s) {
        auto offset = random_unit(rng);
        double rho = 0.5 + rng.uniform01();
        std::array<double, kFeatureDim> centroid;
        for (size_t i = 0; i < kFeatureDim; ++i)
            centroid[i] = mean_face[i] + rho * offset[i];

        ds.subjects[s].reserve(params.per_subject);
        for (size_t k = 0; k < params.per_subject; ++k) {
            std::array<double, kFeatureDim> sample = centroid;
            for (size_t i = 0; i < kFeatureDim; ++i) sample[i] += coord_sigma * rng.gaussian();
            ds.subjects[s].push_back(normalize_features(sample));
        }
    }

    // all same-subject pairs, then an equal number of cross-subject pairs
    for (size_t s = 0; s < params.n_subjects; ++s)
        for (size_t i = 0; i < params.per_subject; ++i)
            for (size_t j = i + 1; j < params.per_subject; ++j)
                ds.pairs.push_back({uint32_t(s), uint32_t(i), uint32_t(s), uint32_t(j), true});

    size_t n_same = ds.pairs.size();
    size_t guard = 0;
    while (ds.pairs.size() < 2 * n_same && guard < 100 * n_same) {
        ++guard;
        uint32_t sa = uint32_t(rng.below(params.n_subjects));
        uint32_t sb = uint32_t(rng.below(params.n_subjects));
        if (sa == sb) continue;
        uint32_t ia = uint32_t(rng.below(params.per_subject));
        uint32_t ib = uint32_t(rng.below(params.per_subject));
        ds.pairs.push_back({sa, ia, sb, ib, false});
    }
    return ds;
}

std::vector<int64_t> pair_similarities_reference(const Dataset& ds) {
    std::vector<int64_t> out(ds.pairs.size());
    for (size_t i = 0; i < ds.pairs.size(); ++i)
        out[i] = cosine_similarity_fixed(ds.first(ds.pairs[i]), ds.second(ds.pairs[i]));
    return out;
}

std::vector<int64_t> pair_similarities(const Dataset& ds) {
    std::vector<int64_t> out(ds.pairs.size());
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < ds.pairs.size(); ++i)
        out[i] = cosine_similarity_fixed(ds.first(ds.pairs[i]), ds.second(ds.pairs[i]));
    return out;
}

std::vector<SweepPoint> accuracy_sweep(const Dataset& ds,
                                       const std::vector<double>& thresholds) {
    auto sims = pair_similarities(ds);
    std::vector<SweepPoint> out;
    out.reserve(thresholds.size());
    for (double tau : thresholds) {
        auto cfg = ThresholdConfig::from_tau(tau);
        size_t correct = 0;
        for (size_t i = 0; i < sims.size(); ++i) {
            bool match = sims[i] >= cfg.tau_fixed;
            if (match == ds.pairs[i].same) ++correct;
        }
        out.push_back({tau, double(correct) / double(sims.size())});
    }
    return out;
}

std::string sweep_to_csv(const std::vector<SweepPoint>& sweep) {
    std::string csv = "threshold,accuracy\n";
    char line[64];
    for (const auto& p : sweep) {
        snprintf(line, sizeof line, "%.6f,%.6f\n", p.threshold, p.accuracy);
        csv += line;
    }
    return csv;
}

}  // namespace zkbid
