#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "zkbid/errors.hpp"
#include "zkbid/facematch.hpp"
#include "zkbid/rng.hpp"

using namespace zkbid;

namespace {

std::array<double, kFeatureDim> random_doubles(Rng& rng) {
    std::array<double, kFeatureDim> v;
    for (auto& x : v) x = rng.gaussian();
    return v;
}

double float_cosine(const std::array<double, kFeatureDim>& a,
                    const std::array<double, kFeatureDim>& b) {
    double d = 0, na = 0, nb = 0;
    for (size_t i = 0; i < kFeatureDim; ++i) {
        d += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return d / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("threshold config") {
    auto cfg = ThresholdConfig::from_tau(0.90);
    CHECK(cfg.tau_fixed == 3865470566ll);  // round(0.9 * 2^32)
    CHECK(ThresholdConfig::from_tau(1.0).tau_fixed == kSimScale);
    CHECK_THROWS_AS(ThresholdConfig::from_tau(0.0), ConfigError);
    CHECK_THROWS_AS(ThresholdConfig::from_tau(1.5), ConfigError);
}

TEST_CASE("normalize_features on hand values") {
    std::array<double, kFeatureDim> v{};
    v[0] = 2.0;
    auto f = normalize_features(v);
    CHECK(f[0] == kCoordScale);
    for (size_t i = 1; i < kFeatureDim; ++i) CHECK(f[i] == 0);

    // 3-4-5 triangle
    v = {};
    v[0] = 3.0;
    v[1] = 4.0;
    f = normalize_features(v);
    CHECK(f[0] == llround(0.6 * kCoordScale));
    CHECK(f[1] == llround(0.8 * kCoordScale));

    std::array<double, kFeatureDim> zero{};
    CHECK_THROWS_AS(normalize_features(zero), ZeroNormVector);
}

TEST_CASE("normalized vectors are valid and near unit norm") {
    Rng rng(3);
    for (int i = 0; i < 500; ++i) {
        auto f = normalize_features(random_doubles(rng));
        CHECK(feature_vector_valid(f));
        CHECK(feature_norm_error(f) <= kNormTolerance);
        CHECK(cosine_similarity_fixed(f, f) >= kSimScale - kNormTolerance);
    }
}

TEST_CASE("fixed-point cosine tracks double cosine within 2^-12 (10^4 cases)") {
    Rng rng(5);
    double worst = 0;
    for (int i = 0; i < 10000; ++i) {
        auto da = random_doubles(rng);
        auto db = random_doubles(rng);
        auto fa = normalize_features(da);
        auto fb = normalize_features(db);
        double fixed = double(cosine_similarity_fixed(fa, fb)) / double(kSimScale);
        double exact = float_cosine(da, db);
        worst = std::max(worst, std::abs(fixed - exact));
    }
    CHECK(worst <= std::ldexp(1.0, -12));
}

TEST_CASE("similarity symmetry and self-similarity") {
    Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        auto a = normalize_features(random_doubles(rng));
        auto b = normalize_features(random_doubles(rng));
        CHECK(cosine_similarity_fixed(a, b) == cosine_similarity_fixed(b, a));
    }
}

TEST_CASE("face_match boundary is inclusive") {
    auto cfg = ThresholdConfig::from_tau(0.5);
    FeatureVector a{}, b{};
    a[0] = kCoordScale;
    b[0] = kCoordScale;
    // engineered similarity exactly tau_fixed
    ThresholdConfig exact = cfg;
    exact.tau_fixed = cosine_similarity_fixed(a, b);
    CHECK(face_match(a, b, exact));
    exact.tau_fixed += 1;
    CHECK(!face_match(a, b, exact));

    // monotone in threshold
    Rng rng(9);
    auto fa = normalize_features(random_doubles(rng));
    auto fb = normalize_features(random_doubles(rng));
    bool prev = true;
    for (double tau : {0.05, 0.2, 0.4, 0.6, 0.8, 0.95}) {
        bool m = face_match(fa, fb, ThresholdConfig::from_tau(tau));
        if (!prev) CHECK(!m);
        prev = m;
    }
}

TEST_CASE("orthogonal and opposite vectors never match at sensible thresholds") {
    FeatureVector a{}, b{}, c{};
    a[0] = kCoordScale;
    b[1] = kCoordScale;
    c[0] = -kCoordScale;
    auto cfg = ThresholdConfig::from_tau(0.5);
    CHECK(!face_match(a, b, cfg));
    CHECK(!face_match(a, c, cfg));
    CHECK(face_match(a, a, cfg));
}

TEST_CASE("feature vector json round trip, float encoding, rejection") {
    Rng rng(11);
    auto f = normalize_features(random_doubles(rng));
    auto back = feature_vector_from_json(feature_vector_to_json(f));
    REQUIRE(back.has_value());
    CHECK(*back == f);

    // float encoding normalizes on load
    std::string fj = R"({"version":1,"encoding":"float","coords":[)";
    for (size_t i = 0; i < kFeatureDim; ++i) fj += (i ? ",871.5" : "871.5");
    fj += "]}";
    auto ff = feature_vector_from_json(fj);
    REQUIRE(ff.has_value());
    CHECK(feature_vector_valid(*ff));
    for (auto c : *ff) CHECK(c == (*ff)[0]);

    CHECK(!feature_vector_from_json("{}").has_value());
    CHECK(!feature_vector_from_json(R"({"coords":[1,2,3]})").has_value());
    CHECK(!feature_vector_from_json("garbage").has_value());

    auto dir = std::filesystem::temp_directory_path() / "zkbid_fv_test";
    std::filesystem::create_directories(dir);
    save_feature_vector(dir / "v.json", f);
    CHECK(load_feature_vector(dir / "v.json") == f);
    std::filesystem::remove_all(dir);
}

TEST_CASE("synthetic dataset determinism and basic statistics") {
    DatasetParams p;
    p.n_subjects = 40;
    p.per_subject = 3;
    p.intra_noise = 0.05;
    Dataset d1 = generate_synthetic_dataset(p, 77);
    Dataset d2 = generate_synthetic_dataset(p, 77);
    Dataset d3 = generate_synthetic_dataset(p, 78);
    CHECK(d1.subjects == d2.subjects);
    CHECK(d1.pairs.size() == d2.pairs.size());
    CHECK(d1.subjects != d3.subjects);

    // equal counts of same and cross pairs; all vectors valid
    size_t same = 0;
    for (const auto& pr : d1.pairs) same += pr.same;
    CHECK(same * 2 == d1.pairs.size());
    for (const auto& subj : d1.subjects)
        for (const auto& v : subj) CHECK(feature_vector_valid(v));

    // same-subject similarity exceeds cross-subject similarity on average
    auto sims = pair_similarities_reference(d1);
    double mean_same = 0, mean_cross = 0;
    size_t n_cross = 0;
    for (size_t i = 0; i < sims.size(); ++i) {
        if (d1.pairs[i].same)
            mean_same += double(sims[i]);
        else {
            mean_cross += double(sims[i]);
            ++n_cross;
        }
    }
    mean_same /= double(same);
    mean_cross /= double(n_cross);
    CHECK(mean_same > mean_cross);
    CHECK(mean_same / double(kSimScale) > 0.98);
    CHECK(mean_cross / double(kSimScale) < 0.88);
}

TEST_CASE("zero intra-noise collapses same-subject pairs onto similarity one") {
    DatasetParams p;
    p.n_subjects = 10;
    p.per_subject = 2;
    p.intra_noise = 0.0;
    Dataset d = generate_synthetic_dataset(p, 5);
    auto sims = pair_similarities_reference(d);
    for (size_t i = 0; i < sims.size(); ++i) {
        if (!d.pairs[i].same) continue;
        CHECK(std::abs(sims[i] - kSimScale) <= 2 * kNormTolerance);
    }
}

TEST_CASE("parallel similarity kernel agrees with serial reference") {
    DatasetParams p;
    p.n_subjects = 30;
    p.per_subject = 2;
    Dataset d = generate_synthetic_dataset(p, 13);
    CHECK(pair_similarities(d) == pair_similarities_reference(d));
}

TEST_CASE("accuracy sweep shape on a seeded dataset") {
    DatasetParams p;
    p.n_subjects = 60;
    p.per_subject = 2;
    p.intra_noise = 0.05;
    Dataset d = generate_synthetic_dataset(p, 21);
    std::vector<double> taus;
    for (double t = 0.30; t <= 0.981; t += 0.02) taus.push_back(t);
    auto sweep = accuracy_sweep(d, taus);
    REQUIRE(sweep.size() == taus.size());

    // accuracy at mid thresholds beats accuracy at extremes for this data
    double best = 0;
    for (const auto& pt : sweep) best = std::max(best, pt.accuracy);
    CHECK(best > 0.99);
    CHECK(sweep.front().accuracy < best);

    // CSV emission
    auto csv = sweep_to_csv(sweep);
    CHECK(csv.rfind("threshold,accuracy\n", 0) == 0);
    size_t lines = std::count(csv.begin(), csv.end(), '\n');
    CHECK(lines == sweep.size() + 1);
}
