#include "zkbid/msm.hpp"

#include "zkbid/errors.hpp"

namespace zkbid::bn254 {

namespace {

inline unsigned window_digit(const Limbs& k, size_t bit, size_t width) {
    size_t limb = bit / 64, off = bit % 64;
    uint64_t v = k[limb] >> off;
    if (off + width > 64 && limb + 1 < 4) v |= k[limb + 1] << (64 - off);
    return unsigned(v & ((1ull << width) - 1));
}

template <class F>
ec::Point<F> msm_reference_impl(const std::vector<ec::Affine<F>>& points,
                                const std::vector<Fr>& scalars) {
    if (points.size() != scalars.size()) throw ConfigError("msm input length mismatch");
    ec::Point<F> acc = ec::Point<F>::infinity();
    for (size_t i = 0; i < points.size(); ++i)
        acc = ec::add(acc, ec::scalar_mul(ec::from_affine(points[i]), scalars[i].to_limbs()));
    return acc;
}

template <class F>
ec::Point<F> msm_impl(const std::vector<ec::Affine<F>>& points,
                      const std::vector<Fr>& scalars) {
    if (points.size() != scalars.size()) throw ConfigError("msm input length mismatch");
    const size_t n = points.size();
    if (n == 0) return ec::Point<F>::infinity();

    size_t c = 3;
    while ((size_t(1) << (c + 3)) < n && c < 14) ++c;
    const size_t windows = (254 + c - 1) / c;

    std::vector<Limbs> ks(n);
    for (size_t i = 0; i < n; ++i) ks[i] = scalars[i].to_limbs();

    std::vector<ec::Point<F>> window_sums(windows, ec::Point<F>::infinity());
#pragma omp parallel for schedule(dynamic)
    for (size_t w = 0; w < windows; ++w) {
        std::vector<ec::Point<F>> buckets(size_t(1) << c, ec::Point<F>::infinity());
        size_t bit = w * c;
        for (size_t i = 0; i < n; ++i) {
            if (points[i].infinity) continue;
            unsigned d = window_digit(ks[i], bit, c);
            if (d) buckets[d] = ec::add_mixed(buckets[d], points[i]);
        }
        ec::Point<F> run = ec::Point<F>::infinity();
        ec::Point<F> sum = ec::Point<F>::infinity();
        for (size_t b = buckets.size() - 1; b > 0; --b) {
            run = ec::add(run, buckets[b]);
            sum = ec::add(sum, run);
        }
        window_sums[w] = sum;
    }

    ec::Point<F> acc = ec::Point<F>::infinity();
    for (size_t w = windows; w-- > 0;) {
        for (size_t k = 0; k < c; ++k) acc = ec::dbl(acc);
        acc = ec::add(acc, window_sums[w]);
    }
    return acc;
}

}  // namespace

G1 msm_reference(const std::vector<G1Affine>& points, const std::vector<Fr>& scalars) {
    return msm_reference_impl(points, scalars);
}
G2 msm_reference(const std::vector<G2Affine>& points, const std::vector<Fr>& scalars) {
    return msm_reference_impl(points, scalars);
}
G1 msm(const std::vector<G1Affine>& points, const std::vector<Fr>& scalars) {
    return msm_impl(points, scalars);
}
G2 msm(const std::vector<G2Affine>& points, const std::vector<Fr>& scalars) {
    return msm_impl(points, scalars);
}

template <class F>
FixedBaseTable<F>::FixedBaseTable(const ec::Point<F>& base, int window_bits)
    : window_(window_bits) {
    const size_t windows = (254 + window_bits) / window_bits;
    const size_t entries = (size_t(1) << window_bits) - 1;
    std::vector<ec::Point<F>> jac;
    jac.reserve(windows * entries);
    ec::Point<F> w_base = base;
    for (size_t w = 0; w < windows; ++w) {
        ec::Point<F> cur = w_base;
        for (size_t e = 0; e < entries; ++e) {
            jac.push_back(cur);
            cur = ec::add(cur, w_base);
        }
        w_base = cur;  // cur = 2^window * w_base after entries additions
    }
    auto aff = ec::batch_to_affine(jac);
    table_.resize(windows);
    for (size_t w = 0; w < windows; ++w)
        table_[w].assign(aff.begin() + w * entries, aff.begin() + (w + 1) * entries);
}

template <class F>
ec::Point<F> FixedBaseTable<F>::mul(const Fr& k) const {
    Limbs limbs = k.to_limbs();
    ec::Point<F> acc = ec::Point<F>::infinity();
    for (size_t w = 0; w < table_.size(); ++w) {
        unsigned d = window_digit(limbs, w * window_, size_t(window_));
        if (d) acc = ec::add_mixed(acc, table_[w][d - 1]);
    }
    return acc;
}

template class FixedBaseTable<Fq>;
template class FixedBaseTable<Fq2>;

std::vector<G1> batch_mul(const G1FixedBase& table, const std::vector<Fr>& scalars) {
    std::vector<G1> out(scalars.size(), G1::infinity());
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < scalars.size(); ++i) out[i] = table.mul(scalars[i]);
    return out;
}

std::vector<G2> batch_mul(const G2FixedBase& table, const std::vector<Fr>& scalars) {
    std::vector<G2> out(scalars.size(), G2::infinity());
#pragma omp parallel for schedule(static)
    for (size_t i = 0; i < scalars.size(); ++i) out[i] = table.mul(scalars[i]);
    return out;
}

}  // namespace zkbid::bn254
