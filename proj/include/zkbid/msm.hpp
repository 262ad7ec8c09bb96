#pragma once

#include "zkbid/bn254.hpp"

namespace zkbid::bn254 {

// Multi-scalar multiplication kernels. msm() is the windowed-bucket
// (Pippenger) kernel with OpenMP across windows; msm_reference() is the
// plain per-point double-and-add sum kept as the correctness baseline.

G1 msm_reference(const std::vector<G1Affine>& points, const std::vector<Fr>& scalars);
G2 msm_reference(const std::vector<G2Affine>& points, const std::vector<Fr>& scalars);

G1 msm(const std::vector<G1Affine>& points, const std::vector<Fr>& scalars);
G2 msm(const std::vector<G2Affine>& points, const std::vector<Fr>& scalars);

// Precomputed windowed table for repeated multiples of one base point.
template <class F>
class FixedBaseTable {
public:
    FixedBaseTable() = default;
    FixedBaseTable(const ec::Point<F>& base, int window_bits);

    ec::Point<F> mul(const Fr& k) const;

private:
    int window_ = 0;
    std::vector<std::vector<ec::Affine<F>>> table_;  // [window][digit-1]
};

using G1FixedBase = FixedBaseTable<Fq>;
using G2FixedBase = FixedBaseTable<Fq2>;

// table-driven batch of base multiples, OpenMP across scalars
std::vector<G1> batch_mul(const G1FixedBase& table, const std::vector<Fr>& scalars);
std::vector<G2> batch_mul(const G2FixedBase& table, const std::vector<Fr>& scalars);

}  // namespace zkbid::bn254
