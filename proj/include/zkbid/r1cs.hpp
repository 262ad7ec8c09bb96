#pragma once

#include <optional>

#include "zkbid/bn254.hpp"
#include "zkbid/bytes.hpp"

namespace zkbid::snark {

using bn254::Fr;

struct LinTerm {
    uint32_t var;
    Fr coeff;
};
using LinComb = std::vector<LinTerm>;

struct Constraint {
    LinComb a, b, c;
};

// Rank-1 constraint system over Fr. Variable 0 is the constant one;
// variables 1..num_public are the public inputs; the rest are witness.
struct R1CS {
    size_t num_public = 0;
    size_t num_witness = 0;
    std::vector<Constraint> constraints;

    size_t num_vars() const { return 1 + num_public + num_witness; }

    bool satisfied(const std::vector<Fr>& z) const;
    std::optional<size_t> first_violated(const std::vector<Fr>& z) const;

    // hash of the canonical encoding; binds keys to the exact circuit
    Digest32 digest() const;
};

Fr eval_lc(const LinComb& lc, const std::vector<Fr>& z);

Fr fr_from_i64(int64_t v);

// x^3 + x + 5 = out with witness x: a tiny fixed circuit for tests
// variables: [1, out, x, t1, t2]
R1CS toy_circuit();
std::vector<Fr> toy_assignment(int64_t x);  // satisfies iff out = x^3 + x + 5

}  // namespace zkbid::snark
