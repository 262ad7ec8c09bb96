#pragma once

#include "zkbid/ntt.hpp"
#include "zkbid/r1cs.hpp"

namespace zkbid::snark {

// Polynomial view of an R1CS over a power-of-two evaluation domain. Rows
// past the constraints pin the constant wire and each public input into the
// A polynomials, so assignments cannot shift the verifier's inputs.
struct QAP {
    bn254::EvalDomain domain;
    size_t num_vars = 0;
    size_t num_public = 0;  // excluding the constant wire
    size_t num_rows = 0;    // constraints + num_public + 1

    // sparse columns: per variable, (row, coeff) pairs of its evaluations
    std::vector<std::vector<std::pair<uint32_t, Fr>>> a_cols, b_cols, c_cols;

    static QAP from_r1cs(const R1CS& r);

    struct EvaluationAt {
        std::vector<Fr> a, b, c;  // per-variable polynomial values at x
        Fr t;                     // vanishing polynomial at x
    };
    // throws ConfigError when x lies in the domain (t(x) = 0)
    EvaluationAt evaluate_at(const Fr& x) const;

    // dense coefficients (length domain.size) of one variable's polynomials
    std::vector<Fr> a_poly(size_t var) const;
    std::vector<Fr> b_poly(size_t var) const;
    std::vector<Fr> c_poly(size_t var) const;

    // evaluations over the domain of the aggregate A,B,C under an assignment
    void row_evals(const std::vector<Fr>& z, std::vector<Fr>& a, std::vector<Fr>& b,
                   std::vector<Fr>& c) const;

    struct Division {
        std::vector<Fr> quotient;   // length domain.size - 1
        std::vector<Fr> remainder;  // length domain.size; zero iff satisfied
        bool exact = false;
    };
    // (A*B - C) divided by the vanishing polynomial
    Division divide(const std::vector<Fr>& z) const;
};

void batch_inverse(std::vector<Fr>& xs);

}  // namespace zkbid::snark
