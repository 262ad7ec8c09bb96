#pragma once

#include "zkbid/bn254.hpp"

namespace zkbid::bn254 {

// Radix-2 evaluation domain inside Fr's 2^28 two-adic subgroup.
struct EvalDomain {
    size_t size = 0;       // power of two
    Fr omega;              // generator of the size-|size| subgroup
    Fr omega_inv;
    Fr size_inv;
    Fr coset_gen;          // multiplicative shift for coset evaluation
    Fr coset_gen_inv;

    static EvalDomain of_min_size(size_t n);

    std::vector<Fr> elements() const;
    // t(X) = X^size - 1 evaluated at x
    Fr vanishing_at(const Fr& x) const;
};

// in-place forward transform: values <- evaluations over the domain
void ntt(std::vector<Fr>& a, const EvalDomain& d);
// inverse: evaluations -> coefficients
void intt(std::vector<Fr>& a, const EvalDomain& d);
// evaluations over the coset g*H
void coset_ntt(std::vector<Fr>& a, const EvalDomain& d);
void coset_intt(std::vector<Fr>& a, const EvalDomain& d);

// quadratic-time reference used to pin down the fast transform
std::vector<Fr> dft_reference(const std::vector<Fr>& a, const EvalDomain& d);

// polynomial helpers (dense, coefficient order low to high)
Fr poly_eval(const std::vector<Fr>& coeffs, const Fr& x);

}  // namespace zkbid::bn254
