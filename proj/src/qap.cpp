#include "zkbid/qap.hpp"

#include "zkbid/errors.hpp"

namespace zkbid::snark {

using bn254::EvalDomain;

void batch_inverse(std::vector<Fr>& xs) {
    if (xs.empty()) return;
    std::vector<Fr> prefix(xs.size());
    Fr acc = Fr::one();
    for (size_t i = 0; i < xs.size(); ++i) {
        prefix[i] = acc;
        acc = acc * xs[i];
    }
    Fr inv = acc.inverse();
    for (size_t i = xs.size(); i-- > 0;) {
        Fr xi = xs[i];
        xs[i] = inv * prefix[i];
        inv = inv * xi;
    }
}

static void add_term(std::vector<std::pair<uint32_t, Fr>>& col, uint32_t row, const Fr& coeff) {
    if (!col.empty() && col.back().first == row)
        col.back().second = col.back().second + coeff;
    else
        col.push_back({row, coeff});
}

QAP QAP::from_r1cs(const R1CS& r) {
    QAP q;
    q.num_vars = r.num_vars();
    q.num_public = r.num_public;
    q.num_rows = r.constraints.size() + r.num_public + 1;
    q.domain = EvalDomain::of_min_size(q.num_rows);
    q.a_cols.resize(q.num_vars);
    q.b_cols.resize(q.num_vars);
    q.c_cols.resize(q.num_vars);
    for (uint32_t row = 0; row < r.constraints.size(); ++row) {
        const auto& c = r.constraints[row];
        for (const auto& t : c.a) add_term(q.a_cols[t.var], row, t.coeff);
        for (const auto& t : c.b) add_term(q.b_cols[t.var], row, t.coeff);
        for (const auto& t : c.c) add_term(q.c_cols[t.var], row, t.coeff);
    }
    uint32_t base = static_cast<uint32_t>(r.constraints.size());
    for (uint32_t i = 0; i <= r.num_public; ++i) q.a_cols[i].push_back({base + i, Fr::one()});
    return q;
}

QAP::EvaluationAt QAP::evaluate_at(const Fr& x) const {
    Fr t = domain.vanishing_at(x);
    if (t == Fr::zero()) throw ConfigError("evaluation point lies in the domain");

    // L_j(x) = t(x) * w^j / (m * (x - w^j))
    std::vector<Fr> denom(num_rows);
    Fr wj = Fr::one();
    for (size_t j = 0; j < num_rows; ++j) {
        denom[j] = x - wj;
        wj = wj * domain.omega;
    }
    batch_inverse(denom);
    std::vector<Fr> lagrange(num_rows);
    Fr scale = t * domain.size_inv;
    wj = Fr::one();
    for (size_t j = 0; j < num_rows; ++j) {
        lagrange[j] = scale * wj * denom[j];
        wj = wj * domain.omega;
    }

    EvaluationAt out;
    out.t = t;
    out.a.assign(num_vars, Fr::zero());
    out.b.assign(num_vars, Fr::zero());
    out.c.assign(num_vars, Fr::zero());
    for (size_t v = 0; v < num_vars; ++v) {
        for (const auto& [row, coeff] : a_cols[v]) out.a[v] = out.a[v] + coeff * lagrange[row];
        for (const auto& [row, coeff] : b_cols[v]) out.b[v] = out.b[v] + coeff * lagrange[row];
        for (const auto& [row, coeff] : c_cols[v]) out.c[v] = out.c[v] + coeff * lagrange[row];
    }
    return out;
}

static std::vector<Fr> column_poly(const std::vector<std::pair<uint32_t, Fr>>& col,
                                   const EvalDomain& d) {
    std::vector<Fr> evals(d.size, Fr::zero());
    for (const auto& [row, coeff] : col) evals[row] = evals[row] + coeff;
    bn254::intt(evals, d);
    return evals;
}

std::vector<Fr> QAP::a_poly(size_t var) const { return column_poly(a_cols[var], domain); }
std::vector<Fr> QAP::b_poly(size_t var) const { return column_poly(b_cols[var], domain); }
std::vector<Fr> QAP::c_poly(size_t var) const { return column_poly(c_cols[var], domain); }

void QAP::row_evals(const std::vector<Fr>& z, std::vector<Fr>& a, std::vector<Fr>& b,
                    std::vector<Fr>& c) const {
    a.assign(domain.size, Fr::zero());
    b.assign(domain.size, Fr::zero());
    c.assign(domain.size, Fr::zero());
    for (size_t v = 0; v < num_vars; ++v) {
        if (z[v] == Fr::zero()) continue;
        for (const auto& [row, coeff] : a_cols[v]) a[row] = a[row] + coeff * z[v];
        for (const auto& [row, coeff] : b_cols[v]) b[row] = b[row] + coeff * z[v];
        for (const auto& [row, coeff] : c_cols[v]) c[row] = c[row] + coeff * z[v];
    }
}

QAP::Division QAP::divide(const std::vector<Fr>& z) const {
    const size_t m = domain.size;
    std::vector<Fr> a, b, c;
    row_evals(z, a, b, c);
    bn254::intt(a, domain);
    bn254::intt(b, domain);
    bn254::intt(c, domain);

    EvalDomain big = EvalDomain::of_min_size(2 * m);
    a.resize(2 * m, Fr::zero());
    b.resize(2 * m, Fr::zero());
    c.resize(2 * m, Fr::zero());
    bn254::ntt(a, big);
    bn254::ntt(b, big);
    bn254::ntt(c, big);
    std::vector<Fr> p(2 * m);
    for (size_t i = 0; i < 2 * m; ++i) p[i] = a[i] * b[i] - c[i];
    bn254::intt(p, big);

    // reduce mod X^m - 1: X^(m+i) folds onto X^i, the folded part is the
    // quotient. deg(A*B - C) <= 2m - 2, so the top coefficient is empty.
    Division out;
    out.quotient.assign(m - 1, Fr::zero());
    out.remainder.assign(m, Fr::zero());
    for (size_t i = 0; i + 1 < m; ++i) out.quotient[i] = p[m + i];
    for (size_t i = 0; i < m; ++i) out.remainder[i] = p[i] + p[m + i];
    out.exact = true;
    for (const Fr& r : out.remainder)
        if (!(r == Fr::zero())) {
            out.exact = false;
            break;
        }
    return out;
}

}  // namespace zkbid::snark
