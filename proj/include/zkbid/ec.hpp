#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace zkbid::ec {

// Jacobian point on y^2 = x^3 + b (a = 0 for every curve used here).
// z == 0 encodes the identity.
template <class F>
struct Point {
    F x, y, z;

    static Point infinity() { return {F::one(), F::one(), F::zero()}; }
    bool is_infinity() const { return z.is_zero(); }
};

template <class F>
struct Affine {
    F x, y;
    bool infinity = true;
};

template <class F>
Point<F> from_affine(const Affine<F>& a) {
    if (a.infinity) return Point<F>::infinity();
    return {a.x, a.y, F::one()};
}

template <class F>
Point<F> neg(const Point<F>& p) {
    return {p.x, -p.y, p.z};
}

template <class F>
Point<F> dbl(const Point<F>& p) {
    if (p.is_infinity()) return p;
    F a = p.x.square();
    F b = p.y.square();
    F c = b.square();
    F t = (p.x + b).square() - a - c;
    F d = t + t;
    F e = a + a + a;
    F f = e.square();
    F x3 = f - (d + d);
    F c8 = c.dbl().dbl().dbl();
    F y3 = e * (d - x3) - c8;
    F z3 = (p.y * p.z).dbl();
    return {x3, y3, z3};
}

template <class F>
Point<F> add(const Point<F>& p, const Point<F>& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    F z1z1 = p.z.square();
    F z2z2 = q.z.square();
    F u1 = p.x * z2z2;
    F u2 = q.x * z1z1;
    F s1 = p.y * q.z * z2z2;
    F s2 = q.y * p.z * z1z1;
    F h = u2 - u1;
    F rr = (s2 - s1).dbl();
    if (h.is_zero()) {
        if (rr.is_zero()) return dbl(p);
        return Point<F>::infinity();
    }
    F i = h.dbl().square();
    F j = h * i;
    F v = u1 * i;
    F x3 = rr.square() - j - v.dbl();
    F y3 = rr * (v - x3) - (s1 * j).dbl();
    F z3 = ((p.z + q.z).square() - z1z1 - z2z2) * h;
    return {x3, y3, z3};
}

template <class F>
Point<F> add_mixed(const Point<F>& p, const Affine<F>& q) {
    if (q.infinity) return p;
    if (p.is_infinity()) return from_affine(q);
    F z1z1 = p.z.square();
    F u2 = q.x * z1z1;
    F s2 = q.y * p.z * z1z1;
    F h = u2 - p.x;
    F rr = (s2 - p.y).dbl();
    if (h.is_zero()) {
        if (rr.is_zero()) return dbl(p);
        return Point<F>::infinity();
    }
    F hh = h.square();
    F i = hh.dbl().dbl();
    F j = h * i;
    F v = p.x * i;
    F x3 = rr.square() - j - v.dbl();
    F y3 = rr * (v - x3) - (p.y * j).dbl();
    F z3 = (p.z + h).square() - z1z1 - hh;
    return {x3, y3, z3};
}

template <class F>
bool eq(const Point<F>& p, const Point<F>& q) {
    bool pi = p.is_infinity(), qi = q.is_infinity();
    if (pi || qi) return pi == qi;
    F z1z1 = p.z.square();
    F z2z2 = q.z.square();
    if (!(p.x * z2z2 == q.x * z1z1)) return false;
    return p.y * q.z * z2z2 == q.y * p.z * z1z1;
}

template <class F>
Affine<F> to_affine(const Point<F>& p) {
    if (p.is_infinity()) return {F::zero(), F::zero(), true};
    F zi = p.z.inverse();
    F zi2 = zi.square();
    return {p.x * zi2, p.y * zi2 * zi, false};
}

// batch normalization with a single inversion
template <class F>
std::vector<Affine<F>> batch_to_affine(const std::vector<Point<F>>& pts) {
    std::vector<Affine<F>> out(pts.size());
    std::vector<F> pre(pts.size());
    F acc = F::one();
    for (size_t i = 0; i < pts.size(); ++i) {
        pre[i] = acc;
        if (!pts[i].is_infinity()) acc *= pts[i].z;
    }
    F inv = acc.inverse();
    for (size_t i = pts.size(); i-- > 0;) {
        if (pts[i].is_infinity()) {
            out[i] = {F::zero(), F::zero(), true};
            continue;
        }
        F zi = inv * pre[i];
        inv *= pts[i].z;
        F zi2 = zi.square();
        out[i] = {pts[i].x * zi2, pts[i].y * zi2 * zi, false};
    }
    return out;
}

template <class F>
Point<F> scalar_mul(const Point<F>& p, const std::array<uint64_t, 4>& k) {
    Point<F> acc = Point<F>::infinity();
    bool started = false;
    for (int i = 3; i >= 0; --i) {
        for (int b = 63; b >= 0; --b) {
            if (started) acc = dbl(acc);
            if ((k[i] >> b) & 1) {
                acc = add(acc, p);
                started = true;
            }
        }
    }
    return acc;
}

// y^2 == x^3 + b in Jacobian form: y^2 == x^3 + b z^6
template <class F>
bool on_curve(const Point<F>& p, const F& b) {
    if (p.is_infinity()) return true;
    F z2 = p.z.square();
    F z6 = z2.square() * z2;
    return p.y.square() == p.x.square() * p.x + b * z6;
}

}  // namespace zkbid::ec
