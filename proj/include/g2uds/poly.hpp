#pragma once

// Dense univariate polynomials over any field in the tower. Coefficients are
// stored low-to-high with no trailing zeros; the zero polynomial has an empty
// coefficient vector and degree -1.

#include "g2uds/errors.hpp"
#include "g2uds/field.hpp"

#include <cassert>
#include <vector>

namespace g2uds {

template <class K>
struct Poly {
    std::vector<K> c;

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }

    int deg() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }

    const K& operator[](std::size_t i) const { return c[i]; }

    K coeff_or_zero(std::size_t i, const K& zero) const { return i < c.size() ? c[i] : zero; }
    const K& lead() const { return c.back(); }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    K eval(const K& x) const {
        if (c.empty()) fail(Err::InternalError, "eval of zero polynomial needs a context");
        K r = fq_one_like(x) - fq_one_like(x);
        for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
        return r;
    }

    friend bool operator==(const Poly& f, const Poly& g) { return f.c == g.c; }
    friend bool operator!=(const Poly& f, const Poly& g) { return !(f.c == g.c); }
};

template <class K>
Poly<K> poly_from(std::initializer_list<K> coeffs) {
    return Poly<K>(std::vector<K>(coeffs));
}

template <class K>
Poly<K> operator+(const Poly<K>& f, const Poly<K>& g) {
    std::vector<K> r = f.c.size() >= g.c.size() ? f.c : g.c;
    const auto& s = f.c.size() >= g.c.size() ? g.c : f.c;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> operator-(const Poly<K>& f) {
    std::vector<K> r = f.c;
    for (auto& x : r) x = -x;
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> operator-(const Poly<K>& f, const Poly<K>& g) {
    return f + (-g);
}

template <class K>
Poly<K> operator*(const Poly<K>& f, const Poly<K>& g) {
    if (f.is_zero() || g.is_zero()) return {};
    std::vector<K> r(f.c.size() + g.c.size() - 1, f.c[0] - f.c[0]);
    for (std::size_t i = 0; i < f.c.size(); ++i)
        for (std::size_t j = 0; j < g.c.size(); ++j) r[i + j] = r[i + j] + f.c[i] * g.c[j];
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> operator*(const K& s, const Poly<K>& f) {
    std::vector<K> r = f.c;
    for (auto& x : r) x = s * x;
    return Poly<K>(std::move(r));
}

template <class K>
Poly<K> poly_monic(const Poly<K>& f) {
    if (f.is_zero()) return f;
    return fq_inv(f.lead()) * f;
}

template <class K>
void poly_divmod(const Poly<K>& f, const Poly<K>& g, Poly<K>& q, Poly<K>& r) {
    if (g.is_zero()) fail(Err::DivisionByZero, "polynomial division by zero");
    r = f;
    q = Poly<K>{};
    if (f.deg() < g.deg()) return;
    K ginv = fq_inv(g.lead());
    std::vector<K> qc(f.deg() - g.deg() + 1, f.c[0] - f.c[0]);
    while (!r.is_zero() && r.deg() >= g.deg()) {
        int shift = r.deg() - g.deg();
        K coef = r.lead() * ginv;
        qc[shift] = qc[shift] + coef;
        for (int i = 0; i <= g.deg(); ++i)
            r.c[i + shift] = r.c[i + shift] - coef * g.c[i];
        r.trim();
    }
    q = Poly<K>(std::move(qc));
}

template <class K>
Poly<K> operator%(const Poly<K>& f, const Poly<K>& g) {
    Poly<K> q, r;
    poly_divmod(f, g, q, r);
    return r;
}

template <class K>
Poly<K> operator/(const Poly<K>& f, const Poly<K>& g) {
    Poly<K> q, r;
    poly_divmod(f, g, q, r);
    return q;
}

// Exact division; errors if the remainder is nonzero.
template <class K>
Poly<K> poly_exact_div(const Poly<K>& f, const Poly<K>& g) {
    Poly<K> q, r;
    poly_divmod(f, g, q, r);
    if (!r.is_zero()) fail(Err::InternalError, "polynomial division not exact");
    return q;
}

template <class K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = b;
        b = r;
    }
    return a.is_zero() ? a : poly_monic(a);
}

// g = gcd(a, b) = s*a + t*b, g monic (or zero).
template <class K>
Poly<K> poly_xgcd(const Poly<K>& a, const Poly<K>& b, Poly<K>& s, Poly<K>& t) {
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = poly_from<K>({}), s1 = s0, t0 = s0, t1 = s0;
    if (!a.is_zero()) s0 = Poly<K>({fq_one_like(a.c[0])});
    if (!b.is_zero()) t1 = Poly<K>({fq_one_like(b.c[0])});
    while (!r1.is_zero()) {
        Poly<K> q, r2;
        poly_divmod(r0, r1, q, r2);
        Poly<K> s2 = s0 - q * s1;
        Poly<K> t2 = t0 - q * t1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    if (!r0.is_zero()) {
        K li = fq_inv(r0.lead());
        r0 = li * r0;
        s0 = li * s0;
        t0 = li * t0;
    }
    s = s0;
    t = t0;
    return r0;
}

template <class K>
Poly<K> poly_derivative(const Poly<K>& f) {
    if (f.deg() <= 0) return {};
    std::vector<K> r;
    r.reserve(f.c.size() - 1);
    K one = fq_one_like(f.c[0]);
    K k = one;
    for (std::size_t i = 1; i < f.c.size(); ++i) {
        r.push_back(k * f.c[i]);
        k = k + one;
    }
    return Poly<K>(std::move(r));
}

// Resultant via the Euclidean algorithm. For monic f this equals the product
// of g over the roots of f (with multiplicity, in the algebraic closure).
template <class K>
K poly_resultant(Poly<K> f, Poly<K> g, const K& one) {
    K zero = one - one;
    if (f.is_zero() || g.is_zero()) return zero;
    K acc = one;
    bool negate = false;
    while (g.deg() > 0) {
        Poly<K> r = f % g;
        if (r.is_zero()) return zero;
        // res(f, g) = (-1)^(df*dg) lc(g)^(df - dr) res(g, r)
        acc = acc * fq_pow(g.lead(), Int(f.deg() - r.deg()));
        if ((f.deg() & 1) && (g.deg() & 1)) negate = !negate;
        f = g;
        g = r;
    }
    acc = acc * fq_pow(g.c[0], Int(f.deg()));
    return negate ? -acc : acc;
}

} // namespace g2uds
