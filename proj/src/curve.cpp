#include "g2uds/curve.hpp"

namespace g2uds {
namespace {

// Binary form of fixed order m: c[i] is the coefficient of x^i z^(m-i).
struct BForm {
    unsigned order;
    std::vector<Fp2> c;
};

BForm form_of(const Genus2Curve& H) {
    return {6, std::vector<Fp2>(H.f.begin(), H.f.end())};
}

Fp2 scl(const FieldTower& T, long n) { return n >= 0 ? T.from_int(n) : -T.from_int(-n); }

BForm dx(const BForm& f, const FieldTower& T) {
    BForm r{f.order - 1, {}};
    r.c.reserve(f.order);
    for (unsigned i = 0; i < f.order; ++i) r.c.push_back(scl(T, i + 1) * f.c[i + 1]);
    return r;
}

BForm dz(const BForm& f, const FieldTower& T) {
    BForm r{f.order - 1, {}};
    r.c.reserve(f.order);
    for (unsigned i = 0; i < f.order; ++i) r.c.push_back(scl(T, f.order - i) * f.c[i]);
    return r;
}

BForm dxz(BForm f, unsigned a, unsigned b, const FieldTower& T) {
    for (unsigned k = 0; k < a; ++k) f = dx(f, T);
    for (unsigned k = 0; k < b; ++k) f = dz(f, T);
    return f;
}

BForm mul(const BForm& f, const BForm& g, const FieldTower& T) {
    BForm r{f.order + g.order, std::vector<Fp2>(f.order + g.order + 1, T.zero())};
    for (unsigned i = 0; i <= f.order; ++i)
        for (unsigned j = 0; j <= g.order; ++j) r.c[i + j] = r.c[i + j] + f.c[i] * g.c[j];
    return r;
}

long factorial(unsigned n) {
    long r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

long binom(unsigned n, unsigned k) {
    return factorial(n) / (factorial(k) * factorial(n - k));
}

// r-th transvectant of forms of orders m and n; result has order m + n - 2r.
// The factorial scale only involves the primes 2, 3, 5, so it is invertible
// for every supported p.
BForm transvectant(const BForm& f, const BForm& g, unsigned r, const FieldTower& T) {
    unsigned m = f.order, n = g.order;
    BForm acc{m + n - 2 * r, std::vector<Fp2>(m + n - 2 * r + 1, T.zero())};
    for (unsigned k = 0; k <= r; ++k) {
        BForm t = mul(dxz(f, r - k, k, T), dxz(g, k, r - k, T), T);
        Fp2 coef = scl(T, (k % 2 ? -1L : 1L) * binom(r, k));
        for (unsigned i = 0; i < acc.c.size(); ++i) acc.c[i] = acc.c[i] + coef * t.c[i];
    }
    Fp2 scale = scl(T, factorial(m - r)) * scl(T, factorial(n - r)) *
                fq_inv(scl(T, factorial(m)) * scl(T, factorial(n)));
    for (auto& v : acc.c) v = scale * v;
    return acc;
}

} // namespace

IgusaClebsch igusa_clebsch(const Genus2Curve& H) {
    const FieldTower& T = *H.T;
    BForm f = form_of(H);
    BForm i = transvectant(f, f, 4, T);
    BForm delta = transvectant(i, i, 2, T);
    BForm y1 = transvectant(f, i, 4, T);
    BForm y2 = transvectant(i, y1, 2, T);
    BForm y3 = transvectant(i, y2, 2, T);
    Fp2 A = transvectant(f, f, 6, T).c[0];
    Fp2 B = transvectant(i, i, 4, T).c[0];
    Fp2 C = transvectant(i, delta, 4, T).c[0];
    Fp2 D = transvectant(y3, y1, 2, T).c[0];

    Fp2 A2 = A * A, A3 = A2 * A;
    IgusaClebsch I;
    I.I2 = scl(T, -120) * A;
    I.I4 = scl(T, -720) * A2 + scl(T, 6750) * B;
    I.I6 = scl(T, 8640) * A3 - scl(T, 108000) * A * B + scl(T, 202500) * C;
    I.I10 = scl(T, -62208) * A3 * A2 + scl(T, 972000) * A3 * B + scl(T, 1620000) * A2 * C -
            scl(T, 3037500) * A * B * B - scl(T, 6075000) * B * C - scl(T, 4556250) * D;
    return I;
}

IgusaInvariants igusa_invariants(const Genus2Curve& H) {
    const FieldTower& T = *H.T;
    IgusaClebsch I = igusa_clebsch(H);
    IgusaInvariants J;
    J.J2 = I.I2 * fq_inv(scl(T, 8));
    J.J4 = (scl(T, 4) * J.J2 * J.J2 - I.I4) * fq_inv(scl(T, 96));
    J.J6 = (scl(T, 8) * J.J2 * J.J2 * J.J2 - scl(T, 160) * J.J2 * J.J4 - I.I6) *
           fq_inv(scl(T, 576));
    J.J8 = (J.J2 * J.J6 - J.J4 * J.J4) * fq_inv(scl(T, 4));
    J.J10 = I.I10 * fq_inv(scl(T, 4096));
    return J;
}

G2Invariants g2_invariants(const FieldTower& T, const IgusaInvariants& J) {
    if (J.J10.is_zero()) fail(Err::SingularCurve, "vanishing discriminant");
    Fp2 d = fq_inv(J.J10);
    G2Invariants g;
    if (!J.J2.is_zero()) {
        Fp2 J2sq = J.J2 * J.J2;
        g.g1 = J2sq * J2sq * J.J2 * d;
        g.g2 = J2sq * J.J2 * J.J4 * d;
        g.g3 = J2sq * J.J6 * d;
        g.h1 = g.h2 = T.zero();
    } else {
        g.extended = true;
        g.g1 = g.g2 = g.g3 = T.zero();
        g.h1 = J.J4 * J.J6 * d;
        Fp2 J4sq = J.J4 * J.J4;
        g.h2 = J4sq * J4sq * J.J4 * d * d;
    }
    return g;
}

G2Invariants fingerprint(const Genus2Curve& H) {
    return g2_invariants(*H.T, igusa_invariants(H));
}

Genus2Curve make_curve(const FieldTower& T, const std::vector<Fp2>& coeffs) {
    if (coeffs.size() > 7) fail(Err::SingularCurve, "degree above 6");
    Genus2Curve H;
    H.T = &T;
    for (std::size_t i = 0; i < 7; ++i) H.f[i] = i < coeffs.size() ? coeffs[i] : T.zero();
    H.degree = !H.f[6].is_zero() ? 6 : !H.f[5].is_zero() ? 5 : 0;
    if (H.degree == 0) fail(Err::SingularCurve, "degree below 5");
    if (igusa_invariants(H).J10.is_zero()) fail(Err::SingularCurve, "vanishing discriminant");
    return H;
}

Fp2 Moebius::apply(const Fp2& x) const {
    Fp2 den = c * x + d;
    if (den.is_zero()) fail(Err::DivisionByZero, "Moebius pole");
    return (a * x + b) * fq_inv(den);
}

Moebius Moebius::inverse() const {
    Fp2 dt = det();
    if (dt.is_zero()) fail(Err::DegenerateImage, "singular Moebius transform");
    Fp2 di = fq_inv(dt);
    return {d * di, -(b * di), -(c * di), a * di};
}

Genus2Curve moebius_twist(const Genus2Curve& H, const Moebius& M, const Fp2& e) {
    const FieldTower& T = *H.T;
    if (M.det().is_zero()) fail(Err::DegenerateImage, "singular Moebius transform");
    if (e.is_zero()) fail(Err::DegenerateImage, "zero y-scale");

    // g(X, Z) = e^-2 * f(a X + b Z, c X + d Z) as binary sextics.
    std::vector<Fp2> pa{T.one()}, pc{T.one()}; // (aX+bZ)^i, (cX+dZ)^j coefficient rows
    std::vector<std::vector<Fp2>> powA(7), powC(7);
    powA[0] = pa;
    powC[0] = pc;
    for (unsigned k = 1; k <= 6; ++k) {
        std::vector<Fp2> na(k + 1, T.zero()), nc(k + 1, T.zero());
        for (unsigned i = 0; i < k; ++i) {
            na[i + 1] = na[i + 1] + M.a * powA[k - 1][i];
            na[i] = na[i] + M.b * powA[k - 1][i];
            nc[i + 1] = nc[i + 1] + M.c * powC[k - 1][i];
            nc[i] = nc[i] + M.d * powC[k - 1][i];
        }
        powA[k] = na;
        powC[k] = nc;
    }
    std::vector<Fp2> g(7, T.zero());
    for (unsigned i = 0; i <= 6; ++i) {
        if (H.f[i].is_zero()) continue;
        for (unsigned s = 0; s <= i; ++s)
            for (unsigned t = 0; t <= 6 - i; ++t)
                g[s + t] = g[s + t] + H.f[i] * powA[i][s] * powC[6 - i][t];
    }
    Fp2 einv2 = fq_inv(e * e);
    for (auto& v : g) v = einv2 * v;
    if (g[6].is_zero() && g[5].is_zero()) fail(Err::DegenerateImage, "image degree below 5");
    return make_curve(T, g);
}

} // namespace g2uds
