#include "g2uds/richelot.hpp"

#include <algorithm>
#include <optional>

namespace g2uds {

namespace {

constexpr int kRandomizeTries = 64;

Poly<Fp2> bracket(const Poly<Fp2>& a, const Poly<Fp2>& b) {
    return poly_derivative(a) * b - a * poly_derivative(b);
}

// (c x + d)^n * g((a x + b) / (c x + d)) for g of formal degree n.
template <class K>
Poly<K> form_pullback(const Poly<K>& g, unsigned n, const K& a, const K& b, const K& c,
                      const K& d) {
    K zero = a - a;
    K one = fq_one_like(a);
    Poly<K> A({b, a}), C({d, c});
    std::vector<Poly<K>> pa(n + 1), pc(n + 1);
    pa[0] = pc[0] = Poly<K>({one});
    for (unsigned k = 1; k <= n; ++k) {
        pa[k] = pa[k - 1] * A;
        pc[k] = pc[k - 1] * C;
    }
    Poly<K> out;
    for (unsigned i = 0; i <= n; ++i) {
        K gi = g.coeff_or_zero(i, zero);
        if (gi.is_zero()) continue;
        out = out + gi * (pa[i] * pc[n - i]);
    }
    return out;
}

Poly<Fp4> embed_poly(const FieldTower& T, const Poly<Fp2>& f) {
    std::vector<Fp4> c;
    c.reserve(f.c.size());
    for (const auto& x : f.c) c.push_back(T.embed(x));
    return Poly<Fp4>(c);
}

std::optional<Poly<Fp2>> descend_poly(const FieldTower& T, const Poly<Fp4>& f) {
    std::vector<Fp2> c;
    c.reserve(f.c.size());
    for (const auto& x : f.c) {
        if (!x.b.is_zero()) return std::nullopt;
        c.push_back(x.a);
    }
    return Poly<Fp2>(c);
}

// Transport of the affine Mumford data across the model change
// x = (a x~ + b)/(c x~ + d), y = e y~ / (c x~ + d)^-3 viewed from the new
// model (the new curve is moebius_twist(old, M, e)). Mixed infinity
// bookkeeping cancels through 2-torsion classes, so the affine formula is the
// whole class map. Returns nothing on degenerate inputs (tangency at a
// transported double point); callers resolve those by randomization.
template <class K>
std::optional<Divisor<K>> transport_pair(const Poly<K>& fto, const K& a, const K& b, const K& c,
                                         const K& d, const K& e, const Divisor<K>& D) {
    K zero = a - a;
    K one = fq_one_like(a);
    if (D.is_identity()) return divisor_identity(one);
    int du = D.u.deg();
    Poly<K> ur = form_pullback(D.u, static_cast<unsigned>(du), a, b, c, d);
    if (ur.deg() <= 0) return divisor_identity(one);
    Poly<K> ut = poly_monic(ur);
    K v0 = D.v.coeff_or_zero(0, zero);
    K v1 = D.v.coeff_or_zero(1, zero);
    Poly<K> A({b, a}), C({d, c});
    Poly<K> w = fq_inv(e) * ((v1 * A + v0 * C) * C * C);
    Divisor<K> out;
    if (ut.deg() == du) {
        out = {ut, w % ut};
    } else {
        // one point moved to infinity; the class drops to weight 1
        K r = -ut[0];
        out = {ut, w.is_zero() ? w : Poly<K>({w.eval(r)})};
    }
    if (!divisor_on(fto, out)) return std::nullopt;
    return out;
}

// Image of one domain point (x0, y0) under the Richelot correspondence, as a
// weight-2 divisor on the even codomain model.
template <class K>
std::optional<Divisor<K>> push_point(const Poly<K>& fpe, const Poly<K>& G1, const Poly<K>& G2,
                                     const Poly<K>& H1, const Poly<K>& H2, const K& x0,
                                     const K& y0) {
    if (y0.is_zero()) return std::nullopt;
    K one = fq_one_like(x0);
    K g1 = G1.eval(x0), g2 = G2.eval(x0);
    Poly<K> up = g1 * H1 + g2 * H2;
    if (up.deg() != 2) return std::nullopt;
    Poly<K> um = poly_monic(up);
    Poly<K> vr = fq_inv(y0) * (g1 * (H1 * Poly<K>({-x0, one})));
    Divisor<K> out{um, vr % um};
    if (!divisor_on(fpe, out)) return std::nullopt;
    return out;
}

struct EmbeddedJacStep {
    const FieldTower* T;
    Poly<Fp4> G1, G2, H1, H2, fp_even, f_odd;
    Fp4 Ma, Mb, Mc, Md, e;
};

EmbeddedJacStep embed_step(const RichelotJacobianStep& s) {
    const FieldTower& T = *s.domain.T;
    return {&T,
            embed_poly(T, s.S.G1),
            embed_poly(T, s.S.G2),
            embed_poly(T, s.brackets[0]),
            embed_poly(T, s.brackets[1]),
            embed_poly(T, s.codomain_even.poly()),
            embed_poly(T, s.codomain.poly()),
            T.embed(s.M.a),
            T.embed(s.M.b),
            T.embed(s.M.c),
            T.embed(s.M.d),
            T.embed(s.e)};
}

// Direct push of one divisor class: split over F_{p^4}, push each point
// through the correspondence, transport to the odd codomain model, add up.
// Fails (nullopt) on any non-generic configuration.
std::optional<Divisor<Fp2>> push_generic(const EmbeddedJacStep& E, const Divisor<Fp2>& D,
                                         Rng& rng) {
    const FieldTower& T = *E.T;
    if (D.is_identity()) return divisor_identity(T.one());
    Poly<Fp4> ue = embed_poly(T, D.u);
    Poly<Fp4> ve = embed_poly(T, D.v);
    std::vector<Fp4> xs = poly_roots(ue, rng);
    if (static_cast<int>(xs.size()) != D.u.deg()) return std::nullopt;
    Divisor<Fp4> acc = divisor_identity(T.embed(T.one()));
    for (const Fp4& x0 : xs) {
        Fp4 y0 = ve.is_zero() ? x0 - x0 : ve.eval(x0);
        auto img = push_point(E.fp_even, E.G1, E.G2, E.H1, E.H2, x0, y0);
        if (!img) return std::nullopt;
        auto odd = transport_pair(E.f_odd, E.Ma, E.Mb, E.Mc, E.Md, E.e, *img);
        if (!odd) return std::nullopt;
        acc = cantor_add(E.f_odd, acc, *odd);
    }
    auto u2 = descend_poly(T, acc.u);
    auto v2 = descend_poly(T, acc.v);
    if (!u2 || !v2) return std::nullopt;
    return Divisor<Fp2>{*u2, *v2};
}

struct MobPt {
    bool inf;
    Fp2 x;
};

MobPt mob_image(const Moebius& M, const MobPt& p) {
    if (p.inf) {
        if (M.c.is_zero()) return {true, M.a};
        return {false, M.a * fq_inv(M.c)};
    }
    Fp2 den = M.c * p.x + M.d;
    if (den.is_zero()) return {true, den};
    return {false, (M.a * p.x + M.b) * fq_inv(den)};
}

bool mobpt_eq(const MobPt& a, const MobPt& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.x == b.x;
}

// Matrix of the map sending (p0, p1, p2) to (0, 1, infinity).
std::array<Fp2, 4> to_01inf(const FieldTower& T, const MobPt& p0, const MobPt& p1,
                            const MobPt& p2) {
    Fp2 one = T.one(), zero = T.zero();
    if (p0.inf) return {zero, p1.x - p2.x, one, -p2.x};
    if (p1.inf) return {one, -p0.x, one, -p2.x};
    if (p2.inf) return {one, -p0.x, zero, p1.x - p0.x};
    return {p1.x - p2.x, -(p0.x * (p1.x - p2.x)), p1.x - p0.x, -(p2.x * (p1.x - p0.x))};
}

Moebius mob_compose(const Moebius& M1, const Moebius& M2) {
    return {M1.a * M2.a + M1.b * M2.c, M1.a * M2.b + M1.b * M2.d, M1.c * M2.a + M1.d * M2.c,
            M1.c * M2.b + M1.d * M2.d};
}

std::optional<Moebius> mob_from_triples(const FieldTower& T, const std::array<MobPt, 3>& src,
                                        const std::array<MobPt, 3>& dst) {
    auto A = to_01inf(T, src[0], src[1], src[2]);
    auto B = to_01inf(T, dst[0], dst[1], dst[2]);
    Moebius Badj{B[3], -B[1], -B[2], B[0]};
    Moebius M = mob_compose(Badj, Moebius{A[0], A[1], A[2], A[3]});
    if (M.det().is_zero()) return std::nullopt;
    return M;
}

// Points on an elliptic curve over an extension field, for pushing split
// divisor classes before descending back.
template <class K>
struct KPt {
    bool inf = true;
    K x, y;
};

template <class K>
KPt<K> kpt_add(const K& a4, const KPt<K>& P, const KPt<K>& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    K s;
    if (P.x == Q.x) {
        if ((P.y + Q.y).is_zero()) return {true, P.x, P.y};
        K two = fq_one_like(P.x) + fq_one_like(P.x);
        K three = two + fq_one_like(P.x);
        s = (three * P.x * P.x + a4) * fq_inv(two * P.y);
    } else {
        s = (Q.y - P.y) * fq_inv(Q.x - P.x);
    }
    K xr = s * s - P.x - Q.x;
    return {false, xr, s * (P.x - xr) - P.y};
}

} // namespace

QuadraticSplitting splitting_from_kernel(const Genus2Curve& H,
                                         const std::array<MumfordDivisor, 3>& kernel) {
    if (H.degree != 5) fail(Err::BadShape, "quadratic splittings need an odd model");
    Poly<Fp2> f = H.poly();
    for (const auto& D : kernel) {
        if (!(*D.H == H)) fail(Err::CurveMismatch, "kernel element on a different curve");
        if (D.is_identity()) fail(Err::NotOrder4, "kernel element is the identity");
        if (!D.d.v.is_zero() || !on_jacobian(D)) fail(Err::NotOrder4, "kernel element is not 2-torsion");
    }
    if (kernel[0] == kernel[1] || kernel[0] == kernel[2] || kernel[1] == kernel[2])
        fail(Err::NotOrder4, "kernel elements are not distinct");
    if (jac_add(kernel[0], kernel[1]) != kernel[2])
        fail(Err::NotOrder4, "kernel is not closed under addition");
    Poly<Fp2> prod = kernel[0].d.u * kernel[1].d.u * kernel[2].d.u;
    if (!(prod == poly_monic(f)))
        fail(Err::NotIsotropic, "kernel supports do not partition the Weierstrass points");
    // one factor is linear (partner of infinity); it goes in the last slot
    std::array<Poly<Fp2>, 3> G{kernel[0].d.u, kernel[1].d.u, kernel[2].d.u};
    for (unsigned i = 0; i < 2; ++i)
        if (G[i].deg() == 1) std::swap(G[i], G[2]);
    return {f.lead() * G[0], G[1], G[2]};
}

std::array<MumfordDivisor, 3> kernel_of_splitting(const Genus2Curve& H,
                                                  const QuadraticSplitting& S) {
    Poly<Fp2> none;
    return {MumfordDivisor{&H, {poly_monic(S.G1), none}},
            MumfordDivisor{&H, {poly_monic(S.G2), none}},
            MumfordDivisor{&H, {poly_monic(S.G3), none}}};
}

std::vector<QuadraticSplitting> all_splittings(const Genus2Curve& H, Rng& rng) {
    if (H.degree != 5) fail(Err::BadShape, "quadratic splittings need an odd model");
    const FieldTower& T = *H.T;
    Poly<Fp2> f = H.poly();
    std::vector<Fp2> r = poly_roots(f, rng);
    if (r.size() != 5) fail(Err::BadShape, "Weierstrass points are not rational");
    std::sort(r.begin(), r.end(), [](const Fp2& x, const Fp2& y) { return lex_less(x, y); });
    auto quad = [&](const Fp2& s, const Fp2& t) {
        return Poly<Fp2>({s * t, -(s + t), T.one()});
    };
    std::vector<QuadraticSplitting> out;
    for (unsigned k = 0; k < 5; ++k) { // partner of the point at infinity
        std::vector<Fp2> q;
        for (unsigned i = 0; i < 5; ++i)
            if (i != k) q.push_back(r[i]);
        const unsigned pairings[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
        for (const auto& pr : pairings) {
            Poly<Fp2> G1 = f.lead() * quad(q[pr[0]], q[pr[1]]);
            Poly<Fp2> G2 = quad(q[pr[2]], q[pr[3]]);
            Poly<Fp2> G3({-r[k], T.one()});
            out.push_back({G1, G2, G3});
        }
    }
    return out;
}

Fp2 splitting_delta(const QuadraticSplitting& S) {
    const Fp2 zero = S.G1.lead() - S.G1.lead();
    auto row = [&](const Poly<Fp2>& g, unsigned i) { return g.coeff_or_zero(i, zero); };
    const Poly<Fp2>*Gs[3] = {&S.G1, &S.G2, &S.G3};
    Fp2 m[3][3];
    for (unsigned i = 0; i < 3; ++i)
        for (unsigned j = 0; j < 3; ++j) m[i][j] = row(*Gs[i], j);
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

namespace {

RichelotProductStep product_codomain(const Genus2Curve& H, const QuadraticSplitting& S) {
    const FieldTower& T = *H.T;
    // Diagonalize the pencil spanned by G1, G2: its two degenerate members
    // are perfect squares c (x - s_i)^2; the substitution sending s1 to 0 and
    // s2 to infinity makes all three quadratics even. On an odd model both
    // s_i are finite because the involution pairing the G_i roots swaps the
    // root of G3 with infinity, so infinity is not a fixed point.
    Fp2 a1 = S.G1.coeff_or_zero(2, T.zero()), b1 = S.G1.coeff_or_zero(1, T.zero()),
        c1 = S.G1.coeff_or_zero(0, T.zero());
    Fp2 a2 = S.G2.coeff_or_zero(2, T.zero()), b2 = S.G2.coeff_or_zero(1, T.zero()),
        c2 = S.G2.coeff_or_zero(0, T.zero());
    Fp2 four = T.from_int(4);
    // disc(t G1 + G2) as a quadratic in t
    Fp2 qa = b1 * b1 - four * a1 * c1;
    Fp2 qb = T.from_int(2) * b1 * b2 - four * (a1 * c2 + a2 * c1);
    Fp2 qc = b2 * b2 - four * a2 * c2;
    Fp2 disc = qb * qb - four * qa * qc;
    if (qa.is_zero() || disc.is_zero())
        fail(Err::DegenerateImage, "degenerate pencil in split codomain");
    if (!fq_is_square(disc))
        fail(Err::DegenerateImage, "split codomain is not defined over the base field");
    Fp2 sq = *fq_sqrt(disc);
    Fp2 half = fq_inv(T.from_int(2));
    Fp2 t1 = (-qb + sq) * half * fq_inv(qa);
    Fp2 t2 = (-qb - sq) * half * fq_inv(qa);
    auto square_center = [&](const Fp2& t) {
        Fp2 A = t * a1 + a2, B = t * b1 + b2;
        if (A.is_zero()) fail(Err::DegenerateImage, "degenerate pencil in split codomain");
        return -B * half * fq_inv(A);
    };
    Fp2 s1 = square_center(t1), s2 = square_center(t2);
    if (s1 == s2) fail(Err::InternalError, "coincident pencil fixed points");

    Moebius N{s2, s1, T.one(), T.one()};
    std::array<Fp2, 3> A, B;
    const Poly<Fp2>*Gs[3] = {&S.G1, &S.G2, &S.G3};
    for (unsigned i = 0; i < 3; ++i) {
        Poly<Fp2> g = form_pullback(*Gs[i], 2, N.a, N.b, N.c, N.d);
        if (!g.coeff_or_zero(1, T.zero()).is_zero())
            fail(Err::InternalError, "pencil diagonalization failed");
        A[i] = g.coeff_or_zero(2, T.zero());
        B[i] = g.coeff_or_zero(0, T.zero());
        if (A[i].is_zero() || B[i].is_zero())
            fail(Err::InternalError, "pencil diagonalization failed");
    }

    Fp2 third = fq_inv(T.from_int(3));
    auto factor = [&](const std::array<Fp2, 3>& lo, const std::array<Fp2, 3>& hi) {
        Poly<Fp2> cubic =
            Poly<Fp2>({lo[0], hi[0]}) * Poly<Fp2>({lo[1], hi[1]}) * Poly<Fp2>({lo[2], hi[2]});
        Fp2 c3 = cubic[3], c2 = cubic[2], cc1 = cubic[1], c0 = cubic[0];
        Fp2 ash = cc1 * c3 - c2 * c2 * third;
        Fp2 bsh = c0 * c3 * c3 - cc1 * c2 * c3 * third +
                  T.from_int(2) * c2 * c2 * c2 * third * third * third;
        EllipticCurve E = make_elliptic(T, ash, bsh);
        return std::tuple<EllipticCurve, Fp2, Fp2, Fp2>{E, c3, c2 * third, c3};
    };
    auto [E1, al1, be1, ga1] = factor(B, A);
    auto [E2, al2, be2, ga2] = factor(A, B);
    // the domain point at infinity sits at x~ = -1 on the diagonalized model
    ECPoint w1{false, al1 * T.one() + be1, T.zero()};
    ECPoint w2{false, al2 * T.one() + be2, T.zero()};
    return {H, S, N, A, B, E1, E2, al1, be1, ga1, al2, be2, ga2, w1, w2};
}

} // namespace

RichelotStep richelot_step(const Genus2Curve& H, const QuadraticSplitting& S, Rng& rng) {
    if (H.degree != 5) fail(Err::BadShape, "Richelot steps need an odd domain model");
    if (!(S.G1 * S.G2 * S.G3 == H.poly()))
        fail(Err::BadShape, "splitting does not factor the curve");
    if (S.G1.deg() != 2 || S.G2.deg() != 2 || S.G3.deg() != 1)
        fail(Err::BadShape, "splitting shape must be (2, 2, 1) on an odd model");
    Fp2 delta = splitting_delta(S);
    if (delta.is_zero()) return product_codomain(H, S);

    const FieldTower& T = *H.T;
    std::array<Poly<Fp2>, 3> Hs{bracket(S.G2, S.G3), bracket(S.G3, S.G1), bracket(S.G1, S.G2)};
    Poly<Fp2> fp = fq_inv(delta) * (Hs[0] * Hs[1] * Hs[2]);
    std::vector<Fp2> coeffs(7, T.zero());
    for (int i = 0; i <= fp.deg(); ++i) coeffs[static_cast<unsigned>(i)] = fp[i];
    Genus2Curve even = make_curve(T, coeffs);

    RichelotJacobianStep step;
    step.domain = H;
    step.S = S;
    step.brackets = Hs;
    step.delta = delta;
    step.codomain_even = even;
    if (even.degree == 5) {
        step.codomain = even;
        step.M = Moebius{T.one(), T.zero(), T.zero(), T.one()};
        step.e = T.one();
    } else {
        std::vector<Fp2> roots = poly_roots(even.poly(), rng);
        if (roots.empty()) fail(Err::DegenerateImage, "codomain has no rational odd model");
        std::sort(roots.begin(), roots.end(),
                  [](const Fp2& x, const Fp2& y) { return lex_less(x, y); });
        step.M = Moebius{roots[0], T.one(), T.one(), T.zero()};
        step.e = T.one();
        step.codomain = moebius_twist(even, step.M, step.e);
    }
    return step;
}

MumfordDivisor richelot_push(const RichelotJacobianStep& step, const MumfordDivisor& D,
                             Rng& rng) {
    if (!(*D.H == step.domain)) fail(Err::CurveMismatch, "divisor not on the step domain");
    EmbeddedJacStep E = embed_step(step);
    if (auto r = push_generic(E, D.d, rng)) return {&step.codomain, *r};
    Poly<Fp2> fodd = step.codomain.poly();
    for (int i = 0; i < kRandomizeTries; ++i) {
        MumfordDivisor R = random_divisor(step.domain, rng);
        MumfordDivisor A = jac_add(D, R);
        auto pa = push_generic(E, A.d, rng);
        auto pr = push_generic(E, R.d, rng);
        if (pa && pr) return {&step.codomain, cantor_add(fodd, *pa, divisor_neg(*pr))};
    }
    fail(Err::Timeout, "could not push divisor through the step");
}

namespace {

struct SplitImage {
    KPt<Fp4> P1, P2;
};

// Point images on the two elliptic factors, over F_{p^4}.
std::optional<SplitImage> split_point(const RichelotProductStep& s, const FieldTower& T,
                                      const Fp4& x, const Fp4& y) {
    Fp4 na = T.embed(s.N.a), nb = T.embed(s.N.b), nc = T.embed(s.N.c), nd = T.embed(s.N.d);
    // x~ = N^-1(x), y~ = (c x~ + d)^3 y
    Fp4 den = nd * x - nb; // from the adjugate of N
    Fp4 num = -(nc * x) + na;
    if (num.is_zero()) return std::nullopt; // point over the pole of N^-1
    Fp4 xt = den * fq_inv(num);
    if (xt.is_zero()) return std::nullopt; // pole of the second factor map
    Fp4 cxd = nc * xt + nd;
    Fp4 yt = cxd * cxd * cxd * y;
    Fp4 t = xt * xt;
    SplitImage img;
    img.P1 = {false, T.embed(s.al1) * t + T.embed(s.be1), T.embed(s.ga1) * yt};
    Fp4 ti = fq_inv(t);
    img.P2 = {false, T.embed(s.al2) * ti + T.embed(s.be2), T.embed(s.ga2) * yt * ti * fq_inv(xt)};
    return img;
}

std::optional<std::pair<ECPoint, ECPoint>> split_push_generic(const RichelotProductStep& s,
                                                              const Divisor<Fp2>& D, Rng& rng) {
    const FieldTower& T = *s.domain.T;
    if (D.is_identity()) return std::pair<ECPoint, ECPoint>{ECPoint{}, ECPoint{}};
    Poly<Fp4> ue = embed_poly(T, D.u);
    Poly<Fp4> ve = embed_poly(T, D.v);
    std::vector<Fp4> xs = poly_roots(ue, rng);
    if (static_cast<int>(xs.size()) != D.u.deg()) return std::nullopt;
    Fp4 a1 = T.embed(s.E1.a), a2 = T.embed(s.E2.a);
    KPt<Fp4> acc1, acc2;
    for (const Fp4& x0 : xs) {
        Fp4 y0 = ve.is_zero() ? x0 - x0 : ve.eval(x0);
        if (y0.is_zero()) return std::nullopt;
        auto img = split_point(s, T, x0, y0);
        if (!img) return std::nullopt;
        acc1 = kpt_add(a1, acc1, img->P1);
        acc2 = kpt_add(a2, acc2, img->P2);
    }
    if (D.u.deg() == 1) {
        // weight-1 classes are relative to the domain point at infinity,
        // which maps to a finite 2-torsion point on each factor
        KPt<Fp4> w1{false, T.embed(s.winf1.x), T.embed(s.winf1.y)};
        KPt<Fp4> w2{false, T.embed(s.winf2.x), T.embed(s.winf2.y)};
        acc1 = kpt_add(a1, acc1, KPt<Fp4>{w1.inf, w1.x, -w1.y});
        acc2 = kpt_add(a2, acc2, KPt<Fp4>{w2.inf, w2.x, -w2.y});
    }
    auto land = [&](const KPt<Fp4>& P, const EllipticCurve& E) -> std::optional<ECPoint> {
        if (P.inf) return ECPoint{};
        if (!P.x.b.is_zero() || !P.y.b.is_zero()) return std::nullopt;
        ECPoint out{false, P.x.a, P.y.a};
        if (!ec_on(E, out)) return std::nullopt;
        return out;
    };
    auto o1 = land(acc1, s.E1);
    auto o2 = land(acc2, s.E2);
    if (!o1 || !o2) return std::nullopt;
    return std::pair<ECPoint, ECPoint>{*o1, *o2};
}

} // namespace

std::pair<ECPoint, ECPoint> richelot_push_split(const RichelotProductStep& step,
                                                const MumfordDivisor& D, Rng& rng) {
    if (!(*D.H == step.domain)) fail(Err::CurveMismatch, "divisor not on the step domain");
    if (auto r = split_push_generic(step, D.d, rng)) return *r;
    for (int i = 0; i < kRandomizeTries; ++i) {
        MumfordDivisor R = random_divisor(step.domain, rng);
        MumfordDivisor A = jac_add(D, R);
        auto pa = split_push_generic(step, A.d, rng);
        auto pr = split_push_generic(step, R.d, rng);
        if (pa && pr)
            return {ec_add(step.E1, pa->first, ec_neg(pr->first)),
                    ec_add(step.E2, pa->second, ec_neg(pr->second))};
    }
    fail(Err::Timeout, "could not push divisor onto the split codomain");
}

MumfordDivisor transport_divisor(const Genus2Curve& from, const Genus2Curve& to,
                                 const Moebius& M, const Fp2& e, const MumfordDivisor& D,
                                 Rng& rng) {
    if (!(*D.H == from)) fail(Err::CurveMismatch, "divisor not on the source model");
    Poly<Fp2> fto = to.poly();
    if (auto r = transport_pair(fto, M.a, M.b, M.c, M.d, e, D.d)) return {&to, *r};
    for (int i = 0; i < kRandomizeTries; ++i) {
        MumfordDivisor R = random_divisor(from, rng);
        MumfordDivisor A = jac_add(D, R);
        auto ta = transport_pair(fto, M.a, M.b, M.c, M.d, e, A.d);
        auto tr = transport_pair(fto, M.a, M.b, M.c, M.d, e, R.d);
        if (ta && tr) return {&to, cantor_add(fto, *ta, divisor_neg(*tr))};
    }
    fail(Err::Timeout, "could not transport divisor between models");
}

QuadraticSplitting dual_splitting(const RichelotJacobianStep& step) {
    // The dual kernel is cut out by the brackets, pulled back to the odd
    // codomain model and rescaled so the three factors multiply to f exactly.
    std::array<Poly<Fp2>, 3> G;
    for (unsigned i = 0; i < 3; ++i)
        G[i] = form_pullback(step.brackets[i], 2, step.M.a, step.M.b, step.M.c, step.M.d);
    for (unsigned i = 0; i < 2; ++i)
        if (G[i].deg() <= 1) std::swap(G[i], G[2]);
    G[0] = (fq_inv(step.e * step.e * step.delta)) * G[0];
    QuadraticSplitting Sd{G[0], G[1], G[2]};
    if (!(Sd.G1 * Sd.G2 * Sd.G3 == step.codomain.poly()))
        fail(Err::InternalError, "dual splitting mismatch");
    return Sd;
}

RichelotJacobianStep richelot_dual(const RichelotJacobianStep& step, Rng& rng) {
    const FieldTower& T = *step.domain.T;
    const Genus2Curve& Hc = step.codomain;
    QuadraticSplitting Sd = dual_splitting(step);

    RichelotStep raw = richelot_step(Hc, Sd, rng);
    auto* basep = std::get_if<RichelotJacobianStep>(&raw);
    if (basep == nullptr) fail(Err::InternalError, "dual of a jacobian step split");
    RichelotJacobianStep base = *basep;

    // The dual codomain is a model of the original domain. Recover the model
    // change by matching Weierstrass points, then calibrate the sign so the
    // composite acts as multiplication by 2.
    Poly<Fp2> fH = step.domain.poly();
    std::vector<Fp2> rH = poly_roots(fH, rng);
    std::vector<Fp2> rD = poly_roots(base.codomain.poly(), rng);
    if (rH.size() != 5 || rD.size() != 5)
        fail(Err::InternalError, "dual calibration needs rational Weierstrass points");
    auto lex = [](const Fp2& x, const Fp2& y) { return lex_less(x, y); };
    std::sort(rH.begin(), rH.end(), lex);
    std::sort(rD.begin(), rD.end(), lex);
    std::vector<MobPt> ptsH, ptsD;
    for (const auto& r : rH) ptsH.push_back({false, r});
    ptsH.push_back({true, T.zero()});
    for (const auto& r : rD) ptsD.push_back({false, r});
    ptsD.push_back({true, T.zero()});
    std::array<MobPt, 3> src{ptsH[0], ptsH[1], ptsH[2]};

    auto in_root_set = [&](const MobPt& p) {
        for (const auto& q : ptsD)
            if (mobpt_eq(p, q)) return true;
        return false;
    };

    for (unsigned i = 0; i < 6; ++i)
        for (unsigned j = 0; j < 6; ++j)
            for (unsigned k = 0; k < 6; ++k) {
                if (i == j || i == k || j == k) continue;
                auto M2 = mob_from_triples(T, src, {ptsD[i], ptsD[j], ptsD[k]});
                if (!M2) continue;
                bool ok = true;
                for (const auto& p : ptsH)
                    if (!in_root_set(mob_image(*M2, p))) {
                        ok = false;
                        break;
                    }
                if (!ok) continue;
                // proportionality: fH = e2^-2 * pullback(fD)
                Poly<Fp2> g = form_pullback(base.codomain.poly(), 6, M2->a, M2->b, M2->c, M2->d);
                if (g.deg() != fH.deg()) continue;
                Fp2 rho = g.lead() * fq_inv(fH.lead());
                if (!(g == rho * fH)) continue;
                if (!fq_is_square(rho)) continue;
                RichelotJacobianStep cand = base;
                cand.codomain = step.domain;
                cand.M = mob_compose(base.M, *M2);
                cand.e = base.e * *fq_sqrt(rho);
                bool flipped = false;
                bool good = true;
                for (int probe = 0; probe < 3 && good; ++probe) {
                    MumfordDivisor D = random_divisor(step.domain, rng);
                    MumfordDivisor Q =
                        richelot_push(cand, richelot_push(step, D, rng), rng);
                    MumfordDivisor twoD = jac_mul(2, D);
                    if (Q == twoD) continue;
                    if (probe == 0 && !flipped && Q == jac_neg(twoD)) {
                        cand.e = -cand.e;
                        flipped = true;
                        continue;
                    }
                    good = false;
                }
                if (good) return cand;
            }
    fail(Err::InternalError, "no calibrated dual model found");
}

} // namespace g2uds
