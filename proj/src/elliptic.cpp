#include "g2uds/elliptic.hpp"

#include <optional>

namespace g2uds {

EllipticCurve make_elliptic(const FieldTower& T, const Fp2& a, const Fp2& b) {
    Fp2 disc = T.from_int(4) * a * a * a + T.from_int(27) * b * b;
    if (disc.is_zero()) fail(Err::SingularCurve, "singular Weierstrass model");
    return {&T, a, b};
}

bool ec_on(const EllipticCurve& E, const ECPoint& P) {
    if (P.inf) return true;
    return P.y * P.y == P.x * P.x * P.x + E.a * P.x + E.b;
}

ECPoint ec_neg(const ECPoint& P) {
    if (P.inf) return P;
    return {false, P.x, -P.y};
}

ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    Fp2 slope = E.T->zero();
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y.is_zero()) return {};
        slope = (E.T->from_int(3) * P.x * P.x + E.a) * fq_inv(E.T->from_int(2) * P.y);
    } else {
        slope = (Q.y - P.y) * fq_inv(Q.x - P.x);
    }
    Fp2 x = slope * slope - P.x - Q.x;
    Fp2 y = slope * (P.x - x) - P.y;
    return {false, x, y};
}

ECPoint ec_mul(const EllipticCurve& E, Int n, ECPoint P) {
    if (n < 0) {
        P = ec_neg(P);
        n = -n;
    }
    ECPoint r{};
    while (n > 0) {
        if (bit_test(n, 0)) r = ec_add(E, r, P);
        P = ec_add(E, P, P);
        n >>= 1;
    }
    return r;
}

ECPoint ec_random(const EllipticCurve& E, Rng& rng) {
    const FieldTower& T = *E.T;
    const Int& p = T.params().p;
    for (;;) {
        Fp2 x = T.make(rng.below(p), rng.below(p));
        auto y = fq_sqrt(x * x * x + E.a * x + E.b);
        if (!y) continue;
        return {false, x, rng.coin() ? *y : -*y};
    }
}

Fp2 j_invariant(const EllipticCurve& E) {
    const FieldTower& T = *E.T;
    Fp2 a3 = T.from_int(4) * E.a * E.a * E.a;
    return T.from_int(1728) * a3 * fq_inv(a3 + T.from_int(27) * E.b * E.b);
}

// ---------------------------------------------------------------------------
// Weil pairing
// ---------------------------------------------------------------------------

namespace {

// line through A and B (tangent if A = B), evaluated at V; for a vertical
// line returns x_V - x_A
std::optional<Fp2> line_at(const EllipticCurve& E, const ECPoint& A, const ECPoint& B,
                           const ECPoint& V) {
    const FieldTower& T = *E.T;
    if (A.inf || B.inf) {
        const ECPoint& W = A.inf ? B : A;
        if (W.inf) return T.one();
        Fp2 r = V.x - W.x;
        return r.is_zero() ? std::nullopt : std::optional<Fp2>(r);
    }
    if (A.x == B.x && (A != B || A.y.is_zero())) {
        Fp2 r = V.x - A.x;
        return r.is_zero() ? std::nullopt : std::optional<Fp2>(r);
    }
    Fp2 slope = (A == B) ? (T.from_int(3) * A.x * A.x + E.a) * fq_inv(T.from_int(2) * A.y)
                         : (B.y - A.y) * fq_inv(B.x - A.x);
    Fp2 r = V.y - A.y - slope * (V.x - A.x);
    return r.is_zero() ? std::nullopt : std::optional<Fp2>(r);
}

std::optional<Fp2> vert_at(const ECPoint& A, const ECPoint& V) {
    if (A.inf) return std::nullopt; // not expected
    Fp2 r = V.x - A.x;
    return r.is_zero() ? std::nullopt : std::optional<Fp2>(r);
}

// f with div(f) = m(P+R) - m(R) evaluated at V1/V2 (V1 = Q + R2, V2 = R2).
// Maintains f_k with div(f_k) = k(P+R) - k(R) - ([k]P) + (O).
std::optional<Fp2> miller_ec(const EllipticCurve& E, const ECPoint& P, const ECPoint& R,
                             const Int& m, const ECPoint& V1, const ECPoint& V2) {
    const FieldTower& T = *E.T;
    struct Tracked {
        ECPoint Z;
        Fp2 v;
    };
    auto piece = [&](const ECPoint& A, const ECPoint& B) -> std::optional<Fp2> {
        // line(A,B)/vert(A+B) at V1 over V2; A+B may be infinity (vert = 1)
        ECPoint S = ec_add(E, A, B);
        auto l1 = line_at(E, A, B, V1), l2 = line_at(E, A, B, V2);
        if (!l1 || !l2) return std::nullopt;
        Fp2 r = *l1 * fq_inv(*l2);
        if (!S.inf) {
            auto w1 = vert_at(S, V1), w2 = vert_at(S, V2);
            if (!w1 || !w2) return std::nullopt;
            r = r * *w2 * fq_inv(*w1);
        }
        return r;
    };
    auto combine = [&](const Tracked& A, const Tracked& B) -> std::optional<Tracked> {
        auto c = piece(A.Z, B.Z);
        if (!c) return std::nullopt;
        return Tracked{ec_add(E, A.Z, B.Z), A.v * B.v * *c};
    };

    // base: f_1 = vert(P+R)/line(P,R)
    ECPoint PR = ec_add(E, P, R);
    auto l1 = line_at(E, P, R, V1), l2 = line_at(E, P, R, V2);
    if (!l1 || !l2) return std::nullopt;
    Fp2 base_v = *l2 * fq_inv(*l1);
    if (!PR.inf) {
        auto w1 = vert_at(PR, V1), w2 = vert_at(PR, V2);
        if (!w1 || !w2) return std::nullopt;
        base_v = base_v * *w1 * fq_inv(*w2);
    }
    Tracked base{P, base_v};

    std::optional<Tracked> res;
    Tracked q = base;
    Int k = m;
    while (k > 0) {
        if (bit_test(k, 0)) {
            if (!res) {
                res = q;
            } else {
                res = combine(*res, q);
                if (!res) return std::nullopt;
            }
        }
        k >>= 1;
        if (k > 0) {
            auto d = combine(q, q);
            if (!d) return std::nullopt;
            q = *d;
        }
    }
    if (!res->Z.inf) fail(Err::NotTorsion, "point not killed by m");
    (void)T;
    return res->v;
}

} // namespace

Fp2 ec_weil(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q, const Int& m,
            Rng& rng) {
    const FieldTower& T = *E.T;
    if (!ec_mul(E, m, P).inf || !ec_mul(E, m, Q).inf)
        fail(Err::NotTorsion, "arguments are not m-torsion");
    if (P.inf || Q.inf) return T.one();
    for (int tries = 0; tries < 256; ++tries) {
        ECPoint R1 = ec_random(E, rng), R2 = ec_random(E, rng);
        ECPoint QR2 = ec_add(E, Q, R2), PR1 = ec_add(E, P, R1);
        if (QR2.inf || PR1.inf) continue;
        auto a = miller_ec(E, P, R1, m, QR2, R2);
        auto b = miller_ec(E, Q, R2, m, PR1, R1);
        if (!a || !b) continue;
        return *a * fq_inv(*b);
    }
    fail(Err::Timeout, "no usable pairing representatives found");
}

std::pair<ECPoint, ECPoint> ec_torsion_basis(const EllipticCurve& E, unsigned l, unsigned e,
                                             Rng& rng) {
    const FieldTower& T = *E.T;
    Int le = int_pow(l, e);
    Int p1 = T.params().p + 1;
    if (p1 % le != 0) fail(Err::TorsionNotRational, "l^e does not divide p+1");
    Int cof = p1 / le;
    auto sample = [&]() -> std::optional<ECPoint> {
        ECPoint P = ec_mul(E, cof, ec_random(E, rng));
        if (!ec_mul(E, le, P).inf) fail(Err::TorsionNotRational, "group order mismatch");
        if (ec_mul(E, le / l, P).inf) return std::nullopt;
        return P;
    };
    for (int round = 0; round < 256; ++round) {
        auto P = sample(), Q = sample();
        if (!P || !Q) continue;
        // independent iff the pairing has full order l^e
        Fp2 z = ec_weil(E, *P, *Q, le, rng);
        Fp2 acc = fq_pow(z, le / l);
        if (acc == T.one()) continue;
        return {*P, *Q};
    }
    fail(Err::Timeout, "no independent torsion basis found");
}

// ---------------------------------------------------------------------------
// Velu isogenies
// ---------------------------------------------------------------------------

ECIsogeny velu_isogeny(const EllipticCurve& E, const ECPoint& K, unsigned l) {
    const FieldTower& T = *E.T;
    if (K.inf || !ec_mul(E, l, K).inf) fail(Err::BadOrder, "kernel point order is not l");
    ECIsogeny phi;
    phi.domain = E;
    ECPoint Q = K;
    while (!Q.inf) {
        phi.kernel.push_back(Q);
        Q = ec_add(E, Q, K);
    }
    if (phi.kernel.size() != l - 1) fail(Err::BadOrder, "kernel point order is not l");
    Fp2 t = T.zero(), w = T.zero();
    for (const auto& pt : phi.kernel) {
        Fp2 gx = T.from_int(3) * pt.x * pt.x + E.a;
        t = t + gx;
        w = w + T.from_int(2) * pt.y * pt.y + pt.x * gx;
    }
    phi.codomain = make_elliptic(T, E.a - T.from_int(5) * t, E.b - T.from_int(7) * w);
    return phi;
}

ECPoint velu_evaluate(const ECIsogeny& phi, const ECPoint& P) {
    if (!ec_on(phi.domain, P)) fail(Err::PointNotOnDomain, "point not on the isogeny domain");
    if (P.inf) return P;
    // Velu's definition: phi(P) = P + sum over kernel of ((P + Q) - (Q))
    Fp2 x = P.x, y = P.y;
    for (const auto& pt : phi.kernel) {
        ECPoint S = ec_add(phi.domain, P, pt);
        if (S.inf) return {}; // P in kernel
        x = x + S.x - pt.x;
        y = y + S.y - pt.y;
    }
    ECPoint img{false, x, y};
    if (!ec_on(phi.codomain, img)) fail(Err::InternalError, "isogeny image off the codomain");
    return img;
}

} // namespace g2uds
