#include "g2uds/surface.hpp"

namespace g2uds {

namespace {

MumfordDivisor attach(const Genus2Curve& H, const SurfacePoint& P) {
    if (!P.is_jacobian()) fail(Err::PointNotOnDomain, "product point on a jacobian surface");
    return {&H, P.divisor()};
}

const ProductPoint& pair_of(const SurfacePoint& P) {
    if (P.is_jacobian()) fail(Err::PointNotOnDomain, "jacobian point on a product surface");
    return P.pair();
}

} // namespace

SurfacePoint surface_identity(const Surface& A) {
    if (A.is_jacobian()) return {Divisor<Fp2>{Poly<Fp2>({A.tower().one()}), {}}};
    return {ProductPoint{ECPoint{}, ECPoint{}}};
}

bool surface_on(const Surface& A, const SurfacePoint& P) {
    if (A.is_jacobian() != P.is_jacobian()) return false;
    if (A.is_jacobian()) return on_jacobian(attach(A.jacobian(), P));
    const auto& pp = P.pair();
    return ec_on(A.product().E1, pp.P1) && ec_on(A.product().E2, pp.P2);
}

SurfacePoint surface_add(const Surface& A, const SurfacePoint& P, const SurfacePoint& Q) {
    if (A.is_jacobian())
        return {jac_add(attach(A.jacobian(), P), attach(A.jacobian(), Q)).d};
    const auto& p = pair_of(P);
    const auto& q = pair_of(Q);
    return {ProductPoint{ec_add(A.product().E1, p.P1, q.P1), ec_add(A.product().E2, p.P2, q.P2)}};
}

SurfacePoint surface_neg(const Surface& A, const SurfacePoint& P) {
    if (A.is_jacobian()) return {divisor_neg(P.divisor())};
    const auto& p = pair_of(P);
    return {ProductPoint{ec_neg(p.P1), ec_neg(p.P2)}};
}

SurfacePoint surface_mul(const Surface& A, const Int& n, const SurfacePoint& P) {
    if (A.is_jacobian()) return {jac_mul(n, attach(A.jacobian(), P)).d};
    const auto& p = pair_of(P);
    return {ProductPoint{ec_mul(A.product().E1, n, p.P1), ec_mul(A.product().E2, n, p.P2)}};
}

SurfacePoint surface_random(const Surface& A, Rng& rng) {
    if (A.is_jacobian()) return {random_divisor(A.jacobian(), rng).d};
    return {ProductPoint{ec_random(A.product().E1, rng), ec_random(A.product().E2, rng)}};
}

Fp2 surface_pairing(const Surface& A, const SurfacePoint& P, const SurfacePoint& Q, const Int& m,
                    Rng& rng) {
    if (A.is_jacobian())
        return weil_pairing(attach(A.jacobian(), P), attach(A.jacobian(), Q), m, rng);
    const auto& p = pair_of(P);
    const auto& q = pair_of(Q);
    return ec_weil(A.product().E1, p.P1, q.P1, m, rng) *
           ec_weil(A.product().E2, p.P2, q.P2, m, rng);
}

SurfacePoint surface_point(const MumfordDivisor& D) { return {D.d}; }

MumfordDivisor divisor_of(const Surface& A, const SurfacePoint& P) {
    if (!A.is_jacobian()) fail(Err::PointNotOnDomain, "surface is not a jacobian");
    return attach(A.jacobian(), P);
}

std::vector<std::uint8_t> surface_point_encode(const Surface& A, const SurfacePoint& P) {
    const FieldTower& T = A.tower();
    std::vector<std::uint8_t> out;
    if (P.is_jacobian()) {
        out.push_back(0);
        MumfordDivisor D = attach(A.jacobian(), P);
        auto body = divisor_encode(D);
        out.insert(out.end(), body.begin(), body.end());
        return out;
    }
    out.push_back(1);
    auto put_point = [&](const ECPoint& p) {
        out.push_back(p.inf ? 1 : 0);
        if (!p.inf) {
            T.encode(p.x, out);
            T.encode(p.y, out);
        }
    };
    put_point(P.pair().P1);
    put_point(P.pair().P2);
    return out;
}

Fingerprint surface_fingerprint(const Surface& A) {
    Fingerprint fp;
    if (A.is_jacobian()) {
        fp.split = false;
        fp.g = fingerprint(A.jacobian());
        return fp;
    }
    fp.split = true;
    Fp2 j1 = j_invariant(A.product().E1);
    Fp2 j2 = j_invariant(A.product().E2);
    if (lex_less(j2, j1)) std::swap(j1, j2);
    fp.j1 = j1;
    fp.j2 = j2;
    return fp;
}

std::vector<std::uint8_t> surface_encode(const Surface& A) {
    const FieldTower& T = A.tower();
    std::vector<std::uint8_t> out;
    if (A.is_jacobian()) {
        out.push_back(0);
        for (const auto& c : A.jacobian().f) T.encode(c, out);
        return out;
    }
    out.push_back(1);
    T.encode(A.product().E1.a, out);
    T.encode(A.product().E1.b, out);
    T.encode(A.product().E2.a, out);
    T.encode(A.product().E2.b, out);
    return out;
}

std::vector<std::uint8_t> fingerprint_encode(const FieldTower& T, const Fingerprint& fp) {
    std::vector<std::uint8_t> out;
    if (fp.split) {
        out.push_back(1);
        T.encode(fp.j1, out);
        T.encode(fp.j2, out);
        return out;
    }
    out.push_back(0);
    T.encode(fp.g.g1, out);
    T.encode(fp.g.g2, out);
    T.encode(fp.g.g3, out);
    out.push_back(fp.g.extended ? 1 : 0);
    if (fp.g.extended) {
        T.encode(fp.g.h1, out);
        T.encode(fp.g.h2, out);
    }
    return out;
}

} // namespace g2uds
