#pragma once

// Short-Weierstrass elliptic curves over F_{p^2}: group law, Weil pairing,
// torsion bases, and Velu isogenies of prime degree. This is one factor of
// the elliptic-product surface backend.

#include "g2uds/field.hpp"
#include "g2uds/rng.hpp"

#include <vector>

namespace g2uds {

struct EllipticCurve {
    const FieldTower* T = nullptr;
    Fp2 a, b; // y^2 = x^3 + a x + b

    friend bool operator==(const EllipticCurve& e1, const EllipticCurve& e2) {
        return e1.a == e2.a && e1.b == e2.b;
    }
    friend bool operator!=(const EllipticCurve& e1, const EllipticCurve& e2) {
        return !(e1 == e2);
    }
};

struct ECPoint {
    bool inf = true;
    Fp2 x, y;

    friend bool operator==(const ECPoint& P, const ECPoint& Q) {
        if (P.inf || Q.inf) return P.inf == Q.inf;
        return P.x == Q.x && P.y == Q.y;
    }
    friend bool operator!=(const ECPoint& P, const ECPoint& Q) { return !(P == Q); }
};

EllipticCurve make_elliptic(const FieldTower& T, const Fp2& a, const Fp2& b);

bool ec_on(const EllipticCurve& E, const ECPoint& P);
ECPoint ec_neg(const ECPoint& P);
ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_mul(const EllipticCurve& E, Int n, ECPoint P);
ECPoint ec_random(const EllipticCurve& E, Rng& rng);

Fp2 j_invariant(const EllipticCurve& E);

// m-Weil pairing by Miller's algorithm on shifted representatives.
// Requires [m]P = [m]Q = infinity.
Fp2 ec_weil(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q, const Int& m, Rng& rng);

// Two generators of E[l^e], certified independent by the pairing having full
// order. Needs l^e | p+1 and E supersingular with (p+1)^2 points.
std::pair<ECPoint, ECPoint> ec_torsion_basis(const EllipticCurve& E, unsigned l, unsigned e,
                                             Rng& rng);

// Velu isogeny with cyclic kernel of prime order l.
struct ECIsogeny {
    EllipticCurve domain, codomain;
    std::vector<ECPoint> kernel; // all nonzero kernel points
};

ECIsogeny velu_isogeny(const EllipticCurve& E, const ECPoint& K, unsigned l);
ECPoint velu_evaluate(const ECIsogeny& phi, const ECPoint& P);

} // namespace g2uds
