#pragma once

// Principally polarized abelian surfaces as they occur in the 2-isogeny
// graph: either the jacobian of a genus-2 curve or a product of two elliptic
// curves. Points, group operations and fingerprints dispatch on the variant.

#include "g2uds/elliptic.hpp"
#include "g2uds/mumford.hpp"

#include <variant>
#include <vector>

namespace g2uds {

struct EllipticProduct {
    EllipticCurve E1, E2;

    friend bool operator==(const EllipticProduct& a, const EllipticProduct& b) {
        return a.E1 == b.E1 && a.E2 == b.E2;
    }
};

struct Surface {
    std::variant<Genus2Curve, EllipticProduct> v;

    bool is_jacobian() const { return std::holds_alternative<Genus2Curve>(v); }
    const Genus2Curve& jacobian() const { return std::get<Genus2Curve>(v); }
    const EllipticProduct& product() const { return std::get<EllipticProduct>(v); }
    const FieldTower& tower() const {
        return is_jacobian() ? *jacobian().T : *product().E1.T;
    }

    friend bool operator==(const Surface& a, const Surface& b) {
        if (a.is_jacobian() != b.is_jacobian()) return false;
        return a.is_jacobian() ? a.jacobian() == b.jacobian() : a.product() == b.product();
    }
    friend bool operator!=(const Surface& a, const Surface& b) { return !(a == b); }
};

struct ProductPoint {
    ECPoint P1, P2;

    friend bool operator==(const ProductPoint& a, const ProductPoint& b) {
        return a.P1 == b.P1 && a.P2 == b.P2;
    }
};

// Points carry no back-pointer to their surface; operations take the surface
// explicitly so surfaces can be copied around freely.
struct SurfacePoint {
    std::variant<Divisor<Fp2>, ProductPoint> v;

    bool is_jacobian() const { return std::holds_alternative<Divisor<Fp2>>(v); }
    const Divisor<Fp2>& divisor() const { return std::get<Divisor<Fp2>>(v); }
    const ProductPoint& pair() const { return std::get<ProductPoint>(v); }

    friend bool operator==(const SurfacePoint& a, const SurfacePoint& b) {
        if (a.is_jacobian() != b.is_jacobian()) return false;
        return a.is_jacobian() ? a.divisor() == b.divisor() : a.pair() == b.pair();
    }
    friend bool operator!=(const SurfacePoint& a, const SurfacePoint& b) { return !(a == b); }
};

SurfacePoint surface_identity(const Surface& A);
bool surface_on(const Surface& A, const SurfacePoint& P);
SurfacePoint surface_add(const Surface& A, const SurfacePoint& P, const SurfacePoint& Q);
SurfacePoint surface_neg(const Surface& A, const SurfacePoint& P);
SurfacePoint surface_mul(const Surface& A, const Int& n, const SurfacePoint& P);
SurfacePoint surface_random(const Surface& A, Rng& rng);

// l^e-Weil pairing on the surface: jacobian pairing, or the product of the
// factor pairings.
Fp2 surface_pairing(const Surface& A, const SurfacePoint& P, const SurfacePoint& Q, const Int& m,
                    Rng& rng);

// Conversions to and from the jacobian point type.
SurfacePoint surface_point(const MumfordDivisor& D);
MumfordDivisor divisor_of(const Surface& A, const SurfacePoint& P);

std::vector<std::uint8_t> surface_point_encode(const Surface& A, const SurfacePoint& P);

struct Fingerprint {
    bool split = false;
    G2Invariants g; // jacobian variant
    Fp2 j1, j2;     // product variant, sorted

    friend bool operator==(const Fingerprint& a, const Fingerprint& b) {
        if (a.split != b.split) return false;
        return a.split ? (a.j1 == b.j1 && a.j2 == b.j2) : a.g == b.g;
    }
    friend bool operator!=(const Fingerprint& a, const Fingerprint& b) { return !(a == b); }
};

Fingerprint surface_fingerprint(const Surface& A);

std::vector<std::uint8_t> surface_encode(const Surface& A);
std::vector<std::uint8_t> fingerprint_encode(const FieldTower& T, const Fingerprint& fp);

} // namespace g2uds
