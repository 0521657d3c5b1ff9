#pragma once

// Genus-2 curves y^2 = f(x) with deg f in {5, 6}, their Igusa-Clebsch and
// Igusa invariants (computed by transvectants of the binary sextic, valid in
// characteristic > 5), absolute G2-invariants and isomorphism fingerprints.

#include "g2uds/field.hpp"
#include "g2uds/poly.hpp"

#include <array>

namespace g2uds {

struct Genus2Curve {
    const FieldTower* T = nullptr;
    std::array<Fp2, 7> f; // f0..f6; f6 = 0 for degree-5 models
    int degree = 0;

    Poly<Fp2> poly() const {
        return Poly<Fp2>(std::vector<Fp2>(f.begin(), f.end()));
    }
    friend bool operator==(const Genus2Curve& a, const Genus2Curve& b) {
        return a.f == b.f;
    }
};

// Validates smoothness (degree >= 5 and J10 != 0); throws SingularCurve.
Genus2Curve make_curve(const FieldTower& T, const std::vector<Fp2>& coeffs);

struct IgusaClebsch {
    Fp2 I2, I4, I6, I10;
};

struct IgusaInvariants {
    Fp2 J2, J4, J6, J8, J10;
};

struct G2Invariants {
    Fp2 g1, g2, g3;
    // When J2 = 0 the three ratios above collapse; the fingerprint is extended
    // with two further absolute ratios to keep distinct classes apart.
    bool extended = false;
    Fp2 h1, h2;

    friend bool operator==(const G2Invariants& a, const G2Invariants& b) {
        if (a.extended != b.extended) return false;
        if (!(a.g1 == b.g1 && a.g2 == b.g2 && a.g3 == b.g3)) return false;
        return !a.extended || (a.h1 == b.h1 && a.h2 == b.h2);
    }
    friend bool operator!=(const G2Invariants& a, const G2Invariants& b) { return !(a == b); }
};

IgusaClebsch igusa_clebsch(const Genus2Curve& H);
IgusaInvariants igusa_invariants(const Genus2Curve& H);
G2Invariants g2_invariants(const FieldTower& T, const IgusaInvariants& J);
G2Invariants fingerprint(const Genus2Curve& H);

// x -> (a x + b)/(c x + d), y -> e y / (c x + d)^3.
struct Moebius {
    Fp2 a, b, c, d;

    Fp2 det() const { return a * d - b * c; }
    Fp2 apply(const Fp2& x) const; // errors on the pole
    Moebius inverse() const;
};

Genus2Curve moebius_twist(const Genus2Curve& H, const Moebius& M, const Fp2& e);

} // namespace g2uds
