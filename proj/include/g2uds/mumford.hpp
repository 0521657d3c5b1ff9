#pragma once

// Divisor-class arithmetic on genus-2 jacobians in Mumford representation
// (u, v) with u monic, deg u <= 2, u | f - v^2, on odd (degree-5) models.
// The core is generic over the coefficient field so the same code runs over
// F_{p^2} and, for isogeny evaluation, over F_{p^4}. Additions can emit the
// Miller function pieces they produce, which is how the Weil pairing below
// is computed.

#include "g2uds/curve.hpp"
#include "g2uds/poly.hpp"
#include "g2uds/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

namespace g2uds {

// ---------------------------------------------------------------------------
// Generic Cantor arithmetic
// ---------------------------------------------------------------------------

template <class K>
struct Divisor {
    Poly<K> u, v;

    bool is_identity() const { return u.deg() == 0; }
    friend bool operator==(const Divisor& a, const Divisor& b) { return a.u == b.u && a.v == b.v; }
    friend bool operator!=(const Divisor& a, const Divisor& b) { return !(a == b); }
};

template <class K>
Divisor<K> divisor_identity(const K& one) {
    return {Poly<K>({one}), Poly<K>{}};
}

template <class K>
bool divisor_on(const Poly<K>& f, const Divisor<K>& D) {
    if (D.u.is_zero() || !(D.u.lead() == fq_one_like(D.u.lead()))) return false;
    if (D.v.deg() >= D.u.deg() && D.u.deg() > 0) return false;
    return ((f - D.v * D.v) % D.u).is_zero();
}

template <class K>
Divisor<K> divisor_neg(const Divisor<K>& D) {
    return {D.u, -D.v};
}

// One Miller function piece. A 'line' piece is the function y - g(x); a
// non-line piece is the plain polynomial g(x). num = false means the piece
// sits in the denominator.
template <class K>
struct MillerPiece {
    bool is_line;
    Poly<K> g;
    bool num;
};

// Cantor addition with reduction. Emits the function c relating the inputs
// to the output, div(c) = D1 + D2 - D3 (up to infinity), piece by piece.
template <class K, class Emit>
Divisor<K> cantor_add_emit(const Poly<K>& f, const Divisor<K>& D1, const Divisor<K>& D2,
                           Emit&& emit) {
    Poly<K> e1, e2, c1, c2;
    Poly<K> d1 = poly_xgcd(D1.u, D2.u, e1, e2);
    Poly<K> d = poly_xgcd(d1, D1.v + D2.v, c1, c2);
    Poly<K> u = poly_exact_div(D1.u * D2.u, d * d);
    Poly<K> num = (c1 * e1) * D1.u * D2.v + (c1 * e2) * D2.u * D1.v + c2 * (D1.v * D2.v + f);
    Poly<K> v = poly_exact_div(num, d) % u;
    if (d.deg() > 0) emit(MillerPiece<K>{false, d, true});
    while (u.deg() > 2) {
        Poly<K> up = poly_monic(poly_exact_div(f - v * v, u));
        emit(MillerPiece<K>{true, v, true});
        emit(MillerPiece<K>{false, up, false});
        v = (-v) % up;
        u = up;
    }
    return {poly_monic(u), v};
}

template <class K>
Divisor<K> cantor_add(const Poly<K>& f, const Divisor<K>& D1, const Divisor<K>& D2) {
    return cantor_add_emit(f, D1, D2, [](const MillerPiece<K>&) {});
}

template <class K>
Divisor<K> cantor_mul(const Poly<K>& f, Int n, Divisor<K> D) {
    Divisor<K> r = divisor_identity(fq_one_like(f.lead()));
    if (n < 0) {
        D = divisor_neg(D);
        n = -n;
    }
    while (n > 0) {
        if (bit_test(n, 0)) r = cantor_add(f, r, D);
        D = cantor_add(f, D, D);
        n >>= 1;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Polynomial root finding (Cantor-Zassenhaus, for the small degrees here)
// ---------------------------------------------------------------------------

template <class K>
Poly<K> poly_powmod(Poly<K> base, Int exp, const Poly<K>& mod) {
    Poly<K> r({fq_one_like(mod.lead())});
    base = base % mod;
    while (exp > 0) {
        if (bit_test(exp, 0)) r = (r * base) % mod;
        base = (base * base) % mod;
        exp >>= 1;
    }
    return r;
}

// All roots in K of a nonzero polynomial, with multiplicity stripped.
template <class K>
std::vector<K> poly_roots(const Poly<K>& f, Rng& rng) {
    std::vector<K> out;
    if (f.deg() < 1) return out;
    K one = fq_one_like(f.lead());
    Int q = field_order(f.lead());
    Poly<K> x({one - one, one});
    // split off the part with roots in K: gcd(f, x^q - x)
    Poly<K> g = poly_gcd(poly_powmod(x, q, f) - x, f);
    std::function<void(Poly<K>)> split = [&](Poly<K> h) {
        h = poly_monic(h);
        if (h.deg() == 0) return;
        if (h.deg() == 1) {
            out.push_back(-h[0]);
            return;
        }
        for (;;) {
            K a = kth_element(f.lead().F, rng.below(q));
            Poly<K> probe = poly_powmod(x + Poly<K>({a}), (q - 1) / 2, h) - Poly<K>({one});
            Poly<K> d = poly_gcd(probe, h);
            if (d.deg() > 0 && d.deg() < h.deg()) {
                split(d);
                split(poly_exact_div(h, d));
                return;
            }
        }
    };
    if (g.deg() > 0) split(g);
    return out;
}

// ---------------------------------------------------------------------------
// Curve-attached divisors over F_{p^2}
// ---------------------------------------------------------------------------

struct MumfordDivisor {
    const Genus2Curve* H = nullptr;
    Divisor<Fp2> d;

    bool is_identity() const { return d.is_identity(); }
    friend bool operator==(const MumfordDivisor& a, const MumfordDivisor& b) {
        return a.d == b.d;
    }
    friend bool operator!=(const MumfordDivisor& a, const MumfordDivisor& b) {
        return !(a.d == b.d);
    }
};

MumfordDivisor jac_identity(const Genus2Curve& H);
bool on_jacobian(const MumfordDivisor& D);
MumfordDivisor jac_add(const MumfordDivisor& D1, const MumfordDivisor& D2);
MumfordDivisor jac_neg(const MumfordDivisor& D);
MumfordDivisor jac_mul(const Int& n, const MumfordDivisor& D);

// Uniform-ish sampling: compose two random curve points. Reproducible for a
// fixed rng state.
MumfordDivisor random_divisor(const Genus2Curve& H, Rng& rng);

// Canonical byte encoding: deg(u) byte, then u and v coefficients (low to
// high, deg(u) resp. max(deg(u),1) of them).
std::vector<std::uint8_t> divisor_encode(const MumfordDivisor& D);

// m-Weil pairing via Miller functions on randomized degree-zero
// representatives. Requires [m]D1 = [m]D2 = identity.
Fp2 weil_pairing(const MumfordDivisor& D1, const MumfordDivisor& D2, const Int& m, Rng& rng);

struct TorsionBasis {
    std::array<MumfordDivisor, 4> points;
    unsigned l = 0, e = 0;

    Int order() const { return int_pow(l, e); }
};

// Four independent points of exact order l^e generating J[l^e], certified by
// the Weil-pairing Gram matrix being nondegenerate mod l.
TorsionBasis torsion_basis(const Genus2Curve& H, unsigned l, unsigned e, Rng& rng);

struct KernelSpec {
    std::array<Int, 12> scalars;
    TorsionBasis basis;
    std::array<MumfordDivisor, 3> generators;
    unsigned l = 0, e = 0;
};

// Builds the three generators sum([s_{4k+i}] B_i) and verifies the generated
// subgroup is maximal isotropic: order exactly l^{2e} and pairing-trivial.
KernelSpec kernel_from_scalars(const std::array<Int, 12>& scalars, const TorsionBasis& basis,
                               Rng& rng);

// Enumerates the subgroup generated by the given divisors (small orders only).
std::vector<MumfordDivisor> span_of(const std::vector<MumfordDivisor>& gens, const Int& gen_order);

} // namespace g2uds
