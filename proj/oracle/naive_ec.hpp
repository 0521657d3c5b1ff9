#pragma once

// From-the-definition elliptic curve arithmetic for the brute-force oracles:
// chord-and-tangent addition, exhaustive point search by scanning x over the
// field, and Velu's original isogeny map (image coordinates as sums of
// coordinate differences over the kernel, codomain coefficients solved from
// two pushed sample points). Independent of the library's elliptic module.

#include "g2uds/field.hpp"

#include <vector>

namespace g2uds::oracle {

struct NCurve {
    const FieldTower* T = nullptr;
    Fp2 a, b;
};

struct NPt {
    bool inf = true;
    Fp2 x, y;
};

inline bool n_eq(const NPt& P, const NPt& Q) {
    if (P.inf || Q.inf) return P.inf == Q.inf;
    return P.x == Q.x && P.y == Q.y;
}

inline bool n_on(const NCurve& E, const NPt& P) {
    if (P.inf) return true;
    return P.y * P.y == P.x * P.x * P.x + E.a * P.x + E.b;
}

inline NPt n_neg(const NPt& P) {
    if (P.inf) return P;
    return {false, P.x, -P.y};
}

inline NPt n_add(const NCurve& E, const NPt& P, const NPt& Q) {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x) {
        if (P.y == -Q.y) return NPt{};
        // tangent
        Fp2 three = E.T->from_int(3), two = E.T->from_int(2);
        Fp2 lam = (three * P.x * P.x + E.a) * fq_inv(two * P.y);
        Fp2 x3 = lam * lam - P.x - Q.x;
        return {false, x3, lam * (P.x - x3) - P.y};
    }
    Fp2 lam = (Q.y - P.y) * fq_inv(Q.x - P.x);
    Fp2 x3 = lam * lam - P.x - Q.x;
    return {false, x3, lam * (P.x - x3) - P.y};
}

inline NPt n_mul(const NCurve& E, Int n, NPt P) {
    if (n < 0) {
        n = -n;
        P = n_neg(P);
    }
    NPt R{};
    while (n > 0) {
        if ((n & 1) != 0) R = n_add(E, R, P);
        P = n_add(E, P, P);
        n >>= 1;
    }
    return R;
}

// Every field element, in a fixed scan order.
inline std::vector<Fp2> all_fp2(const FieldTower& T) {
    std::vector<Fp2> out;
    const Int& p = T.params().p;
    for (Int c0 = 0; c0 < p; ++c0)
        for (Int c1 = 0; c1 < p; ++c1) out.push_back(T.make(c0, c1));
    return out;
}

// All affine points with the given x (0, 1 or 2 of them).
inline std::vector<NPt> n_points_at(const NCurve& E, const Fp2& x) {
    Fp2 rhs = x * x * x + E.a * x + E.b;
    std::vector<NPt> out;
    if (rhs.is_zero()) {
        out.push_back({false, x, E.T->zero()});
        return out;
    }
    if (auto y = fq_sqrt(rhs)) {
        out.push_back({false, x, *y});
        out.push_back({false, x, -*y});
    }
    return out;
}

// Velu's map: X = x_P + sum over nonzero kernel points of (x_{P+Q} - x_Q),
// and likewise for Y. Kernel points map to infinity.
inline NPt n_velu_image(const NCurve& E, const std::vector<NPt>& kernel_nonzero, const NPt& P) {
    if (P.inf) return P;
    for (const auto& Q : kernel_nonzero)
        if (n_eq(P, Q)) return NPt{};
    Fp2 X = P.x, Y = P.y;
    for (const auto& Q : kernel_nonzero) {
        NPt S = n_add(E, P, Q);
        X = X + S.x - Q.x;
        Y = Y + S.y - Q.y;
    }
    return {false, X, Y};
}

// Codomain coefficients solved linearly from two pushed points with distinct
// x-coordinates, scanning sample points from the curve equation.
inline NCurve n_velu_codomain(const NCurve& E, const std::vector<NPt>& kernel_nonzero) {
    const FieldTower& T = *E.T;
    std::vector<NPt> images;
    for (Int c0 = 0; c0 < T.params().p && images.size() < 2; ++c0)
        for (Int c1 = 0; c1 < T.params().p && images.size() < 2; ++c1) {
            for (const NPt& P : n_points_at(E, T.make(c0, c1))) {
                NPt I = n_velu_image(E, kernel_nonzero, P);
                if (I.inf) continue;
                if (!images.empty() && images[0].x == I.x) continue;
                images.push_back(I);
                if (images.size() == 2) break;
            }
        }
    if (images.size() < 2) fail(Err::InternalError, "velu codomain needs two sample images");
    // y^2 - x^3 = a x + b at both images
    Fp2 r1 = images[0].y * images[0].y - images[0].x * images[0].x * images[0].x;
    Fp2 r2 = images[1].y * images[1].y - images[1].x * images[1].x * images[1].x;
    Fp2 a = (r1 - r2) * fq_inv(images[0].x - images[1].x);
    Fp2 b = r1 - a * images[0].x;
    return {&T, a, b};
}

inline Fp2 n_j_invariant(const NCurve& E) {
    const FieldTower& T = *E.T;
    Fp2 a3 = T.from_int(4) * E.a * E.a * E.a;
    Fp2 den = a3 + T.from_int(27) * E.b * E.b;
    return T.from_int(1728) * a3 * fq_inv(den);
}

// Quotient by the cyclic subgroup generated by K of order l^e, one prime step
// at a time, carrying tracked points along.
struct NChain {
    NCurve codomain;
    std::vector<NPt> tracked;
};

inline NChain n_cyclic_chain(const NCurve& E0, const NPt& K0, unsigned l, unsigned e,
                             std::vector<NPt> tracked) {
    NCurve E = E0;
    NPt K = K0;
    for (unsigned s = 0; s < e; ++s) {
        NPt S = n_mul(E, int_pow(Int(l), e - 1 - s), K);
        std::vector<NPt> ker;
        NPt acc = S;
        for (unsigned i = 1; i < l; ++i) {
            ker.push_back(acc);
            acc = n_add(E, acc, S);
        }
        NCurve next = n_velu_codomain(E, ker);
        K = n_velu_image(E, ker, K);
        for (auto& P : tracked) P = n_velu_image(E, ker, P);
        E = next;
    }
    return {E, std::move(tracked)};
}

} // namespace g2uds::oracle
