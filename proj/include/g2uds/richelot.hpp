#pragma once

// Richelot (2,2)-isogenies between genus-2 jacobians. A quadratic splitting
// f = G1*G2*G3 encodes the kernel; the codomain is y^2 = delta^-1 H1 H2 H3
// with H_i the classical brackets [G_j, G_k] = G_j' G_k - G_j G_k' and delta
// the determinant of the coefficient matrix (rows = ascending coefficients of
// G1, G2, G3). With this sign convention the correspondence
//   u'(X) = G1(x0) H1(X) + G2(x0) H2(X),
//   v'(X) = G1(x0) H1(X) (X - x0) / y0  (mod u')
// maps points of the domain to divisors on the codomain with no stray
// constant, because sum_i G_i(x) H_i(X) = -delta (x - X)^2.
//
// delta = 0 is the split case: the codomain degenerates to a product of two
// elliptic curves obtained by diagonalizing the pencil of quadratics.
//
// Domains are always odd (degree-5) models; jacobian codomains are
// renormalized to odd models and the step remembers the model change so
// divisor classes can be pushed through it.

#include "g2uds/elliptic.hpp"
#include "g2uds/mumford.hpp"

#include <variant>

namespace g2uds {

struct QuadraticSplitting {
    // f = G1 * G2 * G3; on an odd model G3 is the linear factor (its root is
    // paired with the Weierstrass point at infinity).
    Poly<Fp2> G1, G2, G3;
};

// Kernel given as the three nonzero elements of a Klein four-group of
// 2-torsion classes. Errors: NotOrder4, NotIsotropic.
QuadraticSplitting splitting_from_kernel(const Genus2Curve& H,
                                         const std::array<MumfordDivisor, 3>& kernel);

// The 2-torsion classes {0, [G1], [G2], [G3]} encoded by a splitting.
std::array<MumfordDivisor, 3> kernel_of_splitting(const Genus2Curve& H,
                                                  const QuadraticSplitting& S);

// All 15 splittings of an odd model (perfect matchings of the six Weierstrass
// points including infinity).
std::vector<QuadraticSplitting> all_splittings(const Genus2Curve& H, Rng& rng);

Fp2 splitting_delta(const QuadraticSplitting& S);

struct RichelotJacobianStep {
    Genus2Curve domain;
    QuadraticSplitting S;
    std::array<Poly<Fp2>, 3> brackets;
    Fp2 delta;
    Genus2Curve codomain_even; // y^2 = delta^-1 H1 H2 H3 (degree 5 or 6)
    Genus2Curve codomain;      // odd model of the same curve
    Moebius M;                 // codomain coords -> codomain_even coords
    Fp2 e;                     // y-scale of that model change
};

struct RichelotProductStep {
    Genus2Curve domain;
    QuadraticSplitting S;
    Moebius N;            // diagonalized coords -> domain coords: x = N(x~)
    std::array<Fp2, 3> A; // diagonalized quadratics A_i x~^2 + B_i
    std::array<Fp2, 3> B;
    // E1 receives (t, w) = (x~^2, y~), E2 receives (s, z) = (x~^-2, y~ x~^-3),
    // each followed by the affine normalization (alpha * . + beta, gamma * .)
    // onto the short Weierstrass model.
    EllipticCurve E1, E2;
    Fp2 al1, be1, ga1, al2, be2, ga2;
    ECPoint winf1, winf2; // images of the domain point at infinity
};

using RichelotStep = std::variant<RichelotJacobianStep, RichelotProductStep>;

RichelotStep richelot_step(const Genus2Curve& H, const QuadraticSplitting& S, Rng& rng);

// Push a divisor class through a jacobian-codomain step.
MumfordDivisor richelot_push(const RichelotJacobianStep& step, const MumfordDivisor& D,
                             Rng& rng);

// Push through a split-codomain step onto the two elliptic factors.
std::pair<ECPoint, ECPoint> richelot_push_split(const RichelotProductStep& step,
                                                const MumfordDivisor& D, Rng& rng);

// Kernel splitting of the dual isogeny, on the odd codomain model: the
// brackets pulled back through the model change and rescaled so the three
// factors multiply to the codomain polynomial exactly.
QuadraticSplitting dual_splitting(const RichelotJacobianStep& step);

// The dual step, calibrated so that pushing through step then dual equals
// multiplication by 2 on the original model.
RichelotJacobianStep richelot_dual(const RichelotJacobianStep& step, Rng& rng);

// Transport of divisor classes across a model change x -> M(x),
// y -> e*y/(cx+d)^3 between genus-2 models (generic inputs; degenerate
// configurations are resolved by randomization).
MumfordDivisor transport_divisor(const Genus2Curve& from, const Genus2Curve& to,
                                 const Moebius& M, const Fp2& e, const MumfordDivisor& D,
                                 Rng& rng);

} // namespace g2uds
