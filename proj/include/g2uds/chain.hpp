#pragma once

// (l,l)-isogeny steps and chains behind one engine contract. Jacobian domains
// support l = 2 (Richelot); elliptic-product domains support any prime l via
// factorwise Velu isogenies on product-form kernels. A chain decomposes an
// (l^e, l^e)-isogeny into e such steps, pushing the remaining kernel and any
// requested points along.

#include "g2uds/richelot.hpp"
#include "g2uds/surface.hpp"

namespace g2uds {

struct ProductVeluStep {
    ECIsogeny phi1, phi2;
};

struct IsogenyStep {
    Surface domain, codomain;
    std::variant<RichelotJacobianStep, RichelotProductStep, ProductVeluStep> impl;
};

// Richelot step wrapped in the surface-level contract.
IsogenyStep surface_richelot_step(const Genus2Curve& H, const QuadraticSplitting& S, Rng& rng);

// Factorwise Velu step on a product surface with kernel <(P1, 0), (0, P2)>,
// each P_i of exact prime order l. Errors: BadOrder.
IsogenyStep product_step(const EllipticProduct& A, const ECPoint& P1, const ECPoint& P2,
                         unsigned l);

// Group homomorphism onto the codomain; kernel generators map to identity.
// Errors: PointNotOnDomain.
SurfacePoint step_evaluate(const IsogenyStep& step, const SurfacePoint& P, Rng& rng);

struct ChainResult {
    Surface codomain;
    std::vector<SurfacePoint> pushed;
    std::vector<IsogenyStep> steps;
};

// Quotient by the maximal isotropic subgroup of A[l^e] generated by `gens`,
// as e (l,l)-steps; each step's kernel is the [l^(e-1-j)]-multiple image of
// the remaining generators. Errors: UnsupportedKernel (jacobian domain with
// l > 2, or a mid-chain product whose kernel is not product-form),
// BrokenChain (an intermediate kernel fails the step preconditions).
ChainResult isogeny_chain(const Surface& A, const std::vector<SurfacePoint>& gens, unsigned l,
                          unsigned e, const std::vector<SurfacePoint>& push, Rng& rng);

// Jacobian kernels described by scalars on a torsion basis.
ChainResult isogeny_chain(const Surface& A, const KernelSpec& K,
                          const std::vector<SurfacePoint>& push, Rng& rng);

} // namespace g2uds
