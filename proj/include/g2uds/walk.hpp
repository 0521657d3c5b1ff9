#pragma once

// Random-walk generation of a starting abelian surface: a genus-2 double
// cover of a supersingular elliptic curve, pushed through a sequence of
// random Richelot steps (uniform over the 15 splittings, never immediately
// backtracking along the dual of the previous step).

#include "g2uds/chain.hpp"

namespace g2uds {

// y^2 = c(x^2) for E: y^2 = c(x), renormalized to an odd model.
Genus2Curve double_cover(const EllipticCurve& E, Rng& rng);

// Endpoint after `steps` random Richelot steps from the double cover of E.
// Split neighbors are skipped unless the caller permits a product endpoint on
// the final step; WalkStuck if no non-split neighbor remains.
Surface random_walk_setup(const EllipticCurve& E, unsigned steps, Rng& rng,
                          bool allow_product_endpoint = false);

} // namespace g2uds
