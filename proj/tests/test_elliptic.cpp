#include "g2uds/elliptic.hpp"

#include <doctest.h>

using namespace g2uds;

namespace {

FieldParams params59() { return make_params(2, 2, 3, 1, 5, 1, 1, -1); }

// supersingular with (p+1)^2 points over F_{p^2} for p = 2 mod 3
EllipticCurve curve_j0(const FieldTower& T) { return make_elliptic(T, T.zero(), T.one()); }

} // namespace

TEST_CASE("elliptic group laws and group exponent") {
    FieldTower T(params59());
    EllipticCurve E = curve_j0(T);
    Rng rng(0x3e01);
    ECPoint O{};
    for (int i = 0; i < 100; ++i) {
        ECPoint a = ec_random(E, rng), b = ec_random(E, rng), c = ec_random(E, rng);
        CHECK(ec_on(E, a));
        CHECK(ec_add(E, a, O) == a);
        CHECK(ec_add(E, a, ec_neg(a)) == O);
        CHECK(ec_add(E, a, b) == ec_add(E, b, a));
        CHECK(ec_add(E, ec_add(E, a, b), c) == ec_add(E, a, ec_add(E, b, c)));
        CHECK(ec_mul(E, T.params().p + 1, a) == O);
    }
    CHECK(j_invariant(E).is_zero());
}

TEST_CASE("elliptic weil pairing is bilinear with full order on a basis") {
    FieldTower T(params59());
    EllipticCurve E = curve_j0(T);
    Rng rng(0x3e02);
    for (unsigned l : {2u, 3u, 5u}) {
        unsigned e = l == 2 ? 2 : 1;
        Int m = int_pow(l, e);
        auto [P, Q] = ec_torsion_basis(E, l, e, rng);
        CHECK(ec_mul(E, m, P).inf);
        CHECK(!ec_mul(E, m / l, P).inf);
        Fp2 z = ec_weil(E, P, Q, m, rng);
        CHECK(fq_pow(z, m) == T.one());
        CHECK(fq_pow(z, m / l) != T.one()); // primitive: P, Q independent
        CHECK(ec_weil(E, P, P, m, rng) == T.one());
        CHECK(ec_weil(E, Q, P, m, rng) * z == T.one());
        Int a = 1 + rng.below(m - 1);
        CHECK(ec_weil(E, ec_mul(E, a, P), Q, m, rng) == fq_pow(z, a));
    }
}

TEST_CASE("velu isogenies: kernel, homomorphism, dual composition") {
    FieldTower T(params59());
    EllipticCurve E = curve_j0(T);
    Rng rng(0x3e03);
    for (unsigned l : {2u, 3u, 5u}) {
        auto [K, K2] = ec_torsion_basis(E, l, 1, rng);
        ECIsogeny phi = velu_isogeny(E, K, l);
        CHECK(phi.kernel.size() == l - 1);
        CHECK(velu_evaluate(phi, K).inf);
        for (int i = 0; i < 25; ++i) {
            ECPoint a = ec_random(E, rng), b = ec_random(E, rng);
            ECPoint lhs = velu_evaluate(phi, ec_add(E, a, b));
            ECPoint rhs = ec_add(phi.codomain, velu_evaluate(phi, a), velu_evaluate(phi, b));
            CHECK(lhs == rhs);
            CHECK(ec_mul(phi.codomain, T.params().p + 1, velu_evaluate(phi, a)).inf);
        }
        // dual: quotient by the image of the complementary l-torsion returns
        // to the starting isomorphism class
        ECPoint Kd = velu_evaluate(phi, K2);
        CHECK(!Kd.inf);
        ECIsogeny dual = velu_isogeny(phi.codomain, Kd, l);
        CHECK(j_invariant(dual.codomain) == j_invariant(E));
    }
    ECPoint O{};
    CHECK_THROWS_AS((void)velu_isogeny(E, O, 2), Error);
}
