#include "g2uds/curve.hpp"
#include "g2uds/rng.hpp"
#include "oracle_igusa.hpp"

#include <doctest.h>

using namespace g2uds;

namespace {

FieldParams params59() { return make_params(2, 2, 3, 1, 5, 1, 1, -1); }
FieldParams params719() { return make_params(2, 4, 3, 2, 5, 1, 1, -1); }

Fp2 rand_elt(const FieldTower& T, Rng& rng) {
    return T.make(rng.below(T.params().p), rng.below(T.params().p));
}

Fp2 rand_nonzero(const FieldTower& T, Rng& rng) {
    for (;;) {
        Fp2 x = rand_elt(T, rng);
        if (!x.is_zero()) return x;
    }
}

std::vector<Fp2> distinct_roots(const FieldTower& T, Rng& rng, std::size_t n) {
    std::vector<Fp2> roots;
    while (roots.size() < n) {
        Fp2 r = rand_elt(T, rng);
        bool fresh = true;
        for (const auto& s : roots) fresh = fresh && r != s;
        if (fresh) roots.push_back(r);
    }
    return roots;
}

Genus2Curve curve_from_roots(const FieldTower& T, const std::vector<Fp2>& roots,
                             const Fp2& lead) {
    Poly<Fp2> f({lead});
    for (const auto& r : roots) f = f * Poly<Fp2>({-r, T.one()});
    return make_curve(T, f.c);
}

Moebius rand_moebius(const FieldTower& T, Rng& rng) {
    for (;;) {
        Moebius M{rand_elt(T, rng), rand_elt(T, rng), rand_elt(T, rng), rand_elt(T, rng)};
        if (!M.det().is_zero()) return M;
    }
}

} // namespace

TEST_CASE("transvectant invariants match root-expansion oracle") {
    for (auto params : {params59(), params719()}) {
        FieldTower T(params);
        Rng rng(0x1c01);
        for (int trial = 0; trial < 20; ++trial) {
            auto roots = distinct_roots(T, rng, 6);
            Fp2 lead = rand_nonzero(T, rng);
            Genus2Curve H = curve_from_roots(T, roots, lead);
            IgusaClebsch got = igusa_clebsch(H);
            auto want = oracle::icl_from_sextic_roots(T, roots, lead);
            CHECK(got.I2 == want.I2);
            CHECK(got.I4 == want.I4);
            CHECK(got.I6 == want.I6);
            CHECK(got.I10 == want.I10);
        }
    }
}

TEST_CASE("quintic models agree with the root oracle: y^2 = x^5 + x at p = 719") {
    FieldTower T(params719());
    // Roots of x^5 + x = x (x^4 + 1): zero and the primitive 8th roots of unity,
    // all rational over F_{p^2}.
    Fp2 i = *fq_sqrt(-T.one());
    Fp2 z = *fq_sqrt(i);
    std::vector<Fp2> roots{T.zero(), z, z * i, -z, -(z * i)};
    for (const auto& r : roots) {
        Fp2 v = fq_pow(r, 5) + r;
        REQUIRE((r.is_zero() || v.is_zero()));
    }

    Genus2Curve H = make_curve(T, {T.zero(), T.one(), T.zero(), T.zero(), T.zero(), T.one()});
    REQUIRE(H.degree == 5);
    IgusaClebsch got = igusa_clebsch(H);
    auto want = oracle::icl_from_quintic_roots(T, roots, T.one());
    CHECK(got.I2 == want.I2);
    CHECK(got.I4 == want.I4);
    CHECK(got.I6 == want.I6);
    CHECK(got.I10 == want.I10);

    IgusaInvariants J = igusa_invariants(H);
    CHECK(!J.J10.is_zero());
    CHECK(T.from_int(4) * J.J8 == J.J2 * J.J6 - J.J4 * J.J4);
}

TEST_CASE("J8 relation holds on random curves") {
    FieldTower T(params719());
    Rng rng(0x1c02);
    for (int trial = 0; trial < 50; ++trial) {
        auto roots = distinct_roots(T, rng, 6);
        Genus2Curve H = curve_from_roots(T, roots, rand_nonzero(T, rng));
        IgusaInvariants J = igusa_invariants(H);
        CHECK(T.from_int(4) * J.J8 == J.J2 * J.J6 - J.J4 * J.J4);
    }
}

TEST_CASE("singular models are rejected") {
    FieldTower T(params59());
    // y^2 = x^5: repeated root at zero.
    std::vector<Fp2> c(6, T.zero());
    c[5] = T.one();
    CHECK_THROWS_AS((void)make_curve(T, c), Error);
    // degree below 5
    CHECK_THROWS_AS((void)make_curve(T, {T.one(), T.one(), T.one()}), Error);
}

TEST_CASE("reference starting curve y^2 = x^6 + 1 is smooth at both primes") {
    for (auto params : {params59(), params719()}) {
        FieldTower T(params);
        std::vector<Fp2> c(7, T.zero());
        c[0] = c[6] = T.one();
        Genus2Curve H = make_curve(T, c);
        CHECK(H.degree == 6);
        CHECK(!igusa_invariants(H).J10.is_zero());
    }
}

TEST_CASE("g2 ratios from simple invariant tuples") {
    FieldTower T(params59());
    IgusaInvariants J{T.one(), T.one(), T.one(), T.one(), T.one()};
    G2Invariants g = g2_invariants(T, J);
    CHECK(g.g1 == T.one());
    CHECK(g.g2 == T.one());
    CHECK(g.g3 == T.one());
    CHECK(!g.extended);

    IgusaInvariants J0{T.zero(), T.from_int(2), T.from_int(3), T.from_int(5), T.from_int(7)};
    G2Invariants g0 = g2_invariants(T, J0);
    CHECK(g0.extended);
    CHECK(g0.g1.is_zero());
    CHECK(g0.g2.is_zero());
    CHECK(g0.g3.is_zero());
    CHECK(g0.h1 == T.from_int(6) * fq_inv(T.from_int(7)));

    IgusaInvariants Jsing{T.one(), T.one(), T.one(), T.one(), T.zero()};
    CHECK_THROWS_AS((void)g2_invariants(T, Jsing), Error);
}

TEST_CASE("fingerprint is a model invariant") {
    FieldTower T(params719());
    Rng rng(0x1c03);
    for (int trial = 0; trial < 50; ++trial) {
        auto roots = distinct_roots(T, rng, 6);
        Genus2Curve H = curve_from_roots(T, roots, rand_nonzero(T, rng));
        G2Invariants fp = fingerprint(H);

        Moebius M = rand_moebius(T, rng);
        Fp2 e = rand_nonzero(T, rng);
        Genus2Curve H2 = moebius_twist(H, M, e);
        CHECK(fingerprint(H2) == fp);

        // identity transforms
        Moebius id{T.one(), T.zero(), T.zero(), T.one()};
        CHECK(moebius_twist(H, id, T.one()) == H);
        CHECK(fingerprint(moebius_twist(H, id, rand_nonzero(T, rng))) == fp);
    }
}

TEST_CASE("degree can flip between 5 and 6 under twists") {
    FieldTower T(params719());
    Rng rng(0x1c04);
    auto roots = distinct_roots(T, rng, 6);
    Genus2Curve H = curve_from_roots(T, roots, T.one());
    // Send a root to infinity: x -> x + r0 then invert.
    Moebius M{roots[0], T.one(), T.one(), T.zero()};
    Genus2Curve H5 = moebius_twist(H, M, T.one());
    CHECK(H5.degree == 5);
    CHECK(fingerprint(H5) == fingerprint(H));
    // And back to a degree-6 model.
    Genus2Curve H6 = moebius_twist(H5, M.inverse(), T.one());
    CHECK(H6.degree == 6);
    CHECK(fingerprint(H6) == fingerprint(H));
}

TEST_CASE("random distinct curves get distinct fingerprints") {
    FieldTower T(params719());
    Rng rng(0x1c05);
    auto r1 = distinct_roots(T, rng, 6);
    auto r2 = distinct_roots(T, rng, 6);
    Genus2Curve A = curve_from_roots(T, r1, T.one());
    Genus2Curve B = curve_from_roots(T, r2, T.one());
    CHECK(fingerprint(A) != fingerprint(B));
}
