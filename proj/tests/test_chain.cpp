#include "g2uds/chain.hpp"
#include "g2uds/walk.hpp"

#include <doctest.h>

using namespace g2uds;

namespace {

FieldParams params59() { return make_params(2, 2, 3, 1, 5, 1, 1, -1); }

Genus2Curve superspecial_odd_model(const FieldTower& T, Rng& rng) {
    std::vector<Fp2> c(7, T.zero());
    c[0] = c[6] = T.one();
    Genus2Curve H6 = make_curve(T, c);
    auto roots = poly_roots(H6.poly(), rng);
    REQUIRE(!roots.empty());
    Moebius M{roots[0], T.one(), T.one(), T.zero()};
    return moebius_twist(H6, M, T.one());
}

KernelSpec sample_kernel(const TorsionBasis& basis, Rng& rng) {
    Int le = basis.order();
    for (;;) {
        std::array<Int, 12> s;
        for (auto& x : s) x = rng.below(le);
        try {
            return kernel_from_scalars(s, basis, rng);
        } catch (const Error&) {
            continue;
        }
    }
}

} // namespace

TEST_CASE("surface group operations dispatch across both variants") {
    FieldTower T(params59());
    Rng rng(0x4c01);
    Surface J{superspecial_odd_model(T, rng)};
    EllipticCurve E = make_elliptic(T, T.zero(), T.one());
    Surface P{EllipticProduct{E, E}};
    for (const Surface& A : {J, P}) {
        SurfacePoint id = surface_identity(A);
        CHECK(surface_on(A, id));
        for (int i = 0; i < 10; ++i) {
            SurfacePoint a = surface_random(A, rng);
            SurfacePoint b = surface_random(A, rng);
            CHECK(surface_on(A, a));
            CHECK(surface_add(A, a, id) == a);
            CHECK(surface_add(A, a, surface_neg(A, a)) == id);
            CHECK(surface_add(A, a, b) == surface_add(A, b, a));
            CHECK(surface_mul(A, T.params().p + 1, a) == id); // superspecial exponent
        }
    }
    // points of the wrong variant are rejected
    CHECK_THROWS_AS(surface_add(J, surface_identity(J), surface_identity(P)), Error);
}

TEST_CASE("fingerprints distinguish variants and ignore factor order") {
    FieldTower T(params59());
    Rng rng(0x4c02);
    Genus2Curve H = superspecial_odd_model(T, rng);
    EllipticCurve E1 = make_elliptic(T, T.zero(), T.one());
    EllipticCurve E2 = make_elliptic(T, T.from_int(3), T.from_int(2));
    CHECK(surface_fingerprint(Surface{EllipticProduct{E1, E2}}) ==
          surface_fingerprint(Surface{EllipticProduct{E2, E1}}));
    CHECK(surface_fingerprint(Surface{H}) != surface_fingerprint(Surface{EllipticProduct{E1, E2}}));
}

TEST_CASE("a jacobian chain kills its kernel and preserves coprime orders") {
    FieldTower T(params59());
    Rng rng(0x4c03);
    Genus2Curve H = superspecial_odd_model(T, rng);
    Surface A{H};
    TorsionBasis b4 = torsion_basis(H, 2, 2, rng);
    KernelSpec K = sample_kernel(b4, rng);

    // push a 15-torsion point through and check its order is untouched
    MumfordDivisor D15 = jac_mul((T.params().p + 1) / 15, random_divisor(H, rng));
    while (!jac_mul(5, jac_mul(3, D15)).is_identity() || jac_mul(5, D15).is_identity() ||
           jac_mul(3, D15).is_identity())
        D15 = jac_mul((T.params().p + 1) / 15, random_divisor(H, rng));

    ChainResult res = isogeny_chain(A, K, {surface_point(D15)}, rng);
    CHECK(res.steps.size() == 2);
    CHECK(res.pushed.size() == 1);
    const SurfacePoint& img = res.pushed[0];
    CHECK(surface_on(res.codomain, img));
    CHECK(surface_mul(res.codomain, 15, img) == surface_identity(res.codomain));
    CHECK(surface_mul(res.codomain, 3, img) != surface_identity(res.codomain));
    CHECK(surface_mul(res.codomain, 5, img) != surface_identity(res.codomain));

    // every kernel element dies; counting gives exactly l^(2e) of them
    auto span = span_of({K.generators[0], K.generators[1], K.generators[2]}, K.basis.order());
    CHECK(span.size() == 16);
    for (const auto& el : span) {
        SurfacePoint cur{el.d};
        Surface at = A;
        for (const auto& st : res.steps) {
            cur = step_evaluate(st, cur, rng);
            at = st.codomain;
        }
        CHECK(cur == surface_identity(at));
    }
}

TEST_CASE("a single-step chain agrees with the bare step") {
    FieldTower T(params59());
    Rng rng(0x4c04);
    Genus2Curve H = superspecial_odd_model(T, rng);
    Surface A{H};
    auto splits = all_splittings(H, rng);
    for (const auto& S : splits) {
        RichelotStep raw = richelot_step(H, S, rng);
        auto* js = std::get_if<RichelotJacobianStep>(&raw);
        if (js == nullptr) continue;
        auto kern = kernel_of_splitting(H, S);
        std::vector<SurfacePoint> gens;
        for (const auto& k : kern) gens.push_back(surface_point(k));
        MumfordDivisor D = random_divisor(H, rng);
        ChainResult res = isogeny_chain(A, gens, 2, 1, {surface_point(D)}, rng);
        CHECK(res.codomain == Surface{js->codomain});
        CHECK(res.pushed[0].divisor() == richelot_push(*js, D, rng).d);
        break;
    }
}

TEST_CASE("product chains match factorwise isogeny composition") {
    FieldTower T(params59());
    Rng rng(0x4c05);
    EllipticCurve E = make_elliptic(T, T.zero(), T.one());
    Surface A{EllipticProduct{E, E}};
    for (auto [l, e] : {std::pair<unsigned, unsigned>{2, 2}, {3, 1}, {5, 1}}) {
        auto [P1, Q1] = ec_torsion_basis(E, l, e, rng);
        auto [P2, Q2] = ec_torsion_basis(E, l, e, rng);
        (void)Q1;
        (void)Q2;
        std::vector<SurfacePoint> gens{{ProductPoint{P1, ECPoint{}}},
                                       {ProductPoint{ECPoint{}, P2}}};
        SurfacePoint probe = surface_random(A, rng);
        ChainResult res = isogeny_chain(A, gens, l, e, {probe}, rng);
        CHECK(res.steps.size() == e);

        // factorwise reference composition
        auto compose = [&](ECPoint K0, ECPoint probe_pt) {
            EllipticCurve cur = E;
            for (unsigned j = 0; j < e; ++j) {
                ECIsogeny phi = velu_isogeny(cur, ec_mul(cur, int_pow(Int(l), e - 1 - j), K0), l);
                K0 = velu_evaluate(phi, K0);
                probe_pt = velu_evaluate(phi, probe_pt);
                cur = phi.codomain;
            }
            return std::pair<EllipticCurve, ECPoint>{cur, probe_pt};
        };
        auto [C1, i1] = compose(P1, probe.pair().P1);
        auto [C2, i2] = compose(P2, probe.pair().P2);
        CHECK(res.codomain == Surface{EllipticProduct{C1, C2}});
        CHECK(res.pushed[0] == SurfacePoint{ProductPoint{i1, i2}});
    }
}

TEST_CASE("chain codomain fingerprints depend only on the kernel subgroup") {
    FieldTower T(params59());
    Rng rng(0x4c06);
    EllipticCurve E = make_elliptic(T, T.zero(), T.one());
    Surface A{EllipticProduct{E, E}};
    unsigned l = 3, e = 1;
    auto [P1, Q1] = ec_torsion_basis(E, l, e, rng);
    (void)Q1;
    auto [P2, Q2] = ec_torsion_basis(E, l, e, rng);
    (void)Q2;
    Fingerprint base;
    bool have_base = false;
    for (int trial = 0; trial < 10; ++trial) {
        // regenerate the same subgroup from a random invertible combination
        Int a = 1 + rng.below(l - 1), d = 1 + rng.below(l - 1);
        Int b = rng.below(l), c = rng.below(l);
        if ((a * d - b * c) % l == 0) continue;
        std::vector<SurfacePoint> gens{
            {ProductPoint{ec_mul(E, a, P1), ec_mul(E, b, P2)}},
            {ProductPoint{ec_mul(E, c, P1), ec_mul(E, d, P2)}}};
        ChainResult res = isogeny_chain(A, gens, l, e, {}, rng);
        Fingerprint fp = surface_fingerprint(res.codomain);
        if (!have_base) {
            base = fp;
            have_base = true;
        } else {
            CHECK(fp == base);
        }
    }

    // jacobian side: any two of the three kernel classes generate it
    Genus2Curve H = superspecial_odd_model(T, rng);
    for (const auto& S : all_splittings(H, rng)) {
        RichelotStep raw = richelot_step(H, S, rng);
        if (!std::holds_alternative<RichelotJacobianStep>(raw)) continue;
        auto kern = kernel_of_splitting(H, S);
        Fingerprint ref;
        bool first = true;
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = 0; j < 3; ++j) {
                if (i == j) continue;
                ChainResult res = isogeny_chain(
                    Surface{H}, {surface_point(kern[i]), surface_point(kern[j])}, 2, 1, {}, rng);
                Fingerprint fp = surface_fingerprint(res.codomain);
                if (first) {
                    ref = fp;
                    first = false;
                } else {
                    CHECK(fp == ref);
                }
            }
        break;
    }
}

TEST_CASE("chains reject unsupported and broken kernels") {
    FieldTower T(params59());
    Rng rng(0x4c07);
    Genus2Curve H = superspecial_odd_model(T, rng);
    Surface A{H};

    // jacobian domain with l > 2
    TorsionBasis b3 = torsion_basis(H, 3, 1, rng);
    bool unsupported = false;
    try {
        isogeny_chain(A, {surface_point(b3.points[0]), surface_point(b3.points[1])}, 3, 1, {},
                      rng);
    } catch (const Error& e) {
        unsupported = e.code() == Err::UnsupportedKernel;
    }
    CHECK(unsupported);

    // a non-isotropic 2-torsion pair is refused as a broken chain
    auto r = poly_roots(H.poly(), rng);
    auto quad = [&](const Fp2& a, const Fp2& b) {
        return Poly<Fp2>({a * b, -(a + b), T.one()});
    };
    MumfordDivisor t01{&H, {quad(r[0], r[1]), {}}};
    MumfordDivisor t02{&H, {quad(r[0], r[2]), {}}};
    bool broken = false;
    try {
        isogeny_chain(A, {surface_point(t01), surface_point(t02)}, 2, 1, {}, rng);
    } catch (const Error& e) {
        broken = e.code() == Err::BrokenChain;
    }
    CHECK(broken);
}

TEST_CASE("random walks are deterministic and stay superspecial") {
    FieldTower T(params59());
    EllipticCurve E = make_elliptic(T, T.zero(), T.one());

    Rng rng0(0x4c08);
    Surface start = random_walk_setup(E, 0, rng0);
    Rng rngd(0x4c08);
    CHECK(start == Surface{double_cover(E, rngd)});

    Rng rng1(0x4c09), rng2(0x4c09), rng3(0x4c0a);
    Surface a = random_walk_setup(E, 12, rng1);
    Surface b = random_walk_setup(E, 12, rng2);
    Surface c = random_walk_setup(E, 12, rng3);
    CHECK(surface_fingerprint(a) == surface_fingerprint(b));
    CHECK(a.is_jacobian());

    // the group exponent p+1 is preserved along the walk
    Rng rng4(0x4c0b);
    for (int i = 0; i < 10; ++i) {
        SurfacePoint D = surface_random(a, rng4);
        CHECK(surface_mul(a, T.params().p + 1, D) == surface_identity(a));
    }
    (void)c;
}
