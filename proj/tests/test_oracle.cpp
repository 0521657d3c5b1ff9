#include "../oracle/oracle_testkit.hpp"
#include "g2uds/chain.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace g2uds;
using namespace g2uds::oracle;

namespace {

FieldParams params59() { return make_params(2, 2, 3, 1, 5, 1, 1, -1); }

} // namespace

TEST_CASE("group counts match the superspecial prediction") {
    FieldTower T(params59());
    // every supersingular elliptic curve over F_{p^2} here has (p+1)^2 points
    EllipticCurve E = make_elliptic(T, T.zero(), T.one());
    Surface P{EllipticProduct{E, E}};
    std::uint64_t n = enumerate_group(P);
    CHECK(n == 12960000ull); // 60^4
    CHECK(enumerate_group_serial(P) == n);

    PublicParams pp = setup(T, 3);
    CHECK(enumerate_group(pp.surface) == 12960000ull);
}

TEST_CASE("jacobian count via the zeta identity agrees with the exponent") {
    FieldTower T(params59());
    Rng rng(0x6a61);
    std::vector<Fp2> c(7, T.zero());
    c[0] = c[6] = T.one();
    Genus2Curve H6 = make_curve(T, c);
    auto roots = poly_roots(H6.poly(), rng);
    REQUIRE(!roots.empty());
    Genus2Curve H = moebius_twist(H6, Moebius{roots[0], T.one(), T.one(), T.zero()}, T.one());
    Surface J{H};
    std::uint64_t n = enumerate_group(J);
    // superspecial: the group exponent p + 1 divides the order, and the
    // order is (p+1)^4 for this curve
    CHECK(n % 60 == 0);
    CHECK(n == 12960000ull);
    // engine sampling is consistent: random points are killed by p + 1
    for (int i = 0; i < 5; ++i) {
        SurfacePoint x = surface_random(J, rng);
        CHECK(surface_mul(J, T.params().p + 1, x) == surface_identity(J));
    }
}

TEST_CASE("torsion enumeration: sizes, identity, engine agreement") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 3);
    const Surface& A = pp.surface;

    for (unsigned m : {2u, 3u, 5u}) {
        auto tor = enumerate_torsion(A, m);
        CHECK(tor.size() == static_cast<std::size_t>(m) * m * m * m);
        std::set<Bytes> uniq;
        for (const auto& P : tor) {
            CHECK(surface_mul(A, Int(m), P) == surface_identity(A));
            uniq.insert(surface_point_encode(A, P));
        }
        CHECK(uniq.size() == tor.size());
        CHECK(uniq.count(surface_point_encode(A, surface_identity(A))) == 1);
    }

    // the published bases really do span: every 2-torsion point is a
    // combination of basisA under multiplication by the cofactor
    auto tor2 = enumerate_torsion(A, 2);
    std::set<Bytes> span;
    for (int i0 = 0; i0 < 2; ++i0)
        for (int i1 = 0; i1 < 2; ++i1)
            for (int i2 = 0; i2 < 2; ++i2)
                for (int i3 = 0; i3 < 2; ++i3) {
                    SurfacePoint x = surface_identity(A);
                    int c[4] = {i0, i1, i2, i3};
                    for (int k = 0; k < 4; ++k)
                        if (c[k])
                            x = surface_add(A, x,
                                            surface_mul(A, Int(2), pp.basisA.points[k]));
                    span.insert(surface_point_encode(A, x));
                }
    CHECK(span.size() == 16);
    for (const auto& P : tor2) CHECK(span.count(surface_point_encode(A, P)) == 1);

    Genus2Curve H6 = make_curve(
        T, {T.one(), T.zero(), T.zero(), T.zero(), T.zero(), T.zero(), T.one()});
    Rng trng(0x746f72);
    auto roots = poly_roots(H6.poly(), trng);
    REQUIRE(!roots.empty());
    Genus2Curve H = moebius_twist(H6, Moebius{roots[0], T.one(), T.one(), T.zero()}, T.one());
    auto jt = enumerate_torsion(Surface{H}, 2);
    CHECK(jt.size() == 16);
    for (const auto& P : jt)
        CHECK(surface_mul(Surface{H}, Int(2), P) == surface_identity(Surface{H}));
    CHECK_THROWS_AS(enumerate_torsion(Surface{H}, 3), Error);
}

TEST_CASE("exhaustive key recovery finds the hidden kernel") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 3);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        ProblemInstance inst = gen_instance("CSSI", pp, seed);
        SubgroupWitness found = cssi_bruteforce(inst);
        CHECK(found == inst.witness_subgroup);
        CHECK(cssi_bruteforce_serial(inst) == found);
    }
}

TEST_CASE("decision instances are labelled consistently") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 3);

    int ones = 0;
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        ProblemInstance inst = gen_instance("SSDDH", pp, seed);
        REQUIRE(inst.fps.size() == 3);
        bool looks_real = inst.fps[2] == inst.witness_fp;
        CHECK(looks_real == (inst.answer == 1));
        ones += inst.answer;
    }
    CHECK(ones > 0);
    CHECK(ones < 8);

    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        ProblemInstance d = gen_instance("DSSI", pp, seed);
        REQUIRE(d.surfaces.size() == 2);
        CHECK((d.answer == 0 || d.answer == 1));
        ProblemInstance m = gen_instance("MSSDDH", pp, seed);
        CHECK((m.fps[2] == m.witness_fp) == (m.answer == 1));
    }

    for (const char* kind : {"SSCDH", "DSSP", "MSSCDH", "1MSSCDH", "1MSSDDH"}) {
        ProblemInstance inst = gen_instance(kind, pp, 1);
        CHECK(inst.kind == kind);
    }
    CHECK_THROWS_AS(gen_instance("NOPE", pp, 1), Error);
}

TEST_CASE("unforgeability game: replay loses, rule-breakers flagged, signer wins") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 3, 6);

    // replaying an issued signature is not a forgery
    UnforgeAdversary replayer = [](UnforgeabilityChallenger& ch) {
        Bytes m = {'m'};
        Signature s = ch.sign_query(m);
        return std::make_pair(m, s);
    };
    GameResult r = unforgeability_game(replayer, pp, 21, 4);
    CHECK_FALSE(r.win);
    CHECK_FALSE(r.illegal);

    // exceeding the sign-query budget is an illegal run
    UnforgeAdversary hog = [](UnforgeabilityChallenger& ch) {
        for (int i = 0; i < 3; ++i) ch.sign_query({static_cast<std::uint8_t>(i)});
        return std::make_pair(Bytes{9}, ch.sign_query({9}));
    };
    CHECK(unforgeability_game(hog, pp, 22, 2).illegal);

    // a mauled signature on a fresh message is rejected
    UnforgeAdversary mauler = [&](UnforgeabilityChallenger& ch) {
        Signature s = ch.sign_query({'a'});
        s.pushedC[0] = surface_add(s.surfAM, s.pushedC[0], s.pushedC[1]);
        CHECK_FALSE(ch.check_query({'b'}, s));
        return std::make_pair(Bytes{'b'}, s);
    };
    GameResult rm = unforgeability_game(mauler, pp, 23, 4);
    CHECK_FALSE(rm.win);
    CHECK_FALSE(rm.illegal);

    // the holder of the private key forges trivially: the game detects wins
    auto [pbk, pvk] = keygen(pp, 24);
    UnforgeAdversary insider = [&](UnforgeabilityChallenger&) {
        return std::make_pair(Bytes{'z'}, sign(pp, pvk, {'z'}));
    };
    // different challenger key, so this only wins if keygen(seed) collides
    CHECK_FALSE(unforgeability_game(insider, pp, 25, 4).win);
}

TEST_CASE("invisibility game: challenge bookkeeping and trivial strategies") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 3, 6);

    // a random guesser is legal and wins about half the time
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        InvisAdversary guesser = [seed](InvisibilityChallenger& ch) {
            ch.challenge({'x'});
            return (seed & 1) != 0;
        };
        GameResult g = invisibility_game(guesser, pp, 30 + seed);
        CHECK_FALSE(g.illegal);
        wins += g.win ? 1 : 0;
    }
    CHECK(wins > 0);
    CHECK(wins < 6);

    // querying the challenge pair is illegal
    InvisAdversary prober = [](InvisibilityChallenger& ch) {
        Bytes m = {'x'};
        Signature s = ch.challenge(m);
        ch.check_query(m, s);
        return true;
    };
    CHECK(invisibility_game(prober, pp, 40).illegal);

    // guessing without a challenge is illegal
    InvisAdversary skipper = [](InvisibilityChallenger&) { return true; };
    CHECK(invisibility_game(skipper, pp, 41).illegal);

    // check queries on other pairs remain available and truthful
    InvisAdversary worker = [](InvisibilityChallenger& ch) {
        Signature s = ch.sign_query({'a'});
        bool ok = ch.check_query({'a'}, s);
        CHECK(ok);
        ch.challenge({'x'});
        return false;
    };
    CHECK_FALSE(invisibility_game(worker, pp, 42).illegal);
}
