#include "doctest.h"

#include "g2uds/field.hpp"
#include "g2uds/rng.hpp"

using namespace g2uds;

namespace {

Fp2 random_fp2(const FieldTower& tower, Rng& rng) {
    return tower.make(rng.below(tower.params().p), rng.below(tower.params().p));
}

} // namespace

TEST_CASE("make_params reference primes") {
    auto p59 = make_params(2, 2, 3, 1, 5, 1, 1, -1);
    CHECK(p59.p == 59);
    auto p719 = make_params(2, 4, 3, 2, 5, 1, 1, -1);
    CHECK(p719.p == 719);
    // exact shape: p - sign equals the smooth product
    CHECK(p59.smooth_order() == 60);
    CHECK(p719.smooth_order() == 720);
}

TEST_CASE("make_params rejects bad shapes") {
    CHECK_THROWS_AS(make_params(2, 1, 2, 1, 3, 1, 1, -1), Error); // l_A = l_M
    CHECK_THROWS_AS(make_params(2, 3, 3, 1, 5, 1, 1, -1), Error); // 119 = 7*17 not prime
    CHECK_THROWS_AS(make_params(2, 2, 3, 1, 5, 1, 6, -1), Error); // f shares factor with l_A
}

TEST_CASE("make_params sign +1") {
    // 2^2*3*5 + 1 = 61 is prime, so that shape is fine
    auto p61 = make_params(2, 2, 3, 1, 5, 1, 1, +1);
    CHECK(p61.p == 61);
}

TEST_CASE("field laws over p = 59 and p = 719") {
    for (auto params : {make_params(2, 2, 3, 1, 5, 1, 1, -1), make_params(2, 4, 3, 2, 5, 1, 1, -1)}) {
        FieldTower tower(params);
        Rng rng(42);
        for (int i = 0; i < 400; ++i) {
            Fp2 a = random_fp2(tower, rng);
            Fp2 b = random_fp2(tower, rng);
            Fp2 c = random_fp2(tower, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a + tower.zero() == a);
            CHECK(a * tower.one() == a);
            if (!a.is_zero()) CHECK(a * fq_inv(a) == tower.one());
        }
    }
}

TEST_CASE("extension defining relation and spec examples at p = 59") {
    FieldTower tower(make_params(2, 2, 3, 1, 5, 1, 1, -1));
    // smallest positive nonsquare mod 59 is 2
    CHECK(tower.fp2()->nr.v == 2);
    Fp2 w = tower.omega();
    CHECK(w * w == tower.from_int(2));
    // (3 + w)(3 - w) = 9 - 2 = 7
    Fp2 x = tower.make(3, 1);
    Fp2 y = tower.make(3, 58);
    CHECK(x * y == tower.from_int(7));
    // inv(w) = w / 2
    CHECK(fq_inv(w) == tower.make(0, mod_inv(2, 59)));
    CHECK_THROWS_AS(fq_inv(tower.zero()), Error);
}

TEST_CASE("Frobenius fixes F_{p^2}") {
    FieldTower tower(make_params(2, 4, 3, 2, 5, 1, 1, -1));
    Rng rng(7);
    Int p2 = tower.params().p * tower.params().p;
    for (int i = 0; i < 100; ++i) {
        Fp2 a = random_fp2(tower, rng);
        if (a.is_zero()) continue;
        CHECK(fq_pow(a, p2) == a);
    }
}

TEST_CASE("square roots") {
    for (auto params : {make_params(2, 2, 3, 1, 5, 1, 1, -1), make_params(2, 4, 3, 2, 5, 1, 1, -1)}) {
        FieldTower tower(params);
        Rng rng(11);
        CHECK(*fq_sqrt(tower.zero()) == tower.zero());
        CHECK(*fq_sqrt(tower.from_int(4)) == tower.from_int(2));
        int squares = 0;
        for (int i = 0; i < 100; ++i) {
            Fp2 a = random_fp2(tower, rng);
            Fp2 s = a * a;
            auto r = fq_sqrt(s);
            REQUIRE(r.has_value());
            CHECK(*r * *r == s);
            // canonical: lexicographically smaller of {r, -r}
            Fp2 neg = -*r;
            CHECK(!lex_less(neg, *r));
            if (!a.is_zero()) ++squares;
        }
        CHECK(squares > 0);
        // nonsquare detection: the F_{p^4} generator seed is a nonsquare in F_{p^2}
        CHECK(!fq_sqrt(tower.fp4()->nr).has_value());
    }
}

TEST_CASE("square roots in F_{p^4}") {
    FieldTower tower(make_params(2, 2, 3, 1, 5, 1, 1, -1));
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        Fp2 a2 = random_fp2(tower, rng);
        Fp4 a = tower.embed(a2);
        // every F_{p^2} element is a square in F_{p^4}
        auto r = fq_sqrt(a);
        REQUIRE(r.has_value());
        CHECK(*r * *r == a);
        Fp4 sq = a * a;
        auto r2 = fq_sqrt(sq);
        REQUIRE(r2.has_value());
        CHECK(*r2 * *r2 == sq);
    }
}

TEST_CASE("canonical encoding round trip and idempotence") {
    FieldTower tower(make_params(2, 4, 3, 2, 5, 1, 1, -1));
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        Fp2 a = random_fp2(tower, rng);
        std::vector<std::uint8_t> buf;
        tower.encode(a, buf);
        CHECK(buf.size() == tower.element_size());
        std::size_t consumed = 0;
        Fp2 back = tower.decode(buf.data(), buf.size(), &consumed);
        CHECK(consumed == buf.size());
        CHECK(back == a);
        std::vector<std::uint8_t> buf2;
        tower.encode(back, buf2);
        CHECK(buf == buf2);
    }
}
