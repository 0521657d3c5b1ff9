#include "doctest.h"

#include "g2uds/poly.hpp"
#include "g2uds/rng.hpp"

using namespace g2uds;

namespace {

FieldTower& tower59() {
    static FieldTower t(make_params(2, 2, 3, 1, 5, 1, 1, -1));
    return t;
}

Poly<Fp2> random_poly(Rng& rng, int deg) {
    auto& t = tower59();
    std::vector<Fp2> c;
    for (int i = 0; i <= deg; ++i) c.push_back(t.make(rng.below(t.params().p), rng.below(t.params().p)));
    if (c.back().is_zero()) c.back() = t.one();
    return Poly<Fp2>(std::move(c));
}

} // namespace

TEST_CASE("divmod inverts multiplication") {
    Rng rng(1);
    for (int i = 0; i < 50; ++i) {
        auto f = random_poly(rng, 1 + int(rng.below_u64(5)));
        auto g = random_poly(rng, 1 + int(rng.below_u64(4)));
        auto r = random_poly(rng, g.deg() - 1);
        auto h = f * g + r;
        Poly<Fp2> q, rem;
        poly_divmod(h, g, q, rem);
        CHECK(q == f);
        CHECK(rem == r);
    }
}

TEST_CASE("xgcd identity") {
    Rng rng(2);
    for (int i = 0; i < 50; ++i) {
        auto a = random_poly(rng, int(rng.below_u64(5)));
        auto b = random_poly(rng, int(rng.below_u64(5)));
        Poly<Fp2> s, t;
        auto g = poly_xgcd(a, b, s, t);
        CHECK(s * a + t * b == g);
        if (!g.is_zero()) {
            CHECK((a % g).is_zero());
            CHECK((b % g).is_zero());
        }
    }
}

TEST_CASE("resultant equals product over roots for split polynomials") {
    auto& t = tower59();
    Rng rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        // f = prod (x - r_i), monic split
        int n = 2 + int(rng.below_u64(3));
        Poly<Fp2> f({t.one()});
        std::vector<Fp2> roots;
        for (int i = 0; i < n; ++i) {
            Fp2 r = t.make(rng.below(t.params().p), rng.below(t.params().p));
            roots.push_back(r);
            f = f * Poly<Fp2>({-r, t.one()});
        }
        auto g = random_poly(rng, 1 + int(rng.below_u64(3)));
        Fp2 expect = t.one();
        for (auto& r : roots) expect = expect * g.eval(r);
        CHECK(poly_resultant(f, g, t.one()) == expect);
    }
}

TEST_CASE("derivative product rule") {
    Rng rng(4);
    for (int i = 0; i < 20; ++i) {
        auto f = random_poly(rng, 3);
        auto g = random_poly(rng, 2);
        CHECK(poly_derivative(f * g) == poly_derivative(f) * g + f * poly_derivative(g));
    }
}
