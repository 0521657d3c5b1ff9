#include "g2uds/walk.hpp"

#include <algorithm>

namespace g2uds {

namespace {

// Order-free identifier of the kernel cut out by a splitting.
std::vector<std::uint8_t> kernel_key(const FieldTower& T, const QuadraticSplitting& S) {
    std::vector<std::vector<std::uint8_t>> parts;
    for (const Poly<Fp2>* G : {&S.G1, &S.G2, &S.G3}) {
        Poly<Fp2> m = poly_monic(*G);
        std::vector<std::uint8_t> enc;
        enc.push_back(static_cast<std::uint8_t>(m.deg()));
        for (const auto& c : m.c) T.encode(c, enc);
        parts.push_back(std::move(enc));
    }
    std::sort(parts.begin(), parts.end());
    std::vector<std::uint8_t> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

} // namespace

Genus2Curve double_cover(const EllipticCurve& E, Rng& rng) {
    const FieldTower& T = *E.T;
    std::vector<Fp2> f(7, T.zero());
    f[0] = E.b;
    f[2] = E.a;
    f[6] = T.one();
    Genus2Curve H6 = make_curve(T, f);
    std::vector<Fp2> roots = poly_roots(H6.poly(), rng);
    if (roots.empty()) fail(Err::BadShape, "double cover has no rational odd model");
    std::sort(roots.begin(), roots.end(),
              [](const Fp2& x, const Fp2& y) { return lex_less(x, y); });
    Moebius M{roots[0], T.one(), T.one(), T.zero()};
    return moebius_twist(H6, M, T.one());
}

Surface random_walk_setup(const EllipticCurve& E, unsigned steps, Rng& rng,
                          bool allow_product_endpoint) {
    const FieldTower& T = *E.T;
    Genus2Curve cur = double_cover(E, rng);
    std::vector<std::uint8_t> forbidden;
    for (unsigned i = 0; i < steps; ++i) {
        std::vector<QuadraticSplitting> options;
        for (auto& S : all_splittings(cur, rng))
            if (kernel_key(T, S) != forbidden) options.push_back(std::move(S));
        while (!options.empty()) {
            std::size_t pick = static_cast<std::size_t>(rng.below_u64(options.size()));
            try {
                RichelotStep step = richelot_step(cur, options[pick], rng);
                if (auto* js = std::get_if<RichelotJacobianStep>(&step)) {
                    forbidden = kernel_key(T, dual_splitting(*js));
                    cur = js->codomain;
                    break;
                }
                if (allow_product_endpoint && i + 1 == steps) {
                    const auto& ps = std::get<RichelotProductStep>(step);
                    return Surface{EllipticProduct{ps.E1, ps.E2}};
                }
            } catch (const Error&) {
                // degenerate image; treat the neighbor as unusable
            }
            options.erase(options.begin() + static_cast<std::ptrdiff_t>(pick));
        }
        if (options.empty()) fail(Err::WalkStuck, "every available neighbor is split");
    }
    return Surface{cur};
}

} // namespace g2uds
