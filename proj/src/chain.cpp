#include "g2uds/chain.hpp"

#include <map>

namespace g2uds {

IsogenyStep surface_richelot_step(const Genus2Curve& H, const QuadraticSplitting& S, Rng& rng) {
    RichelotStep raw = richelot_step(H, S, rng);
    IsogenyStep step;
    step.domain = Surface{H};
    if (auto* js = std::get_if<RichelotJacobianStep>(&raw)) {
        step.codomain = Surface{js->codomain};
        step.impl = *js;
    } else {
        const auto& ps = std::get<RichelotProductStep>(raw);
        step.codomain = Surface{EllipticProduct{ps.E1, ps.E2}};
        step.impl = ps;
    }
    return step;
}

IsogenyStep product_step(const EllipticProduct& A, const ECPoint& P1, const ECPoint& P2,
                         unsigned l) {
    ProductVeluStep impl{velu_isogeny(A.E1, P1, l), velu_isogeny(A.E2, P2, l)};
    IsogenyStep step;
    step.domain = Surface{A};
    step.codomain = Surface{EllipticProduct{impl.phi1.codomain, impl.phi2.codomain}};
    step.impl = std::move(impl);
    return step;
}

SurfacePoint step_evaluate(const IsogenyStep& step, const SurfacePoint& P, Rng& rng) {
    if (!surface_on(step.domain, P)) fail(Err::PointNotOnDomain, "point not on the step domain");
    if (auto* js = std::get_if<RichelotJacobianStep>(&step.impl)) {
        MumfordDivisor D{&js->domain, P.divisor()};
        return {richelot_push(*js, D, rng).d};
    }
    if (auto* ps = std::get_if<RichelotProductStep>(&step.impl)) {
        MumfordDivisor D{&ps->domain, P.divisor()};
        auto [Q1, Q2] = richelot_push_split(*ps, D, rng);
        return {ProductPoint{Q1, Q2}};
    }
    const auto& vs = std::get<ProductVeluStep>(step.impl);
    const auto& pp = P.pair();
    return {ProductPoint{velu_evaluate(vs.phi1, pp.P1), velu_evaluate(vs.phi2, pp.P2)}};
}

namespace {

// The subgroup generated by the step-kernel points, deduplicated by encoding.
std::vector<SurfacePoint> small_span(const Surface& A, const std::vector<SurfacePoint>& gens,
                                     unsigned l) {
    std::map<std::vector<std::uint8_t>, SurfacePoint> seen;
    std::vector<SurfacePoint> frontier{surface_identity(A)};
    seen.emplace(surface_point_encode(A, frontier[0]), frontier[0]);
    for (const auto& g : gens) {
        std::vector<SurfacePoint> grown;
        for (const auto& [key, el] : seen) {
            (void)key;
            SurfacePoint cur = el;
            for (unsigned a = 1; a < l; ++a) {
                cur = surface_add(A, cur, g);
                grown.push_back(cur);
            }
        }
        for (const auto& el : grown) seen.emplace(surface_point_encode(A, el), el);
    }
    std::vector<SurfacePoint> out;
    out.reserve(seen.size());
    for (const auto& [key, el] : seen) {
        (void)key;
        out.push_back(el);
    }
    return out;
}

IsogenyStep chain_step(const Surface& A, const std::vector<SurfacePoint>& kernel_mult, unsigned l,
                       Rng& rng) {
    std::vector<SurfacePoint> span = small_span(A, kernel_mult, l);
    if (span.size() != static_cast<std::size_t>(l) * l)
        fail(Err::BrokenChain, "step kernel does not have order l^2");
    if (A.is_jacobian()) {
        if (l != 2) fail(Err::UnsupportedKernel, "jacobian chains only support (2,2)-steps");
        std::vector<MumfordDivisor> T;
        for (const auto& el : span)
            if (!(el == surface_identity(A))) T.push_back(divisor_of(A, el));
        try {
            QuadraticSplitting S =
                splitting_from_kernel(A.jacobian(), {T.at(0), T.at(1), T.at(2)});
            return surface_richelot_step(A.jacobian(), S, rng);
        } catch (const Error& e) {
            if (e.code() == Err::NotIsotropic || e.code() == Err::NotOrder4)
                fail(Err::BrokenChain, std::string("step kernel rejected: ") + e.what());
            throw;
        }
    }
    // product domain: the kernel must be spanned by one point per factor
    const ECPoint* P1 = nullptr;
    const ECPoint* P2 = nullptr;
    for (const auto& el : span) {
        const auto& pp = el.pair();
        if (!pp.P1.inf && pp.P2.inf && P1 == nullptr) P1 = &pp.P1;
        if (pp.P1.inf && !pp.P2.inf && P2 == nullptr) P2 = &pp.P2;
    }
    if (P1 == nullptr || P2 == nullptr)
        fail(Err::UnsupportedKernel, "product chain kernel is not product-form");
    try {
        return product_step(A.product(), *P1, *P2, l);
    } catch (const Error& e) {
        if (e.code() == Err::BadOrder)
            fail(Err::BrokenChain, std::string("step kernel rejected: ") + e.what());
        throw;
    }
}

} // namespace

ChainResult isogeny_chain(const Surface& A, const std::vector<SurfacePoint>& gens, unsigned l,
                          unsigned e, const std::vector<SurfacePoint>& push, Rng& rng) {
    if (e == 0) fail(Err::BadShape, "chains need at least one step");
    ChainResult res;
    res.codomain = A;
    res.pushed = push;
    std::vector<SurfacePoint> cur = gens;
    for (unsigned j = 0; j < e; ++j) {
        Int mult = int_pow(l, e - 1 - j);
        std::vector<SurfacePoint> kernel_mult;
        kernel_mult.reserve(cur.size());
        for (const auto& g : cur) kernel_mult.push_back(surface_mul(res.codomain, mult, g));
        IsogenyStep step = chain_step(res.codomain, kernel_mult, l, rng);
        for (auto& g : cur) g = step_evaluate(step, g, rng);
        for (auto& p : res.pushed) p = step_evaluate(step, p, rng);
        res.codomain = step.codomain;
        res.steps.push_back(std::move(step));
    }
    for (const auto& g : cur)
        if (!(g == surface_identity(res.codomain)))
            fail(Err::BrokenChain, "kernel generator survived the chain");
    return res;
}

ChainResult isogeny_chain(const Surface& A, const KernelSpec& K,
                          const std::vector<SurfacePoint>& push, Rng& rng) {
    if (!A.is_jacobian() || !(*K.generators[0].H == A.jacobian()))
        fail(Err::CurveMismatch, "kernel spec does not live on the chain domain");
    std::vector<SurfacePoint> gens;
    for (const auto& g : K.generators) gens.push_back(surface_point(g));
    return isogeny_chain(A, gens, K.l, K.e, push, rng);
}

} // namespace g2uds
