#include "oracle_testkit.hpp"

#include <algorithm>
#include <map>

namespace g2uds::oracle {

namespace {

using namespace g2uds;

std::array<Int, 12> random_kernel_scalars(const PublicParams& pp, const SurfaceBasis& B,
                                          Rng& rng) {
    Int order = B.order();
    for (unsigned tries = 0; tries < (1u << 16); ++tries) {
        std::array<Int, 12> s;
        for (auto& x : s) x = rng.below(order);
        if (kernel_scalars_valid(pp.surface, B, s)) return s;
    }
    fail(Err::Timeout, "no valid kernel scalars found");
}

ChainResult quotient_by(const PublicParams& pp, const SurfaceBasis& B,
                        const std::array<Int, 12>& s, const std::vector<SurfacePoint>& push) {
    auto gens = kernel_generators(pp.surface, B, s);
    Rng rng(0x746e6167);
    return isogeny_chain(pp.surface, {gens[0], gens[1], gens[2]}, B.l, B.e, push, rng);
}

SubgroupWitness closure_witness(const PublicParams& pp, const std::array<SurfacePoint, 3>& gens) {
    const Surface& A = pp.surface;
    std::map<Bytes, SurfacePoint> seen;
    SurfacePoint id = surface_identity(A);
    seen.emplace(surface_point_encode(A, id), id);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<SurfacePoint> cur;
        for (const auto& kv : seen) cur.push_back(kv.second);
        for (const auto& g : gens)
            for (const auto& x : cur) {
                SurfacePoint y = surface_add(A, x, g);
                grew |= seen.emplace(surface_point_encode(A, y), y).second;
            }
    }
    SubgroupWitness w;
    for (const auto& kv : seen) w.elements.push_back(kv.first);
    std::sort(w.elements.begin(), w.elements.end());
    return w;
}

// J_AM from key scalars and message scalars: quotient by the message kernel,
// then by the pushed key kernel.
Fingerprint composite_fp(const PublicParams& pp, const std::array<Int, 12>& a,
                         const std::array<Int, 12>& m) {
    auto gensA = kernel_generators(pp.surface, pp.basisA, a);
    std::vector<SurfacePoint> push(gensA.begin(), gensA.end());
    ChainResult cm = quotient_by(pp, pp.basisM, m, push);
    Rng rng(0x706d6f63);
    ChainResult cam = isogeny_chain(cm.codomain, cm.pushed, pp.basisA.l, pp.basisA.e, {}, rng);
    return surface_fingerprint(cam.codomain);
}

} // namespace

ProblemInstance gen_instance(const std::string& kind, const PublicParams& pp,
                             std::uint64_t seed) {
    Rng rng(seed);
    ProblemInstance inst;
    inst.kind = kind;
    inst.pp = &pp;

    if (kind == "CSSI") {
        auto [pbk, pvk] = keygen(pp, rng.next_u64());
        inst.pbk = pbk;
        inst.witness_scalars = pvk.a;
        inst.witness_subgroup =
            closure_witness(pp, kernel_generators(pp.surface, pp.basisA, pvk.a));
        return inst;
    }

    if (kind == "DSSI") {
        inst.answer = rng.coin() ? 1 : 0;
        if (inst.answer == 1) {
            std::array<Int, 12> a = random_kernel_scalars(pp, pp.basisA, rng);
            inst.witness_scalars = a;
            inst.surfaces = {pp.surface, quotient_by(pp, pp.basisA, a, {}).codomain};
        } else {
            // same graph, but reached by an isogeny of the wrong degree
            std::array<Int, 12> m = random_kernel_scalars(pp, pp.basisM, rng);
            inst.surfaces = {pp.surface, quotient_by(pp, pp.basisM, m, {}).codomain};
        }
        inst.fps = {surface_fingerprint(inst.surfaces[0]), surface_fingerprint(inst.surfaces[1])};
        return inst;
    }

    if (kind == "SSCDH" || kind == "SSDDH") {
        std::array<Int, 12> a = random_kernel_scalars(pp, pp.basisA, rng);
        std::array<Int, 12> m = random_kernel_scalars(pp, pp.basisM, rng);
        std::vector<SurfacePoint> mbase(pp.basisM.points.begin(), pp.basisM.points.end());
        std::vector<SurfacePoint> abase(pp.basisA.points.begin(), pp.basisA.points.end());
        ChainResult ca = quotient_by(pp, pp.basisA, a, mbase);
        ChainResult cm = quotient_by(pp, pp.basisM, m, abase);
        inst.surfaces = {ca.codomain, cm.codomain};
        inst.fps = {surface_fingerprint(ca.codomain), surface_fingerprint(cm.codomain)};
        inst.points.insert(inst.points.end(), ca.pushed.begin(), ca.pushed.end());
        inst.points.insert(inst.points.end(), cm.pushed.begin(), cm.pushed.end());
        inst.witness_scalars = a;
        inst.witness_fp = composite_fp(pp, a, m);
        if (kind == "SSCDH") return inst;
        inst.answer = rng.coin() ? 1 : 0;
        if (inst.answer == 1) {
            inst.fps.push_back(inst.witness_fp);
        } else {
            // random branch: independently resampled scalars of the same shape
            std::array<Int, 12> a2 = random_kernel_scalars(pp, pp.basisA, rng);
            std::array<Int, 12> m2 = random_kernel_scalars(pp, pp.basisM, rng);
            inst.fps.push_back(composite_fp(pp, a2, m2));
        }
        return inst;
    }

    if (kind == "DSSP") {
        inst.answer = rng.coin() ? 1 : 0;
        std::vector<SurfacePoint> cbase(pp.basisC.points.begin(), pp.basisC.points.end());
        if (inst.answer == 1) {
            std::array<Int, 12> a = random_kernel_scalars(pp, pp.basisA, rng);
            ChainResult ca = quotient_by(pp, pp.basisA, a, cbase);
            inst.surfaces = {pp.surface, ca.codomain};
            inst.points.assign(ca.pushed.begin(), ca.pushed.end());
            inst.witness_scalars = a;
        } else {
            // the second surface does not sit at the end of an lA-power
            // isogeny carrying the auxiliary points
            std::array<Int, 12> m = random_kernel_scalars(pp, pp.basisM, rng);
            ChainResult cm = quotient_by(pp, pp.basisM, m, cbase);
            inst.surfaces = {pp.surface, cm.codomain};
            inst.points.assign(cm.pushed.begin(), cm.pushed.end());
        }
        inst.fps = {surface_fingerprint(inst.surfaces[0]), surface_fingerprint(inst.surfaces[1])};
        return inst;
    }

    if (kind == "MSSCDH" || kind == "MSSDDH" || kind == "1MSSCDH" || kind == "1MSSDDH") {
        std::array<Int, 12> a = random_kernel_scalars(pp, pp.basisA, rng);
        std::array<Int, 12> m = random_kernel_scalars(pp, pp.basisM, rng);
        ChainResult ca = quotient_by(pp, pp.basisA, a, {});
        ChainResult cm = quotient_by(pp, pp.basisM, m, {});
        inst.surfaces = {ca.codomain, cm.codomain};
        inst.fps = {surface_fingerprint(ca.codomain), surface_fingerprint(cm.codomain)};
        auto gensM = kernel_generators(pp.surface, pp.basisM, m);
        inst.points.assign(gensM.begin(), gensM.end());
        inst.witness_scalars = a;
        inst.witness_fp = composite_fp(pp, a, m);
        if (kind == "MSSCDH" || kind == "1MSSCDH") return inst;
        inst.answer = rng.coin() ? 1 : 0;
        if (inst.answer == 1) {
            inst.fps.push_back(inst.witness_fp);
        } else {
            std::array<Int, 12> a2 = random_kernel_scalars(pp, pp.basisA, rng);
            inst.fps.push_back(composite_fp(pp, a2, m));
        }
        return inst;
    }

    fail(Err::NotFound, "unknown problem kind: " + kind);
}

} // namespace g2uds::oracle
