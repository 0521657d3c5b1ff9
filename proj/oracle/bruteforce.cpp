#include "naive_ec.hpp"
#include "oracle_testkit.hpp"

#include <algorithm>
#include <map>

#ifdef G2UDS_HAVE_OPENMP
#include <omp.h>
#endif

namespace g2uds::oracle {

namespace {

using namespace g2uds;

Bytes n_encode(const FieldTower& T, const NPt& P) {
    Bytes out;
    out.push_back(P.inf ? 1 : 0);
    if (!P.inf) {
        T.encode(P.x, out);
        T.encode(P.y, out);
    }
    return out;
}

// All cyclic subgroups of E[l^e] of exact order l^e, each as its full element
// list, deduplicated by element-set key.
std::vector<std::vector<NPt>> cyclic_subgroups(const FieldTower& T, const NCurve& E, unsigned l,
                                               unsigned e) {
    Int le = int_pow(Int(l), e);
    Int lkill = le / l;
    std::vector<NPt> gens;
    for (const Fp2& x : all_fp2(T))
        for (const NPt& P : n_points_at(E, x))
            if (n_mul(E, le, P).inf && !n_mul(E, lkill, P).inf) gens.push_back(P);

    std::map<Bytes, std::vector<NPt>> seen;
    for (const NPt& K : gens) {
        std::vector<NPt> sub;
        NPt acc{};
        for (Int i = 0; i < le; ++i) {
            sub.push_back(acc);
            acc = n_add(E, acc, K);
        }
        Bytes key;
        std::vector<Bytes> enc;
        for (const auto& P : sub) enc.push_back(n_encode(T, P));
        std::sort(enc.begin(), enc.end());
        for (const auto& b : enc) key.insert(key.end(), b.begin(), b.end());
        seen.emplace(std::move(key), std::move(sub));
    }
    std::vector<std::vector<NPt>> out;
    for (auto& kv : seen) out.push_back(std::move(kv.second));
    return out;
}

SubgroupWitness witness_of(const PublicParams& pp, const std::vector<NPt>& c1,
                           const std::vector<NPt>& c2) {
    SubgroupWitness w;
    for (const NPt& P : c1)
        for (const NPt& Q : c2)
            w.elements.push_back(surface_point_encode(
                pp.surface,
                SurfacePoint{ProductPoint{ECPoint{P.inf, P.x, P.y}, ECPoint{Q.inf, Q.x, Q.y}}}));
    std::sort(w.elements.begin(), w.elements.end());
    return w;
}

SubgroupWitness search(const ProblemInstance& inst, bool parallel) {
    const PublicParams& pp = *inst.pp;
    const FieldTower& T = *pp.T;
    if (pp.surface.is_jacobian())
        fail(Err::TooLarge, "brute-force search only covers product surfaces");
    if (!inst.pbk) fail(Err::NotFound, "instance carries no public key data");
    const Fingerprint& target = inst.pbk->fpA;

    unsigned l = pp.basisA.l, e = pp.basisA.e;
    Int candidates_bound = int_pow(Int(l), 2 * e) * int_pow(Int(l), 2 * e);
    if (candidates_bound > (Int(1) << 24)) fail(Err::TooLarge, "kernel search space too large");

    NCurve E1{&T, pp.surface.product().E1.a, pp.surface.product().E1.b};
    NCurve E2{&T, pp.surface.product().E2.a, pp.surface.product().E2.b};
    auto subs1 = cyclic_subgroups(T, E1, l, e);
    auto subs2 = cyclic_subgroups(T, E2, l, e);

    long n1 = static_cast<long>(subs1.size());
    long n2 = static_cast<long>(subs2.size());
    long total = n1 * n2;
    std::vector<std::uint8_t> hits(static_cast<std::size_t>(total), 0);

#ifdef G2UDS_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
    for (long idx = 0; idx < total; ++idx) {
        const auto& c1 = subs1[static_cast<std::size_t>(idx / n2)];
        const auto& c2 = subs2[static_cast<std::size_t>(idx % n2)];
        // quotient j-invariants from the definitional Velu chain
        NChain q1 = n_cyclic_chain(E1, c1[1], l, e, {});
        NChain q2 = n_cyclic_chain(E2, c2[1], l, e, {});
        Fp2 j1 = n_j_invariant(q1.codomain);
        Fp2 j2 = n_j_invariant(q2.codomain);
        if (lex_less(j2, j1)) std::swap(j1, j2);
        if (target.split && j1 == target.j1 && j2 == target.j2)
            hits[static_cast<std::size_t>(idx)] = 1;
    }
    (void)parallel;

    std::vector<SubgroupWitness> matches;
    for (long idx = 0; idx < total; ++idx)
        if (hits[static_cast<std::size_t>(idx)])
            matches.push_back(witness_of(pp, subs1[static_cast<std::size_t>(idx / n2)],
                                         subs2[static_cast<std::size_t>(idx % n2)]));
    if (matches.empty()) fail(Err::NotFound, "no subgroup reproduces the public fingerprint");
    if (matches.size() == 1) return matches.front();

    // fingerprint collision: fall back to the public pushed points; Velu's
    // definitional map lands on the same canonical codomain model, so the
    // coordinates are directly comparable
    long m = -1;
    for (long idx = 0; idx < total; ++idx) {
        if (!hits[static_cast<std::size_t>(idx)]) continue;
        ++m;
        const auto& c1 = subs1[static_cast<std::size_t>(idx / n2)];
        const auto& c2 = subs2[static_cast<std::size_t>(idx % n2)];
        std::vector<NPt> t1, t2;
        for (const auto& P : pp.basisC.points) {
            const ProductPoint& pr = P.pair();
            t1.push_back(NPt{pr.P1.inf, pr.P1.x, pr.P1.y});
            t2.push_back(NPt{pr.P2.inf, pr.P2.x, pr.P2.y});
        }
        NChain q1 = n_cyclic_chain(E1, c1[1], l, e, t1);
        NChain q2 = n_cyclic_chain(E2, c2[1], l, e, t2);
        bool ok = true;
        for (unsigned i = 0; i < 4 && ok; ++i) {
            const ProductPoint& want = inst.pbk->pushedC[i].pair();
            ok = n_eq(q1.tracked[i], NPt{want.P1.inf, want.P1.x, want.P1.y}) &&
                 n_eq(q2.tracked[i], NPt{want.P2.inf, want.P2.x, want.P2.y});
        }
        if (ok) return matches[static_cast<std::size_t>(m)];
    }
    return matches.front();
}

} // namespace

SubgroupWitness cssi_bruteforce(const ProblemInstance& inst) { return search(inst, true); }

SubgroupWitness cssi_bruteforce_serial(const ProblemInstance& inst) {
    return search(inst, false);
}

} // namespace g2uds::oracle
