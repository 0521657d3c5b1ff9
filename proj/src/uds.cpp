#include "g2uds/uds.hpp"

#include "g2uds/wire.hpp"

#include <map>

namespace g2uds {

namespace {

constexpr unsigned kMaxRetries = 1u << 16;

void put_u32(std::uint32_t v, Bytes& out) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

// Closure of the generated subgroup, capped just above the expected order so
// oversized kernels are detected without unbounded work.
std::size_t subgroup_size(const Surface& A, const std::array<SurfacePoint, 3>& gens,
                          std::size_t cap) {
    std::map<Bytes, SurfacePoint> seen;
    SurfacePoint id = surface_identity(A);
    seen.emplace(surface_point_encode(A, id), id);
    bool grew = true;
    while (grew && seen.size() <= cap) {
        grew = false;
        std::vector<SurfacePoint> cur;
        cur.reserve(seen.size());
        for (const auto& kv : seen) cur.push_back(kv.second);
        for (const auto& g : gens)
            for (const auto& x : cur) {
                SurfacePoint y = surface_add(A, x, g);
                grew |= seen.emplace(surface_point_encode(A, y), y).second;
            }
    }
    return seen.size();
}

// Runs the quotient chain for the subgroup named by 12 scalars, after an
// order check; nullopt when the scalars do not define a usable kernel.
std::optional<ChainResult> try_kernel_chain(const Surface& A, const SurfaceBasis& B,
                                            const std::array<Int, 12>& s,
                                            const std::vector<SurfacePoint>& push) {
    std::array<SurfacePoint, 3> gens = kernel_generators(A, B, s);
    std::size_t want = static_cast<std::size_t>(int_pow(B.l, 2 * B.e));
    if (subgroup_size(A, gens, want) != want) return std::nullopt;
    Rng rng(0x67325553);
    try {
        return isogeny_chain(A, {gens[0], gens[1], gens[2]}, B.l, B.e, push, rng);
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Three combinations sum_i c_{4k+i} P_i of four pushed basis images: the
// image of the kernel named by c under the isogeny that pushed the basis.
std::array<SurfacePoint, 3> combos(const Surface& A, const std::array<SurfacePoint, 4>& pts,
                                   const std::array<Int, 12>& c) {
    std::array<SurfacePoint, 3> out{surface_identity(A), surface_identity(A),
                                    surface_identity(A)};
    for (unsigned k = 0; k < 3; ++k)
        for (unsigned i = 0; i < 4; ++i)
            out[k] = surface_add(A, out[k], surface_mul(A, c[4 * k + i], pts[i]));
    return out;
}

ChainResult quotient(const Surface& A, const std::array<SurfacePoint, 3>& gens, unsigned l,
                     unsigned e, const std::vector<SurfacePoint>& push, Rng& rng) {
    return isogeny_chain(A, {gens[0], gens[1], gens[2]}, l, e, push, rng);
}

SurfaceBasis product_basis(const EllipticProduct& P, unsigned l, unsigned e, Rng& rng) {
    auto [p1, q1] = ec_torsion_basis(P.E1, l, e, rng);
    auto [p2, q2] = ec_torsion_basis(P.E2, l, e, rng);
    ECPoint inf;
    SurfaceBasis B;
    B.l = l;
    B.e = e;
    B.points = {SurfacePoint{ProductPoint{p1, inf}}, SurfacePoint{ProductPoint{q1, inf}},
                SurfacePoint{ProductPoint{inf, p2}}, SurfacePoint{ProductPoint{inf, q2}}};
    return B;
}

std::array<Int, 12> hash_limbs(const Bytes& message, unsigned retry, const Int& order) {
    std::array<Int, 12> out;
    for (unsigned i = 0; i < 12; ++i) {
        Bytes buf;
        put_u32(i, buf);
        put_u32(retry, buf);
        buf.insert(buf.end(), message.begin(), message.end());
        Bytes dig = sha256(buf);
        out[i] = int_from_bytes(dig.data(), dig.size()) % order;
    }
    return out;
}

// The commitment phase common to CON and DIS. amc names the surface and
// C-basis images used for the committed codomain fingerprint: the claimed
// signature in CON, the honest recomputed one in DIS.
std::pair<Commitment, SessionState> commit_common(const PublicParams& pp, const PrivateKey& pvk,
                                                  const Bytes& message, const Signature& amc,
                                                  std::uint64_t seed, bool dis) {
    const Surface& A = pp.surface;
    std::array<Int, 12> h = hash_to_scalars(pp, message);
    std::array<SurfacePoint, 3> gensM = kernel_generators(A, pp.basisM, h);
    std::array<SurfacePoint, 3> gensA = kernel_generators(A, pp.basisA, pvk.a);
    Rng rng(seed);

    std::vector<SurfacePoint> cbase(pp.basisC.points.begin(), pp.basisC.points.end());
    Rng crng = rng.fork();
    ChainResult chainA = quotient(A, gensA, pp.basisA.l, pp.basisA.e, cbase, crng);
    ChainResult chainM = quotient(A, gensM, pp.basisM.l, pp.basisM.e, cbase, crng);
    std::array<SurfacePoint, 4> cOnA, cOnM;
    for (unsigned i = 0; i < 4; ++i) {
        cOnA[i] = chainA.pushed[i];
        cOnM[i] = chainM.pushed[i];
    }

    Int orderC = pp.basisC.order();
    for (unsigned tries = 0; tries < kMaxRetries; ++tries) {
        std::array<Int, 12> c;
        for (auto& x : c) x = rng.below(orderC);
        std::vector<SurfacePoint> push;
        for (const auto& g : gensA) push.push_back(g);
        for (const auto& g : gensM) push.push_back(g);
        auto chainC = try_kernel_chain(A, pp.basisC, c, push);
        if (!chainC) continue;

        SessionState st;
        st.dis = dis;
        st.c = c;
        st.kerAC = {chainC->pushed[0], chainC->pushed[1], chainC->pushed[2]};
        std::array<SurfacePoint, 3> kerMC = {chainC->pushed[3], chainC->pushed[4],
                                             chainC->pushed[5]};

        Rng qrng = rng.fork();
        Commitment com;
        com.surfC = chainC->codomain;
        com.fpC = surface_fingerprint(com.surfC);
        com.kerCMC = kerMC;
        com.fpAC = surface_fingerprint(
            quotient(chainA.codomain, combos(chainA.codomain, cOnA, c), pp.basisC.l, pp.basisC.e,
                     {}, qrng)
                .codomain);
        com.fpMC = surface_fingerprint(
            quotient(chainM.codomain, combos(chainM.codomain, cOnM, c), pp.basisC.l, pp.basisC.e,
                     {}, qrng)
                .codomain);
        com.fpAMC = surface_fingerprint(
            quotient(amc.surfAM, combos(amc.surfAM, amc.pushedC, c), pp.basisC.l, pp.basisC.e, {},
                     qrng)
                .codomain);
        st.com = com;
        return {com, st};
    }
    fail(Err::Timeout, "no valid commitment randomness found");
}

// The four fingerprints a verifier can recompute from public data and the
// revealed scalars. Throws on structurally impossible inputs; the caller
// converts that to a rejection.
struct RevealedView {
    Surface surfC;
    Fingerprint fpC, fpAC, fpMC;
    std::array<SurfacePoint, 3> kerCMC;
    Fingerprint fp_sig_C; // quotient of the (claimed) signature surface by c
};

RevealedView verifier_recompute(const PublicParams& pp, const PublicKey& pbk,
                                const Bytes& message, const Signature& sig,
                                const std::array<Int, 12>& c) {
    const Surface& A = pp.surface;
    std::array<Int, 12> h = hash_to_scalars(pp, message);
    std::array<SurfacePoint, 3> gensM = kernel_generators(A, pp.basisM, h);
    std::vector<SurfacePoint> push(gensM.begin(), gensM.end());
    auto chainC = try_kernel_chain(A, pp.basisC, c, push);
    if (!chainC) fail(Err::MalformedResponse, "revealed scalars do not define a kernel");

    RevealedView view;
    view.surfC = chainC->codomain;
    view.fpC = surface_fingerprint(view.surfC);
    view.kerCMC = {chainC->pushed[0], chainC->pushed[1], chainC->pushed[2]};

    Rng rng(0x76657243);
    std::vector<SurfacePoint> cbase(pp.basisC.points.begin(), pp.basisC.points.end());
    ChainResult chainM = quotient(A, gensM, pp.basisM.l, pp.basisM.e, cbase, rng);
    std::array<SurfacePoint, 4> cOnM;
    for (unsigned i = 0; i < 4; ++i) cOnM[i] = chainM.pushed[i];

    view.fpAC = surface_fingerprint(
        quotient(pbk.surfA, combos(pbk.surfA, pbk.pushedC, c), pp.basisC.l, pp.basisC.e, {}, rng)
            .codomain);
    view.fpMC = surface_fingerprint(
        quotient(chainM.codomain, combos(chainM.codomain, cOnM, c), pp.basisC.l, pp.basisC.e, {},
                 rng)
            .codomain);
    view.fp_sig_C = surface_fingerprint(
        quotient(sig.surfAM, combos(sig.surfAM, sig.pushedC, c), pp.basisC.l, pp.basisC.e, {},
                 rng)
            .codomain);
    return view;
}

bool revealed_consistent(const RevealedView& view, const Commitment& com) {
    if (view.fpC != com.fpC || view.fpAC != com.fpAC || view.fpMC != com.fpMC) return false;
    if (view.surfC != com.surfC) return false;
    for (unsigned i = 0; i < 3; ++i)
        if (view.kerCMC[i] != com.kerCMC[i]) return false;
    return true;
}

// b = 1: check that the revealed key-kernel image on surfC completes the
// commitment into a commuting square, both quotient orders landing on fpAMC.
bool kernel_reveal_consistent(const PublicParams& pp, const Commitment& com,
                              const Response& resp) {
    for (const auto& P : resp.points)
        if (P.is_jacobian() != com.surfC.is_jacobian() || !surface_on(com.surfC, P))
            fail(Err::MalformedResponse, "revealed kernel points are not on the committed surface");
    Rng rng(0x31626576);
    try {
        std::vector<SurfacePoint> kerMC(com.kerCMC.begin(), com.kerCMC.end());
        ChainResult toAC = isogeny_chain(com.surfC,
                                         {resp.points[0], resp.points[1], resp.points[2]},
                                         pp.basisA.l, pp.basisA.e, kerMC, rng);
        if (surface_fingerprint(toAC.codomain) != com.fpAC) return false;
        ChainResult toAMC1 =
            isogeny_chain(toAC.codomain, toAC.pushed, pp.basisM.l, pp.basisM.e, {}, rng);
        if (surface_fingerprint(toAMC1.codomain) != com.fpAMC) return false;

        std::vector<SurfacePoint> kerA(resp.points.begin(), resp.points.end());
        ChainResult toMC = isogeny_chain(com.surfC, kerMC, pp.basisM.l, pp.basisM.e, kerA, rng);
        if (surface_fingerprint(toMC.codomain) != com.fpMC) return false;
        ChainResult toAMC2 =
            isogeny_chain(toMC.codomain, toMC.pushed, pp.basisA.l, pp.basisA.e, {}, rng);
        return surface_fingerprint(toAMC2.codomain) == com.fpAMC;
    } catch (const Error&) {
        return false;
    }
}

} // namespace

std::array<SurfacePoint, 3> kernel_generators(const Surface& A, const SurfaceBasis& B,
                                              const std::array<Int, 12>& s) {
    return combos(A, B.points, s);
}

bool kernel_scalars_valid(const Surface& A, const SurfaceBasis& B, const std::array<Int, 12>& s) {
    return try_kernel_chain(A, B, s, {}).has_value();
}

PublicParams setup(const FieldTower& T, std::uint64_t seed, unsigned rounds) {
    Rng rng(seed);
    // y^2 = x^3 + 1 is supersingular for p = 2 mod 3, which the prime shape
    // l^e... * f - 1 with 3 | p + 1 guarantees; its double cover x^6 + 1 is
    // squarefree whenever p does not divide 6.
    EllipticCurve E0 = make_elliptic(T, T.zero(), T.one());
    unsigned base_steps = 2 * static_cast<unsigned>(byte_width(T.params().p)) * 8;

    for (unsigned attempt = 0; attempt < 256; ++attempt) {
        Surface end{EllipticProduct{E0, E0}};
        try {
            end = random_walk_setup(E0, base_steps + (attempt % 8), rng);
        } catch (const Error&) {
            continue;
        }
        if (!end.is_jacobian()) continue;
        const Genus2Curve& H = end.jacobian();
        auto splits = all_splittings(H, rng);
        std::vector<QuadraticSplitting> degenerate;
        for (const auto& S : splits)
            if (splitting_delta(S).is_zero()) degenerate.push_back(S);
        while (!degenerate.empty()) {
            std::size_t pick = static_cast<std::size_t>(rng.below_u64(degenerate.size()));
            try {
                RichelotStep step = richelot_step(H, degenerate[pick], rng);
                const auto& ps = std::get<RichelotProductStep>(step);
                EllipticProduct P{ps.E1, ps.E2};
                PublicParams pp;
                pp.T = &T;
                pp.surface = Surface{P};
                pp.basisA = product_basis(P, T.params().lA, T.params().eA, rng);
                pp.basisM = product_basis(P, T.params().lM, T.params().eM, rng);
                pp.basisC = product_basis(P, T.params().lC, T.params().eC, rng);
                pp.hash_id = "sha256-ctr";
                pp.rounds = rounds;
                return pp;
            } catch (const Error&) {
                degenerate.erase(degenerate.begin() + static_cast<std::ptrdiff_t>(pick));
            }
        }
    }
    fail(Err::WalkStuck, "no split neighbor reachable from the setup walk");
}

std::array<Int, 12> hash_to_scalars(const PublicParams& pp, const Bytes& message) {
    Int order = pp.basisM.order();
    for (unsigned retry = 0; retry < kMaxRetries; ++retry) {
        std::array<Int, 12> h = hash_limbs(message, retry, order);
        if (kernel_scalars_valid(pp.surface, pp.basisM, h)) return h;
    }
    fail(Err::InternalError, "message hash never reached a valid kernel");
}

std::pair<PublicKey, PrivateKey> keygen(const PublicParams& pp, std::uint64_t seed) {
    Rng rng(seed);
    Int orderA = pp.basisA.order();
    for (unsigned tries = 0; tries < kMaxRetries; ++tries) {
        std::array<Int, 12> a;
        for (auto& x : a) x = rng.below(orderA);
        std::vector<SurfacePoint> cbase(pp.basisC.points.begin(), pp.basisC.points.end());
        auto chain = try_kernel_chain(pp.surface, pp.basisA, a, cbase);
        if (!chain) continue;
        PublicKey pbk;
        pbk.surfA = chain->codomain;
        pbk.fpA = surface_fingerprint(pbk.surfA);
        for (unsigned i = 0; i < 4; ++i) pbk.pushedC[i] = chain->pushed[i];
        return {pbk, PrivateKey{a}};
    }
    fail(Err::Timeout, "no valid private key found");
}

Signature sign(const PublicParams& pp, const PrivateKey& pvk, const Bytes& message) {
    const Surface& A = pp.surface;
    std::array<Int, 12> h = hash_to_scalars(pp, message);
    std::array<SurfacePoint, 3> gensM = kernel_generators(A, pp.basisM, h);
    std::array<SurfacePoint, 3> gensA = kernel_generators(A, pp.basisA, pvk.a);

    Rng rng(0x6e676973);
    std::vector<SurfacePoint> push(gensA.begin(), gensA.end());
    for (const auto& P : pp.basisC.points) push.push_back(P);
    ChainResult chainM = quotient(A, gensM, pp.basisM.l, pp.basisM.e, push, rng);

    std::array<SurfacePoint, 3> kerA_onM = {chainM.pushed[0], chainM.pushed[1], chainM.pushed[2]};
    std::vector<SurfacePoint> cOnM(chainM.pushed.begin() + 3, chainM.pushed.end());
    ChainResult chainAM =
        quotient(chainM.codomain, kerA_onM, pp.basisA.l, pp.basisA.e, cOnM, rng);

    Signature sig;
    sig.surfAM = chainAM.codomain;
    sig.fpAM = surface_fingerprint(sig.surfAM);
    for (unsigned i = 0; i < 4; ++i) sig.pushedC[i] = chainAM.pushed[i];
    return sig;
}

bool signature_well_formed(const PublicParams& pp, const Signature& sig) {
    if (surface_fingerprint(sig.surfAM) != sig.fpAM) return false;
    Int order = pp.basisC.order();
    for (const auto& P : sig.pushedC) {
        if (P.is_jacobian() != sig.surfAM.is_jacobian()) return false;
        if (!surface_on(sig.surfAM, P)) return false;
        SurfacePoint id = surface_identity(sig.surfAM);
        if (surface_mul(sig.surfAM, order, P) != id) return false;
        if (surface_mul(sig.surfAM, order / pp.basisC.l, P) == id) return false;
    }
    return true;
}

bool check(const PublicParams& pp, const PrivateKey& pvk, const Bytes& message,
           const Signature& sig) {
    if (!signature_well_formed(pp, sig)) return false;
    Signature honest = sign(pp, pvk, message);
    if (surface_encode(sig.surfAM) != surface_encode(honest.surfAM)) return false;
    if (fingerprint_encode(*pp.T, sig.fpAM) != fingerprint_encode(*pp.T, honest.fpAM))
        return false;
    for (unsigned i = 0; i < 4; ++i)
        if (surface_point_encode(sig.surfAM, sig.pushedC[i]) !=
            surface_point_encode(honest.surfAM, honest.pushedC[i]))
            return false;
    return true;
}

std::pair<Commitment, SessionState> con_commit(const PublicParams& pp, const PrivateKey& pvk,
                                               const Bytes& message, const Signature& sig,
                                               std::uint64_t seed) {
    if (!check(pp, pvk, message, sig))
        fail(Err::SignatureInvalid, "cannot confirm an invalid signature, run disavowal");
    return commit_common(pp, pvk, message, sig, seed, false);
}

std::pair<Commitment, SessionState> forced_con_commit(const PublicParams& pp,
                                                      const PrivateKey& pvk, const Bytes& message,
                                                      const Signature& sig, std::uint64_t seed) {
    if (!signature_well_formed(pp, sig))
        fail(Err::SignatureInvalid, "claimed signature is structurally malformed");
    return commit_common(pp, pvk, message, sig, seed, false);
}

std::pair<Commitment, SessionState> dis_commit(const PublicParams& pp, const PrivateKey& pvk,
                                               const Bytes& message, const Signature& sig,
                                               std::uint64_t seed) {
    if (!signature_well_formed(pp, sig))
        fail(Err::SignatureInvalid, "claimed signature is structurally malformed");
    if (check(pp, pvk, message, sig))
        fail(Err::SignatureActuallyValid, "cannot disavow a valid signature");
    Signature honest = sign(pp, pvk, message);
    return commit_common(pp, pvk, message, honest, seed, true);
}

Response con_respond(SessionState& st, bool b) {
    if (st.phase != 0) fail(Err::OutOfOrder, "session already responded");
    st.phase = 1;
    Response resp;
    resp.b = b;
    if (b)
        resp.points = st.kerAC;
    else
        resp.scalars = st.c;
    return resp;
}

bool con_verify(const PublicParams& pp, const PublicKey& pbk, const Bytes& message,
                const Signature& sig, const Commitment& com, bool b, const Response& resp) {
    if (resp.b != b) fail(Err::MalformedResponse, "response does not answer the challenge bit");
    if (b) return kernel_reveal_consistent(pp, com, resp);
    RevealedView view;
    try {
        view = verifier_recompute(pp, pbk, message, sig, resp.scalars);
    } catch (const Error&) {
        return false;
    }
    return revealed_consistent(view, com) && view.fp_sig_C == com.fpAMC;
}

bool dis_verify(const PublicParams& pp, const PublicKey& pbk, const Bytes& message,
                const Signature& sig, const Commitment& com, bool b, const Response& resp) {
    if (resp.b != b) fail(Err::MalformedResponse, "response does not answer the challenge bit");
    if (b) return kernel_reveal_consistent(pp, com, resp);
    RevealedView view;
    try {
        view = verifier_recompute(pp, pbk, message, sig, resp.scalars);
    } catch (const Error&) {
        return false;
    }
    // disavowal succeeds when the claimed signature's quotient diverges from
    // the committed honest codomain while every auxiliary value matches
    return revealed_consistent(view, com) && view.fp_sig_C != com.fpAMC;
}

bool dis_examine(const PublicParams& pp, const PublicKey& pbk, const Bytes& message,
                 const Signature& sig, const Commitment& com, const Response& resp,
                 bool& divergent) {
    if (resp.b) fail(Err::MalformedResponse, "response does not answer the challenge bit");
    RevealedView view;
    try {
        view = verifier_recompute(pp, pbk, message, sig, resp.scalars);
    } catch (const Error&) {
        return false;
    }
    if (!revealed_consistent(view, com)) return false;
    divergent = divergent || view.fp_sig_C != com.fpAMC;
    return true;
}

Bytes frame_message(unsigned round, MsgKind kind, const Bytes& payload) {
    Bytes out;
    put_u32(round, out);
    out.push_back(static_cast<std::uint8_t>(kind));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

Bytes unframe_message(const Bytes& frame, unsigned round, MsgKind kind) {
    if (frame.size() < 5) fail(Err::TranscriptDesync, "short frame");
    std::uint32_t r = (std::uint32_t(frame[0]) << 24) | (std::uint32_t(frame[1]) << 16) |
                      (std::uint32_t(frame[2]) << 8) | std::uint32_t(frame[3]);
    if (r != round || frame[4] != static_cast<std::uint8_t>(kind))
        fail(Err::TranscriptDesync, "unexpected frame header");
    return Bytes(frame.begin() + 5, frame.end());
}

InteractiveResult run_interactive(SignerEndpoint& signer, VerifierEndpoint& verifier, bool dis,
                                  unsigned rounds) {
    InteractiveResult res;
    res.accept = (rounds > 0); // zero rounds prove nothing
    res.vacuous = (rounds == 0);
    const FieldTower& T = *signer.pp->T;
    Rng srng(signer.seed);
    Rng vrng(verifier.seed);
    // During disavowal a b = 0 round where everything is consistent but the
    // claimed signature's quotient happens to share the committed codomain's
    // isomorphism class proves nothing either way: at small parameters such
    // collisions occur. The verdict therefore requires every round to be
    // consistent and at least one b = 0 round to exhibit the divergence; a
    // valid signature can never diverge, and a commitment to a fabricated
    // codomain is caught by the b = 1 rounds.
    bool saw_b0 = false, saw_divergence = false;

    for (unsigned r = 0; r < rounds; ++r) {
        std::uint64_t round_seed = srng.next_u64();
        std::pair<Commitment, SessionState> cs =
            dis ? dis_commit(*signer.pp, *signer.pvk, signer.message, signer.sig, round_seed)
            : signer.force
                ? forced_con_commit(*signer.pp, *signer.pvk, signer.message, signer.sig,
                                    round_seed)
                : con_commit(*signer.pp, *signer.pvk, signer.message, signer.sig, round_seed);

        Bytes commit_frame = frame_message(r, MsgKind::Commit, encode_commitment(T, cs.first));
        res.transcript.push_back(commit_frame);

        bool ok = false;
        bool b = vrng.coin();
        Bytes chal = frame_message(r, MsgKind::Challenge, Bytes{b ? std::uint8_t(1)
                                                                  : std::uint8_t(0)});
        res.transcript.push_back(chal);
        Bytes chal_body = unframe_message(chal, r, MsgKind::Challenge);
        if (chal_body.size() != 1) fail(Err::TranscriptDesync, "bad challenge payload");

        Response resp = con_respond(cs.second, chal_body[0] != 0);
        Bytes resp_frame = frame_message(r, MsgKind::Response, encode_response(T, resp));
        res.transcript.push_back(resp_frame);

        try {
            Commitment com =
                decode_commitment(T, unframe_message(commit_frame, r, MsgKind::Commit));
            Response rx = decode_response(T, unframe_message(resp_frame, r, MsgKind::Response));
            if (dis && !b) {
                saw_b0 = true;
                ok = dis_examine(*verifier.pp, *verifier.pbk, verifier.message, verifier.sig,
                                 com, rx, saw_divergence);
            } else {
                ok = dis ? dis_verify(*verifier.pp, *verifier.pbk, verifier.message,
                                      verifier.sig, com, b, rx)
                         : con_verify(*verifier.pp, *verifier.pbk, verifier.message,
                                      verifier.sig, com, b, rx);
            }
        } catch (const Error&) {
            ok = false;
        }
        res.transcript.push_back(frame_message(r, MsgKind::Verdict,
                                               Bytes{ok ? std::uint8_t(1) : std::uint8_t(0)}));
        res.accept = res.accept && ok;
        ++res.rounds_run;
    }
    if (dis && saw_b0 && !saw_divergence) res.accept = false;
    return res;
}

} // namespace g2uds
