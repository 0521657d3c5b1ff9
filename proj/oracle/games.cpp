#include "oracle_testkit.hpp"

namespace g2uds::oracle {

namespace {

using namespace g2uds;

// The verifier-side validity decision an adversary can actually obtain: a
// full interactive CON run when the signer believes the signature valid, a
// DIS run otherwise. Returns the claim the completed protocol supports.
bool interactive_check(const PublicParams& pp, const PrivateKey& pvk, const PublicKey& pbk,
                       const Bytes& message, const Signature& sig, std::uint64_t seed) {
    if (!signature_well_formed(pp, sig)) return false;
    bool valid = check(pp, pvk, message, sig);
    SignerEndpoint s{&pp, &pvk, message, sig, seed, false};
    VerifierEndpoint v{&pp, &pbk, message, sig, seed ^ 0x9e3779b97f4a7c15ull};
    InteractiveResult r = run_interactive(s, v, !valid, pp.rounds);
    if (valid) return r.accept;
    return false; // DIS outcome never vouches for validity
}

} // namespace

// ---------------------------------------------------------------------------
// Unforgeability
// ---------------------------------------------------------------------------

UnforgeabilityChallenger::UnforgeabilityChallenger(const PublicParams& pp, std::uint64_t seed,
                                                   unsigned q_s)
    : pp_(pp), q_s_(q_s), seed_(seed) {
    auto kp = keygen(pp, seed);
    pbk_ = kp.first;
    pvk_ = kp.second;
}

Signature UnforgeabilityChallenger::sign_query(const Bytes& message) {
    if (issued_.size() >= q_s_) fail(Err::IllegalQuery, "sign-query budget exhausted");
    Signature sig = sign(pp_, pvk_, message);
    issued_.emplace_back(message, encode_signature(*pp_.T, sig));
    return sig;
}

bool UnforgeabilityChallenger::check_query(const Bytes& message, const Signature& sig) {
    return interactive_check(pp_, pvk_, pbk_, message, sig, ++seed_);
}

GameResult UnforgeabilityChallenger::adjudicate(const Bytes& m_star, const Signature& s_star) {
    GameResult res;
    Bytes enc = encode_signature(*pp_.T, s_star);
    for (const auto& [m, e] : issued_) {
        if (m == m_star && e == enc) {
            res.log.push_back("forgery replays an issued signature");
            return res;
        }
    }
    for (const auto& [m, e] : issued_) {
        if (m == m_star) {
            res.illegal = true;
            res.log.push_back("forgery targets a sign-queried message");
            return res;
        }
    }
    res.win = signature_well_formed(pp_, s_star) && check(pp_, pvk_, m_star, s_star);
    res.log.push_back(res.win ? "fresh valid forgery" : "forgery rejected");
    return res;
}

GameResult unforgeability_game(const UnforgeAdversary& adv, const PublicParams& pp,
                               std::uint64_t seed, unsigned q_s) {
    UnforgeabilityChallenger ch(pp, seed, q_s);
    try {
        auto [m_star, s_star] = adv(ch);
        return ch.adjudicate(m_star, s_star);
    } catch (const Error& e) {
        if (e.code() == Err::IllegalQuery) {
            GameResult res;
            res.illegal = true;
            res.log.push_back(e.what());
            return res;
        }
        throw;
    }
}

// ---------------------------------------------------------------------------
// Invisibility
// ---------------------------------------------------------------------------

InvisibilityChallenger::InvisibilityChallenger(const PublicParams& pp, std::uint64_t seed)
    : pp_(pp), seed_(seed) {
    auto kp = keygen(pp, seed);
    pbk_ = kp.first;
    pvk_ = kp.second;
}

Signature InvisibilityChallenger::sign_query(const Bytes& message) {
    return sign(pp_, pvk_, message);
}

Signature InvisibilityChallenger::challenge(const Bytes& m_star) {
    if (challenged_) fail(Err::IllegalQuery, "challenge already issued");
    challenged_ = true;
    m_star_ = m_star;
    Rng rng(++seed_);
    hidden_bit_ = rng.coin();
    Signature sig;
    if (hidden_bit_) {
        sig = sign(pp_, pvk_, m_star);
    } else {
        // structurally valid fake: a surface from a fresh random walk with
        // four random points of the auxiliary order on it, so that nothing
        // but the isogeny relation itself can give the bit away
        PublicParams fresh = setup(*pp_.T, rng.next_u64(), pp_.rounds);
        sig.surfAM = fresh.surface;
        sig.fpAM = surface_fingerprint(sig.surfAM);
        Int lc = fresh.basisC.order();
        for (auto& P : sig.pushedC) {
            do {
                P = surface_identity(sig.surfAM);
                for (const auto& B : fresh.basisC.points)
                    P = surface_add(sig.surfAM, P,
                                    surface_mul(sig.surfAM, rng.below(lc), B));
                // exact order: killing the last prime factor must not hit 0
            } while (surface_mul(sig.surfAM, lc / fresh.basisC.l, P) ==
                     surface_identity(sig.surfAM));
        }
    }
    challenge_sig_enc_ = encode_signature(*pp_.T, sig);
    return sig;
}

bool InvisibilityChallenger::check_query(const Bytes& message, const Signature& sig) {
    if (challenged_ && message == m_star_ &&
        encode_signature(*pp_.T, sig) == challenge_sig_enc_)
        fail(Err::IllegalQuery, "check query on the challenge pair");
    return interactive_check(pp_, pvk_, pbk_, message, sig, ++seed_);
}

GameResult InvisibilityChallenger::adjudicate(bool guess) {
    GameResult res;
    if (!challenged_) {
        res.illegal = true;
        res.log.push_back("adjudication without a challenge");
        return res;
    }
    res.win = (guess == hidden_bit_);
    res.log.push_back(res.win ? "bit guessed" : "bit missed");
    return res;
}

GameResult invisibility_game(const InvisAdversary& adv, const PublicParams& pp,
                             std::uint64_t seed) {
    InvisibilityChallenger ch(pp, seed);
    try {
        bool guess = adv(ch);
        return ch.adjudicate(guess);
    } catch (const Error& e) {
        if (e.code() == Err::IllegalQuery) {
            GameResult res;
            res.illegal = true;
            res.log.push_back(e.what());
            return res;
        }
        throw;
    }
}

} // namespace g2uds::oracle
