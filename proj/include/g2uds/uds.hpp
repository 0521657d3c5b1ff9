#pragma once

// The undeniable signature scheme: KeyGen / Sign / Check plus the interactive
// confirmation (CON) and disavowal (DIS) protocols. All protocol surfaces are
// elliptic products so that kernels of every prime power order can be pushed
// through product-form isogeny chains; signing is deterministic, commitment
// randomness is fresh per round from a seeded stream.
//
// Wire objects carry the concrete surface model next to its fingerprint:
// points are meaningless without the model they live on, while acceptance
// decisions compare fingerprints only.

#include "g2uds/chain.hpp"
#include "g2uds/walk.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace g2uds {

struct SurfaceBasis {
    std::array<SurfacePoint, 4> points;
    unsigned l = 0, e = 0;

    Int order() const { return int_pow(l, e); }
};

struct PublicParams {
    const FieldTower* T = nullptr;
    Surface surface; // the common starting surface
    SurfaceBasis basisA, basisM, basisC;
    std::string hash_id;
    unsigned rounds = 32;
};

struct PrivateKey {
    std::array<Int, 12> a;
};

struct PublicKey {
    Surface surfA;
    Fingerprint fpA;
    std::array<SurfacePoint, 4> pushedC; // images of the C-basis on surfA
};

struct Signature {
    Surface surfAM;
    Fingerprint fpAM;
    std::array<SurfacePoint, 4> pushedC; // images of the C-basis on surfAM
};

struct Commitment {
    Surface surfC;
    Fingerprint fpC, fpAC, fpMC, fpAMC;
    std::array<SurfacePoint, 3> kerCMC; // image of the message kernel on surfC
};

struct Response {
    bool b = false;
    std::array<Int, 12> scalars;         // b = 0: the commitment scalars c
    std::array<SurfacePoint, 3> points;  // b = 1: image of the key kernel on surfC
};

// One signer-side session round: commit, await challenge, respond.
struct SessionState {
    bool dis = false;
    unsigned phase = 0; // 0 = committed / awaiting challenge, 1 = responded
    std::array<Int, 12> c;
    std::array<SurfacePoint, 3> kerAC; // image of the key kernel on surfC
    Commitment com;
};

using Bytes = std::vector<std::uint8_t>;

// Three kernel generators sum_i s_{4k+i} B_i, k = 0,1,2.
std::array<SurfacePoint, 3> kernel_generators(const Surface& A, const SurfaceBasis& B,
                                              const std::array<Int, 12>& s);

// True when the generators span a product-form subgroup of order l^{2e} whose
// quotient chain runs to completion.
bool kernel_scalars_valid(const Surface& A, const SurfaceBasis& B, const std::array<Int, 12>& s);

// Deterministic public parameters: walks the Richelot graph from a fixed
// supersingular curve until a split neighbor yields an elliptic product, then
// draws the three torsion bases on it.
PublicParams setup(const FieldTower& T, std::uint64_t seed, unsigned rounds = 32);

// Counter-mode hash of the message to 12 scalars mod lM^eM defining a valid
// kernel; a retry counter is folded into the derivation so rejection is
// deterministic. Bounded at 2^16 retries.
std::array<Int, 12> hash_to_scalars(const PublicParams& pp, const Bytes& message);

std::pair<PublicKey, PrivateKey> keygen(const PublicParams& pp, std::uint64_t seed);

Signature sign(const PublicParams& pp, const PrivateKey& pvk, const Bytes& message);

// Signer-side validity decision: recompute and compare canonical encodings.
bool check(const PublicParams& pp, const PrivateKey& pvk, const Bytes& message,
           const Signature& sig);

// Structural sanity of a claimed signature: points on the model, exact order
// lC^eC. Malformed claims are rejected before any protocol run.
bool signature_well_formed(const PublicParams& pp, const Signature& sig);

// Commitment phase shared by CON and DIS. con_commit requires check() = 1
// (SignatureInvalid otherwise); dis_commit requires check() = 0
// (SignatureActuallyValid otherwise). DIS commits to the honest signature's
// codomain fingerprint, recomputed from the private key.
std::pair<Commitment, SessionState> con_commit(const PublicParams& pp, const PrivateKey& pvk,
                                               const Bytes& message, const Signature& sig,
                                               std::uint64_t seed);
std::pair<Commitment, SessionState> dis_commit(const PublicParams& pp, const PrivateKey& pvk,
                                               const Bytes& message, const Signature& sig,
                                               std::uint64_t seed);

// Test hook for dishonest-prover experiments: commit without the validity
// precondition.
std::pair<Commitment, SessionState> forced_con_commit(const PublicParams& pp,
                                                      const PrivateKey& pvk, const Bytes& message,
                                                      const Signature& sig, std::uint64_t seed);

// b = 0 reveals the 12 commitment scalars, b = 1 the key-kernel image on
// surfC. OutOfOrder when the session has already responded.
Response con_respond(SessionState& st, bool b);
inline Response dis_respond(SessionState& st, bool b) { return con_respond(st, b); }

// Verifier decisions from public data only.
bool con_verify(const PublicParams& pp, const PublicKey& pbk, const Bytes& message,
                const Signature& sig, const Commitment& com, bool b, const Response& resp);
bool dis_verify(const PublicParams& pp, const PublicKey& pbk, const Bytes& message,
                const Signature& sig, const Commitment& com, bool b, const Response& resp);

// Disavowal b = 0 examination for session aggregation: returns whether the
// revealed scalars are consistent with the commitment, and sets divergent
// when the claimed signature's quotient differs from the committed codomain.
// A consistent, non-divergent round is inconclusive rather than failing: at
// small parameters distinct surfaces can share an isomorphism class, so the
// session verdict demands consistency everywhere plus one divergence.
bool dis_examine(const PublicParams& pp, const PublicKey& pbk, const Bytes& message,
                 const Signature& sig, const Commitment& com, const Response& resp,
                 bool& divergent);

// ---------------------------------------------------------------------------
// Interactive sessions: framed messages, 4-byte big-endian round index then a
// kind byte (0 commit, 1 challenge, 2 response, 3 verdict) then the payload
// in canonical encodings.
// ---------------------------------------------------------------------------

enum class MsgKind : std::uint8_t { Commit = 0, Challenge = 1, Response = 2, Verdict = 3 };

Bytes frame_message(unsigned round, MsgKind kind, const Bytes& payload);
// Throws TranscriptDesync unless the frame carries the expected header.
Bytes unframe_message(const Bytes& frame, unsigned round, MsgKind kind);

struct SignerEndpoint {
    const PublicParams* pp = nullptr;
    const PrivateKey* pvk = nullptr;
    Bytes message;
    Signature sig;
    std::uint64_t seed = 0;
    bool force = false; // run CON even on an invalid signature (cheating prover)
};

struct VerifierEndpoint {
    const PublicParams* pp = nullptr;
    const PublicKey* pbk = nullptr;
    Bytes message;
    Signature sig;
    std::uint64_t seed = 0;
};

struct InteractiveResult {
    bool accept = false;
    bool vacuous = false; // rounds = 0
    unsigned rounds_run = 0;
    std::vector<Bytes> transcript;
};

InteractiveResult run_interactive(SignerEndpoint& signer, VerifierEndpoint& verifier, bool dis,
                                  unsigned rounds);

} // namespace g2uds
