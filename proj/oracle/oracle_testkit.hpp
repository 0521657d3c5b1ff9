#pragma once

// Brute-force oracles and problem-instance generators used to validate the
// main library: schoolbook group counting, exhaustive kernel recovery, the
// computational/decisional problem samplers, and the unforgeability and
// invisibility game challengers. Group and isogeny logic here is written from
// the definitions and shares no code with the engine paths it checks; only
// field arithmetic and byte encodings are reused.

#include "g2uds/uds.hpp"
#include "g2uds/wire.hpp"

#include <functional>
#include <optional>
#include <string>

namespace g2uds::oracle {

// Group cardinality by counting curve points from the defining equations
// (point counts of the factors, or the zeta-function count from the genus-2
// curve's F_{p^2} and F_{p^4} point totals). TooLarge if (p+1)^4 > 2^26.
std::uint64_t enumerate_group(const g2uds::Surface& A);
std::uint64_t enumerate_group_serial(const g2uds::Surface& A);

// All points killed by m, found by exhaustive search from the curve
// equations. Products support any small m; jacobians support m = 2 (classes
// built from the Weierstrass roots).
std::vector<g2uds::SurfacePoint> enumerate_torsion(const g2uds::Surface& A, unsigned m);

// A subgroup as the sorted canonical encodings of all its elements, so two
// generator sets of the same subgroup compare equal.
struct SubgroupWitness {
    std::vector<g2uds::Bytes> elements;

    friend bool operator==(const SubgroupWitness& a, const SubgroupWitness& b) {
        return a.elements == b.elements;
    }
};

struct ProblemInstance {
    std::string kind;
    const g2uds::PublicParams* pp = nullptr;

    // public data; which slots are filled depends on the kind
    std::vector<g2uds::Surface> surfaces;
    std::vector<g2uds::Fingerprint> fps;
    std::vector<g2uds::SurfacePoint> points;
    std::optional<g2uds::PublicKey> pbk;

    // hidden witness, kept for oracle validation only
    std::array<g2uds::Int, 12> witness_scalars{};
    SubgroupWitness witness_subgroup;
    g2uds::Fingerprint witness_fp;
    int answer = -1; // decision kinds; -1 when not applicable
};

ProblemInstance gen_instance(const std::string& kind, const g2uds::PublicParams& pp,
                             std::uint64_t seed);

// Exhaustive search over the product-form maximal isotropic subgroups of
// A[lA^eA]: quotient j-invariants are recomputed with a from-the-definition
// Velu map and compared against the instance's public fingerprint.
// NotFound when no subgroup reproduces the public data.
SubgroupWitness cssi_bruteforce(const ProblemInstance& inst);
SubgroupWitness cssi_bruteforce_serial(const ProblemInstance& inst);

// ---------------------------------------------------------------------------
// Security-game challengers
// ---------------------------------------------------------------------------

struct GameResult {
    bool win = false;
    bool illegal = false;
    std::vector<std::string> log;
};

class UnforgeabilityChallenger {
  public:
    UnforgeabilityChallenger(const g2uds::PublicParams& pp, std::uint64_t seed, unsigned q_s);

    const g2uds::PublicKey& pbk() const { return pbk_; }
    g2uds::Signature sign_query(const g2uds::Bytes& message);
    // Routed through CON or DIS depending on validity, as the scheme requires.
    bool check_query(const g2uds::Bytes& message, const g2uds::Signature& sig);

    GameResult adjudicate(const g2uds::Bytes& m_star, const g2uds::Signature& s_star);

  private:
    const g2uds::PublicParams& pp_;
    g2uds::PublicKey pbk_;
    g2uds::PrivateKey pvk_;
    unsigned q_s_;
    std::uint64_t seed_;
    std::vector<std::pair<g2uds::Bytes, g2uds::Bytes>> issued_; // (msg, sig encoding)
};

using UnforgeAdversary =
    std::function<std::pair<g2uds::Bytes, g2uds::Signature>(UnforgeabilityChallenger&)>;

GameResult unforgeability_game(const UnforgeAdversary& adv, const g2uds::PublicParams& pp,
                               std::uint64_t seed, unsigned q_s);

class InvisibilityChallenger {
  public:
    InvisibilityChallenger(const g2uds::PublicParams& pp, std::uint64_t seed);

    const g2uds::PublicKey& pbk() const { return pbk_; }
    g2uds::Signature sign_query(const g2uds::Bytes& message);
    // Real signature or a structurally valid fake, by a hidden fair coin.
    g2uds::Signature challenge(const g2uds::Bytes& m_star);
    // Disallowed on the challenge pair once it exists.
    bool check_query(const g2uds::Bytes& message, const g2uds::Signature& sig);

    GameResult adjudicate(bool guess);

  private:
    const g2uds::PublicParams& pp_;
    g2uds::PublicKey pbk_;
    g2uds::PrivateKey pvk_;
    std::uint64_t seed_;
    bool hidden_bit_ = false;
    bool challenged_ = false;
    g2uds::Bytes m_star_;
    g2uds::Bytes challenge_sig_enc_;
};

using InvisAdversary = std::function<bool(InvisibilityChallenger&)>;

GameResult invisibility_game(const InvisAdversary& adv, const g2uds::PublicParams& pp,
                             std::uint64_t seed);

} // namespace g2uds::oracle
