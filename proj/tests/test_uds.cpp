#include "g2uds/uds.hpp"
#include "g2uds/wire.hpp"

#include <doctest.h>

using namespace g2uds;

namespace {

FieldParams params59() { return make_params(2, 2, 3, 1, 5, 1, 1, -1); }

Bytes msg(const char* s) { return Bytes(s, s + std::string(s).size()); }

} // namespace

TEST_CASE("setup lands on an elliptic product with bases of the right order") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 7);
    CHECK_FALSE(pp.surface.is_jacobian());
    CHECK(pp.rounds == 32);
    CHECK(pp.hash_id == "sha256-ctr");
    struct {
        const SurfaceBasis* B;
        unsigned l, e;
    } cases[] = {{&pp.basisA, 2, 2}, {&pp.basisM, 3, 1}, {&pp.basisC, 5, 1}};
    for (auto& c : cases) {
        CHECK(c.B->l == c.l);
        CHECK(c.B->e == c.e);
        Int le = c.B->order();
        for (const auto& P : c.B->points) {
            CHECK(surface_on(pp.surface, P));
            CHECK(surface_mul(pp.surface, le, P) == surface_identity(pp.surface));
            CHECK_FALSE(P == surface_identity(pp.surface));
        }
    }
    // deterministic in the seed
    PublicParams pp2 = setup(T, 7);
    CHECK(encode_params(pp) == encode_params(pp2));
    PublicParams pp3 = setup(T, 8);
    CHECK(encode_params(pp) != encode_params(pp3));
}

TEST_CASE("hash_to_scalars is deterministic, message-sensitive and valid") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 7);
    auto s1 = hash_to_scalars(pp, msg("alpha"));
    auto s2 = hash_to_scalars(pp, msg("alpha"));
    auto s3 = hash_to_scalars(pp, msg("beta"));
    CHECK(s1 == s2);
    CHECK(s1 != s3);
    CHECK(kernel_scalars_valid(pp.surface, pp.basisM, s1));
    CHECK(kernel_scalars_valid(pp.surface, pp.basisM, s3));
}

TEST_CASE("sign and check round-trip; tampering is caught") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 7);
    auto [pbk, pvk] = keygen(pp, 11);
    Bytes m = msg("the quick brown fox");
    Signature sig = sign(pp, pvk, m);
    CHECK(signature_well_formed(pp, sig));
    CHECK(check(pp, pvk, m, sig));
    // deterministic signing
    Signature sig2 = sign(pp, pvk, m);
    CHECK(encode_signature(T, sig) == encode_signature(T, sig2));
    // wrong message
    CHECK_FALSE(check(pp, pvk, msg("the quick brown fax"), sig));
    // wrong key
    auto [pbk2, pvk2] = keygen(pp, 12);
    CHECK_FALSE(check(pp, pvk2, m, sig));
    // tampered pushed point
    Signature bad = sig;
    bad.pushedC[0] = surface_add(bad.surfAM, bad.pushedC[0], bad.pushedC[1]);
    CHECK_FALSE(check(pp, pvk, m, bad));
    // signature for another message is well formed but invalid here
    Signature other = sign(pp, pvk, msg("other"));
    CHECK(signature_well_formed(pp, other));
    CHECK_FALSE(check(pp, pvk, m, other));
}

TEST_CASE("confirmation rounds accept an honest signature under both challenges") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 7);
    auto [pbk, pvk] = keygen(pp, 11);
    Bytes m = msg("confirm me");
    Signature sig = sign(pp, pvk, m);
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        auto [com, st] = con_commit(pp, pvk, m, sig, seed);
        for (bool b : {false, true}) {
            SessionState s2 = st;
            Response resp = con_respond(s2, b);
            CHECK(con_verify(pp, pbk, m, sig, com, b, resp));
            CHECK_THROWS_AS(con_respond(s2, b), Error); // one response per session
        }
    }
}

TEST_CASE("confirmation rejects mismatched commitments and responses") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 7);
    auto [pbk, pvk] = keygen(pp, 11);
    Bytes m = msg("confirm me");
    Signature sig = sign(pp, pvk, m);
    auto [com, st] = con_commit(pp, pvk, m, sig, 1);
    auto [com2, st2] = con_commit(pp, pvk, m, sig, 99);

    SessionState a = st;
    Response r0 = con_respond(a, false);
    // response from another session does not open this commitment
    SessionState b = st2;
    Response r0x = con_respond(b, false);
    CHECK_FALSE(con_verify(pp, pbk, m, sig, com, false, r0x));

    // commitment tamper flips the composite fingerprint check
    Commitment comx = com;
    std::swap(comx.fpAC, comx.fpMC);
    if (!(com.fpAC == com.fpMC)) CHECK_FALSE(con_verify(pp, pbk, m, sig, comx, false, r0));

    SessionState c = st;
    Response r1 = con_respond(c, true);
    CHECK(con_verify(pp, pbk, m, sig, com, true, r1));
    Response badp = r1;
    badp.points[0] = surface_add(com.surfC, badp.points[0], com.kerCMC[0]);
    CHECK_FALSE(con_verify(pp, pbk, m, sig, com, true, badp));
}

TEST_CASE("commit phase enforces the validity preconditions") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 7);
    auto [pbk, pvk] = keygen(pp, 11);
    Bytes m = msg("precondition");
    Signature sig = sign(pp, pvk, m);
    Signature forged = sign(pp, pvk, msg("something else"));
    CHECK_THROWS_AS(con_commit(pp, pvk, m, forged, 1), Error);
    CHECK_THROWS_AS(dis_commit(pp, pvk, m, sig, 1), Error);
}

TEST_CASE("disavowal accepts forged signatures and a cheating prover fails CON") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 7);
    auto [pbk, pvk] = keygen(pp, 11);
    Bytes m = msg("disavow me");
    Signature forged = sign(pp, pvk, msg("not the message"));

    // honest DIS: both challenge bits verify
    auto [com, st] = dis_commit(pp, pvk, m, forged, 5);
    for (bool b : {false, true}) {
        SessionState s2 = st;
        Response resp = dis_respond(s2, b);
        CHECK(dis_verify(pp, pbk, m, forged, com, b, resp));
    }

    // a prover forcing CON on the forgery survives b = 0 but not b = 1
    auto [fcom, fst] = forced_con_commit(pp, pvk, m, forged, 5);
    SessionState s0 = fst;
    CHECK(con_verify(pp, pbk, m, forged, fcom, false, con_respond(s0, false)));
    SessionState s1 = fst;
    CHECK_FALSE(con_verify(pp, pbk, m, forged, fcom, true, con_respond(s1, true)));

    // DIS of a valid signature is refused at commit time, and dis_verify
    // rejects when the committed composite equals the signature's
    Signature sig = sign(pp, pvk, m);
    CHECK_THROWS_AS(dis_commit(pp, pvk, m, sig, 1), Error);
}

TEST_CASE("interactive sessions: honest runs, cheating prover, framing") {
    FieldTower T(params59());
    PublicParams pp = setup(T, 7);
    auto [pbk, pvk] = keygen(pp, 11);
    Bytes m = msg("interactive");
    Signature sig = sign(pp, pvk, m);
    Signature forged = sign(pp, pvk, msg("forged"));

    SignerEndpoint s{&pp, &pvk, m, sig, 101, false};
    VerifierEndpoint v{&pp, &pbk, m, sig, 202};
    InteractiveResult con = run_interactive(s, v, false, 8);
    CHECK(con.accept);
    CHECK(con.rounds_run == 8);
    CHECK(con.transcript.size() == 8 * 4);

    SignerEndpoint sd{&pp, &pvk, m, forged, 103, false};
    VerifierEndpoint vd{&pp, &pbk, m, forged, 204};
    InteractiveResult dis = run_interactive(sd, vd, true, 8);
    CHECK(dis.accept);

    // cheating prover claiming CON on a forgery loses within a few rounds
    SignerEndpoint sc{&pp, &pvk, m, forged, 105, true};
    VerifierEndpoint vc{&pp, &pbk, m, forged, 206};
    InteractiveResult cheat = run_interactive(sc, vc, false, 16);
    CHECK_FALSE(cheat.accept);

    // zero rounds prove nothing
    SignerEndpoint s0{&pp, &pvk, m, sig, 1, false};
    VerifierEndpoint v0{&pp, &pbk, m, sig, 2};
    InteractiveResult vac = run_interactive(s0, v0, false, 0);
    CHECK(vac.vacuous);
    CHECK_FALSE(vac.accept);

    // frame headers are strict
    Bytes f = frame_message(3, MsgKind::Challenge, {0x01});
    CHECK(unframe_message(f, 3, MsgKind::Challenge) == Bytes{0x01});
    CHECK_THROWS_AS(unframe_message(f, 4, MsgKind::Challenge), Error);
    CHECK_THROWS_AS(unframe_message(f, 3, MsgKind::Response), Error);
    Bytes cut(f.begin(), f.begin() + 4); // shorter than the header
    CHECK_THROWS_AS(unframe_message(cut, 3, MsgKind::Challenge), Error);
}
