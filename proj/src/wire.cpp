#include "g2uds/wire.hpp"

#include "g2uds/curve.hpp"

#include <openssl/sha.h>

#include <cstring>

namespace g2uds {

namespace {

const char kMagic[4] = {'G', '2', 'U', '1'};
constexpr std::uint8_t kVersion = 1;

void put_u8(std::uint8_t v, Bytes& out) { out.push_back(v); }

void put_u32(std::uint32_t v, Bytes& out) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

void put_int(const Int& v, Bytes& out) {
    std::size_t w = v == 0 ? 0 : byte_width(v);
    put_u32(static_cast<std::uint32_t>(w), out);
    if (w > 0) int_to_bytes(v, w, out);
}

void put_bytes(const Bytes& b, Bytes& out) {
    put_u32(static_cast<std::uint32_t>(b.size()), out);
    out.insert(out.end(), b.begin(), b.end());
}

struct Reader {
    const FieldTower* T = nullptr;
    const std::uint8_t* p = nullptr;
    std::size_t n = 0;

    void need(std::size_t k) const {
        if (k > n) fail(Err::TruncatedPayload, "payload ends mid-object");
    }
    std::uint8_t u8() {
        need(1);
        std::uint8_t v = *p;
        ++p;
        --n;
        return v;
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = (std::uint32_t(p[0]) << 24) | (std::uint32_t(p[1]) << 16) |
                          (std::uint32_t(p[2]) << 8) | std::uint32_t(p[3]);
        p += 4;
        n -= 4;
        return v;
    }
    Int integer() {
        std::uint32_t w = u32();
        need(w);
        Int v = int_from_bytes(p, w);
        p += w;
        n -= w;
        return v;
    }
    Bytes bytes() {
        std::uint32_t w = u32();
        need(w);
        Bytes b(p, p + w);
        p += w;
        n -= w;
        return b;
    }
    Fp2 fp2() {
        need(T->element_size());
        std::size_t used = 0;
        Fp2 v = T->decode(p, n, &used);
        p += used;
        n -= used;
        return v;
    }
    void done() const {
        if (n != 0) fail(Err::TruncatedPayload, "trailing bytes after payload");
    }
};

void put_fp2(const FieldTower& T, const Fp2& x, Bytes& out) { T.encode(x, out); }

void put_surface(const Surface& A, Bytes& out) {
    Bytes body = surface_encode(A);
    out.insert(out.end(), body.begin(), body.end());
}

Surface read_surface(Reader& r) {
    const FieldTower& T = *r.T;
    std::uint8_t tag = r.u8();
    if (tag == 0) {
        std::vector<Fp2> coeffs;
        for (int i = 0; i < 7; ++i) coeffs.push_back(r.fp2());
        while (!coeffs.empty() && coeffs.back().is_zero()) coeffs.pop_back();
        return Surface{make_curve(T, coeffs)};
    }
    if (tag != 1) fail(Err::TruncatedPayload, "unknown surface tag");
    Fp2 a1 = r.fp2(), b1 = r.fp2(), a2 = r.fp2(), b2 = r.fp2();
    return Surface{EllipticProduct{make_elliptic(T, a1, b1), make_elliptic(T, a2, b2)}};
}

void put_point(const Surface& A, const SurfacePoint& P, Bytes& out) {
    Bytes body = surface_point_encode(A, P);
    out.insert(out.end(), body.begin(), body.end());
}

SurfacePoint read_point(Reader& r) {
    const FieldTower& T = *r.T;
    std::uint8_t tag = r.u8();
    if (tag == 0) {
        int du = r.u8();
        if (du > 2) fail(Err::TruncatedPayload, "divisor degree out of range");
        std::vector<Fp2> uc, vc;
        for (int i = 0; i < du; ++i) uc.push_back(r.fp2());
        for (int i = 0; i < du; ++i) vc.push_back(r.fp2());
        uc.push_back(T.one()); // monic leading coefficient is implicit
        return SurfacePoint{Divisor<Fp2>{Poly<Fp2>(uc), Poly<Fp2>(vc)}};
    }
    if (tag != 1) fail(Err::TruncatedPayload, "unknown point tag");
    auto read_ec = [&]() {
        ECPoint P;
        P.inf = r.u8() != 0;
        if (!P.inf) {
            P.x = r.fp2();
            P.y = r.fp2();
        }
        return P;
    };
    ECPoint P1 = read_ec();
    ECPoint P2 = read_ec();
    return SurfacePoint{ProductPoint{P1, P2}};
}

void put_fingerprint(const FieldTower& T, const Fingerprint& fp, Bytes& out) {
    Bytes body = fingerprint_encode(T, fp);
    out.insert(out.end(), body.begin(), body.end());
}

Fingerprint read_fingerprint(Reader& r) {
    Fingerprint fp;
    std::uint8_t tag = r.u8();
    if (tag == 1) {
        fp.split = true;
        fp.j1 = r.fp2();
        fp.j2 = r.fp2();
        return fp;
    }
    if (tag != 0) fail(Err::TruncatedPayload, "unknown fingerprint tag");
    fp.split = false;
    fp.g.g1 = r.fp2();
    fp.g.g2 = r.fp2();
    fp.g.g3 = r.fp2();
    fp.g.extended = r.u8() != 0;
    if (fp.g.extended) {
        fp.g.h1 = r.fp2();
        fp.g.h2 = r.fp2();
    }
    return fp;
}

void put_basis(const Surface& A, const SurfaceBasis& B, Bytes& out) {
    put_u32(B.l, out);
    put_u32(B.e, out);
    for (const auto& P : B.points) put_point(A, P, out);
}

SurfaceBasis read_basis(Reader& r) {
    SurfaceBasis B;
    B.l = r.u32();
    B.e = r.u32();
    for (auto& P : B.points) P = read_point(r);
    return B;
}

void put_field_params(const FieldParams& fp, Bytes& out) {
    put_int(fp.p, out);
    put_u32(fp.lA, out);
    put_u32(fp.eA, out);
    put_u32(fp.lM, out);
    put_u32(fp.eM, out);
    put_u32(fp.lC, out);
    put_u32(fp.eC, out);
    put_int(fp.f, out);
    put_u8(fp.sign < 0 ? 0 : 1, out);
}

FieldParams read_field_params(Reader& r) {
    Int p = r.integer();
    unsigned lA = r.u32(), eA = r.u32(), lM = r.u32(), eM = r.u32(), lC = r.u32(), eC = r.u32();
    Int f = r.integer();
    int sign = r.u8() == 0 ? -1 : 1;
    FieldParams fp = make_params(lA, eA, lM, eM, lC, eC, f, sign);
    if (fp.p != p) fail(Err::BadShape, "stored prime disagrees with its factorization");
    return fp;
}

} // namespace

Bytes sha256(const Bytes& data) {
    Bytes out(SHA256_DIGEST_LENGTH);
    SHA256(data.data(), data.size(), out.data());
    return out;
}

Bytes pack_artifact(Kind kind, const Bytes& payload) {
    Bytes out(kMagic, kMagic + 4);
    out.push_back(static_cast<std::uint8_t>(kind));
    out.push_back(kVersion);
    out.insert(out.end(), payload.begin(), payload.end());
    Bytes digest = sha256(out);
    out.insert(out.end(), digest.begin(), digest.begin() + 8);
    return out;
}

Bytes unpack_artifact(Kind kind, const Bytes& file) {
    if (file.size() < 4 + 1 + 1 + 8) fail(Err::TruncatedPayload, "artifact too short");
    if (std::memcmp(file.data(), kMagic, 4) != 0) fail(Err::BadMagic, "not an artifact file");
    Bytes body(file.begin(), file.end() - 8);
    Bytes digest = sha256(body);
    if (!std::equal(digest.begin(), digest.begin() + 8, file.end() - 8))
        fail(Err::BadChecksum, "artifact checksum mismatch");
    if (file[4] != static_cast<std::uint8_t>(kind))
        fail(Err::KindMismatch, "artifact holds a different object kind");
    if (file[5] != kVersion) fail(Err::BadMagic, "unsupported artifact version");
    return Bytes(file.begin() + 6, file.end() - 8);
}

Bytes encode_params(const PublicParams& pp) {
    Bytes out;
    put_field_params(pp.T->params(), out);
    put_surface(pp.surface, out);
    put_basis(pp.surface, pp.basisA, out);
    put_basis(pp.surface, pp.basisM, out);
    put_basis(pp.surface, pp.basisC, out);
    Bytes id(pp.hash_id.begin(), pp.hash_id.end());
    put_bytes(id, out);
    put_u32(pp.rounds, out);
    return out;
}

FieldParams peek_params(const Bytes& payload) {
    Reader r{nullptr, payload.data(), payload.size()};
    return read_field_params(r);
}

PublicParams decode_params(const FieldTower& T, const Bytes& payload) {
    Reader r{&T, payload.data(), payload.size()};
    FieldParams fp = read_field_params(r);
    if (fp.p != T.params().p) fail(Err::BadShape, "tower built for a different prime");
    PublicParams pp;
    pp.T = &T;
    pp.surface = read_surface(r);
    pp.basisA = read_basis(r);
    pp.basisM = read_basis(r);
    pp.basisC = read_basis(r);
    Bytes id = r.bytes();
    pp.hash_id.assign(id.begin(), id.end());
    pp.rounds = r.u32();
    r.done();
    return pp;
}

Bytes encode_public_key(const FieldTower& T, const PublicKey& pbk) {
    Bytes out;
    put_surface(pbk.surfA, out);
    put_fingerprint(T, pbk.fpA, out);
    for (const auto& P : pbk.pushedC) put_point(pbk.surfA, P, out);
    return out;
}

PublicKey decode_public_key(const FieldTower& T, const Bytes& payload) {
    Reader r{&T, payload.data(), payload.size()};
    PublicKey pbk;
    pbk.surfA = read_surface(r);
    pbk.fpA = read_fingerprint(r);
    for (auto& P : pbk.pushedC) P = read_point(r);
    r.done();
    return pbk;
}

Bytes encode_private_key(const PrivateKey& pvk) {
    Bytes out;
    put_u32(12, out);
    for (const auto& x : pvk.a) put_int(x, out);
    return out;
}

PrivateKey decode_private_key(const Bytes& payload) {
    Reader r{nullptr, payload.data(), payload.size()};
    if (r.u32() != 12) fail(Err::TruncatedPayload, "private key scalar count");
    PrivateKey pvk;
    for (auto& x : pvk.a) x = r.integer();
    r.done();
    return pvk;
}

Bytes encode_signature(const FieldTower& T, const Signature& sig) {
    Bytes out;
    put_surface(sig.surfAM, out);
    put_fingerprint(T, sig.fpAM, out);
    for (const auto& P : sig.pushedC) put_point(sig.surfAM, P, out);
    return out;
}

Signature decode_signature(const FieldTower& T, const Bytes& payload) {
    Reader r{&T, payload.data(), payload.size()};
    Signature sig;
    sig.surfAM = read_surface(r);
    sig.fpAM = read_fingerprint(r);
    for (auto& P : sig.pushedC) P = read_point(r);
    r.done();
    return sig;
}

Bytes encode_commitment(const FieldTower& T, const Commitment& com) {
    Bytes out;
    put_surface(com.surfC, out);
    put_fingerprint(T, com.fpC, out);
    put_fingerprint(T, com.fpAC, out);
    put_fingerprint(T, com.fpMC, out);
    put_fingerprint(T, com.fpAMC, out);
    for (const auto& P : com.kerCMC) put_point(com.surfC, P, out);
    return out;
}

Commitment decode_commitment(const FieldTower& T, const Bytes& payload) {
    Reader r{&T, payload.data(), payload.size()};
    Commitment com;
    com.surfC = read_surface(r);
    com.fpC = read_fingerprint(r);
    com.fpAC = read_fingerprint(r);
    com.fpMC = read_fingerprint(r);
    com.fpAMC = read_fingerprint(r);
    for (auto& P : com.kerCMC) P = read_point(r);
    r.done();
    return com;
}

Bytes encode_response(const FieldTower& T, const Response& resp) {
    Bytes out;
    put_u8(resp.b ? 1 : 0, out);
    if (resp.b) {
        // points stand alone; encode with the product/jacobian tag only
        for (const auto& P : resp.points) {
            if (P.is_jacobian()) {
                Bytes body;
                body.push_back(0);
                const Divisor<Fp2>& d = P.divisor();
                int du = d.u.deg();
                body.push_back(static_cast<std::uint8_t>(du));
                Fp2 zero = T.zero();
                for (int i = 0; i < du; ++i) T.encode(d.u.coeff_or_zero(i, zero), body);
                for (int i = 0; i < du; ++i) T.encode(d.v.coeff_or_zero(i, zero), body);
                out.insert(out.end(), body.begin(), body.end());
            } else {
                out.push_back(1);
                auto put_ec = [&](const ECPoint& p) {
                    out.push_back(p.inf ? 1 : 0);
                    if (!p.inf) {
                        T.encode(p.x, out);
                        T.encode(p.y, out);
                    }
                };
                put_ec(P.pair().P1);
                put_ec(P.pair().P2);
            }
        }
    } else {
        for (const auto& x : resp.scalars) put_int(x, out);
    }
    return out;
}

Response decode_response(const FieldTower& T, const Bytes& payload) {
    Reader r{&T, payload.data(), payload.size()};
    Response resp;
    resp.b = r.u8() != 0;
    if (resp.b)
        for (auto& P : resp.points) P = read_point(r);
    else
        for (auto& x : resp.scalars) x = r.integer();
    r.done();
    return resp;
}

Bytes encode_transcript(const std::vector<Bytes>& frames) {
    Bytes out;
    put_u32(static_cast<std::uint32_t>(frames.size()), out);
    for (const auto& f : frames) put_bytes(f, out);
    return out;
}

std::vector<Bytes> decode_transcript(const Bytes& payload) {
    Reader r{nullptr, payload.data(), payload.size()};
    std::uint32_t count = r.u32();
    std::vector<Bytes> frames;
    frames.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) frames.push_back(r.bytes());
    r.done();
    return frames;
}

} // namespace g2uds
