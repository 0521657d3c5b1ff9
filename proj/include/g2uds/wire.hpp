#pragma once

// Canonical serialization for every scheme object, and the on-disk artifact
// container: "G2U1" magic, kind byte, version byte, payload, then an 8-byte
// truncated SHA-256 checksum of all preceding bytes.

#include "g2uds/uds.hpp"

namespace g2uds {

enum class Kind : std::uint8_t {
    Params = 1,
    PubKey = 2,
    PrivKey = 3,
    Sig = 4,
    Commitment = 5,
    Transcript = 6,
    Response = 7,
    Instance = 8,
};

Bytes sha256(const Bytes& data);

Bytes pack_artifact(Kind kind, const Bytes& payload);
// Verifies magic, version, checksum and the expected kind.
Bytes unpack_artifact(Kind kind, const Bytes& file);

Bytes encode_params(const PublicParams& pp);
// Reads just the field parameters so the caller can build the tower the full
// decode needs.
FieldParams peek_params(const Bytes& payload);
PublicParams decode_params(const FieldTower& T, const Bytes& payload);

Bytes encode_public_key(const FieldTower& T, const PublicKey& pbk);
PublicKey decode_public_key(const FieldTower& T, const Bytes& payload);

Bytes encode_private_key(const PrivateKey& pvk);
PrivateKey decode_private_key(const Bytes& payload);

Bytes encode_signature(const FieldTower& T, const Signature& sig);
Signature decode_signature(const FieldTower& T, const Bytes& payload);

Bytes encode_commitment(const FieldTower& T, const Commitment& com);
Commitment decode_commitment(const FieldTower& T, const Bytes& payload);

Bytes encode_response(const FieldTower& T, const Response& resp);
Response decode_response(const FieldTower& T, const Bytes& payload);

Bytes encode_transcript(const std::vector<Bytes>& frames);
std::vector<Bytes> decode_transcript(const Bytes& payload);

} // namespace g2uds
