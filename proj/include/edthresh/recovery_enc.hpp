#pragma once

#include <optional>
#include <stdexcept>

#include "edthresh/hashing.hpp"
#include "edthresh/random.hpp"
#include "edthresh/zkp.hpp"

namespace edthresh {

/// Hashed-DH encryption of scalars to the recovery party:
///   ct = encode(e B) || (le(m) XOR H'(frame("ENC", encode(e pk))))
/// IND-CPA under DDH in the order-q subgroup.
struct RecoveryKeypair {
  Int sk;
  EdPoint pk;

  static RecoveryKeypair generate(const CurveProfile& prof, RandomSource& rng) {
    Int sk = rng.below(prof.q() - 1) + 1;
    return {sk, prof.mul_base(sk)};
  }
};

class DecryptError : public std::runtime_error {
 public:
  explicit DecryptError(const std::string& what) : std::runtime_error(what) {}
};

inline std::size_t ciphertext_size(const CurveProfile& prof) { return prof.point_bytes() + prof.scalar_bytes(); }

namespace detail {

inline Bytes enc_keystream(const CurveProfile& prof, const EdPoint& shared) {
  Bytes ks = base_hash(prof, frame("ENC", {prof.curve.encode(shared)}));
  ks.resize(prof.scalar_bytes());
  return ks;
}

}  // namespace detail

inline Bytes enc(const CurveProfile& prof, const EdPoint& pk, const Int& m, RandomSource& rng) {
  if (m < 0 || m >= prof.q()) throw std::invalid_argument("enc: plaintext must be a scalar");
  Int e = rng.below(prof.q() - 1) + 1;
  Bytes out = prof.curve.encode(prof.mul_base(e));
  Bytes body = to_le(m, prof.scalar_bytes());
  Bytes ks = detail::enc_keystream(prof, prof.curve.mul(e, pk));
  for (std::size_t i = 0; i < body.size(); ++i) body[i] ^= ks[i];
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

inline Int dec(const CurveProfile& prof, const Int& sk, ByteView ct) {
  if (ct.size() != ciphertext_size(prof)) throw DecryptError("dec: wrong ciphertext length");
  EdPoint E;
  try {
    E = prof.curve.decode(ct.first(prof.point_bytes()));
  } catch (const DecodeError& e) {
    throw DecryptError(std::string("dec: ephemeral point: ") + e.what());
  }
  Bytes body(ct.begin() + static_cast<std::ptrdiff_t>(prof.point_bytes()), ct.end());
  Bytes ks = detail::enc_keystream(prof, prof.curve.mul(sk, E));
  for (std::size_t i = 0; i < body.size(); ++i) body[i] ^= ks[i];
  Int m = from_le(body);
  if (m >= prof.q()) throw DecryptError("dec: plaintext is not a scalar");
  return m;
}

/// rec_{i,3}: encryptions of (y_{i,3}, y_{3,i}).
struct RecBlob {
  Bytes first;
  Bytes second;

  friend bool operator==(const RecBlob&, const RecBlob&) = default;
};

inline RecBlob make_rec_blob(const CurveProfile& prof, const EdPoint& pk, const Int& y_i3, const Int& y_3i,
                             RandomSource& rng) {
  return {enc(prof, pk, y_i3, rng), enc(prof, pk, y_3i, rng)};
}

enum class EncryptionBackend { hashed_dh, verifiable };

/// Proof that a ciphertext encrypts the discrete log of Y. Only a verifiable-encryption
/// backend can provide it; the hashed-DH backend reports the gap.
struct DlogEncryptionStatement {
  Bytes ciphertext;
  EdPoint Y;
};

struct DlogEncryptionProof {
  Bytes payload;
};

inline DlogEncryptionProof prove_encrypted_dlog(const CurveProfile&, const DlogEncryptionStatement&, const Int&,
                                                EncryptionBackend backend) {
  if (backend == EncryptionBackend::hashed_dh) throw UnsupportedBackend("dlog-verification: hashed-DH backend");
  throw UnsupportedBackend("dlog-verification: verifiable encryption not provided");
}

inline bool verify_encrypted_dlog(const CurveProfile&, const DlogEncryptionStatement&, const DlogEncryptionProof&,
                                  EncryptionBackend backend) {
  if (backend == EncryptionBackend::hashed_dh) throw UnsupportedBackend("dlog-verification: hashed-DH backend");
  throw UnsupportedBackend("dlog-verification: verifiable encryption not provided");
}

/// No shipped backend can prove encrypted discrete logs yet.
inline bool supports_dlog_verification(EncryptionBackend) { return false; }

}  // namespace edthresh
