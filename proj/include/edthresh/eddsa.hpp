#pragma once

#include "edthresh/hashing.hpp"
#include "edthresh/random.hpp"

namespace edthresh {

struct Signature {
  EdPoint R;
  Int S;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// `framed` clamps with 2^{n+1} and frames every hash input with a domain tag; `standard`
/// uses the conventional clamp and unframed hashing so published Ed25519 vectors reproduce.
enum class Variant { framed, standard };

/// H(R || A || M) mod q.
inline Int challenge(const CurveProfile& prof, const EdPoint& R, const EdPoint& A, ByteView msg,
                     Variant v = Variant::framed) {
  Bytes r = prof.curve.encode(R), a = prof.curve.encode(A);
  if (v == Variant::standard) return hash_to_scalar_raw(prof, concat({r, a, msg}));
  return hash_to_scalar(prof, "SIG", {r, a, Bytes(msg.begin(), msg.end())});
}

/// R || S with S little-endian in b bits.
inline Bytes encode_signature(const CurveProfile& prof, const Signature& sig) {
  Bytes out = prof.curve.encode(sig.R);
  Bytes s = to_le(sig.S, prof.scalar_bytes());
  out.insert(out.end(), s.begin(), s.end());
  return out;
}

/// Rejects S >= q and non-canonical R.
inline Signature decode_signature(const CurveProfile& prof, ByteView bytes) {
  if (bytes.size() != prof.point_bytes() + prof.scalar_bytes()) {
    throw DecodeError(DecodeFailure::bad_length, "signature: wrong length");
  }
  Signature sig;
  sig.R = prof.curve.decode(bytes.first(prof.point_bytes()));
  sig.S = from_le(bytes.subspan(prof.point_bytes()));
  if (sig.S >= prof.q()) throw DecodeError(DecodeFailure::non_canonical, "signature: S >= q");
  return sig;
}

struct CentralKeypair {
  Bytes secret;  // b-bit string k
  Int a;
  Bytes prefix;  // upper b bits of H'(k)
  EdPoint A;

  static CentralKeypair from_secret(const CurveProfile& prof, ByteView k, Variant v = Variant::framed) {
    CentralKeypair kp;
    kp.secret.assign(k.begin(), k.end());
    kp.a = secret_scalar(prof, k, v == Variant::framed ? Clamp::wide : Clamp::standard);
    Bytes h = base_hash(prof, k);
    kp.prefix.assign(h.begin() + static_cast<std::ptrdiff_t>(prof.b / 8), h.end());
    kp.A = prof.mul_base(kp.a);
    return kp;
  }

  static CentralKeypair generate(const CurveProfile& prof, RandomSource& rng, Variant v = Variant::framed) {
    return from_secret(prof, rng.bytes(prof.b / 8), v);
  }
};

inline Signature central_sign(const CurveProfile& prof, const CentralKeypair& kp, ByteView msg,
                              Variant v = Variant::framed) {
  Int r = v == Variant::standard ? hash_to_scalar_raw(prof, concat({kp.prefix, msg}))
                                 : hash_to_scalar(prof, "NONCE", {kp.prefix, Bytes(msg.begin(), msg.end())});
  EdPoint R = prof.mul_base(r);
  Int h = challenge(prof, R, kp.A, msg, v);
  return {R, prof.scalars.add(r, prof.scalars.mul(h, kp.a))};
}

/// Cofactored check 2^c S B = 2^c R + 2^c H(R || A || M) A.
inline bool central_verify(const CurveProfile& prof, const EdPoint& A, ByteView msg, const Signature& sig,
                           Variant v = Variant::framed) {
  const auto& E = prof.curve;
  if (!E.on_curve(A) || !E.on_curve(sig.R) || sig.S < 0 || sig.S >= prof.q()) return false;
  Int h = challenge(prof, sig.R, A, msg, v);
  EdPoint lhs = E.mul_cofactor(prof.c, prof.mul_base(sig.S));
  EdPoint rhs = E.mul_cofactor(prof.c, E.add(sig.R, E.mul(h, A)));
  return lhs == rhs;
}

/// Byte-level verification; any decoding failure is a rejection.
inline bool central_verify_encoded(const CurveProfile& prof, ByteView pubkey, ByteView msg, ByteView sig_bytes,
                                   Variant v = Variant::framed) {
  try {
    EdPoint A = prof.curve.decode(pubkey);
    return central_verify(prof, A, msg, decode_signature(prof, sig_bytes), v);
  } catch (const DecodeError&) {
    return false;
  }
}

}  // namespace edthresh
