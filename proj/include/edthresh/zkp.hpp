#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "edthresh/hashing.hpp"
#include "edthresh/random.hpp"

namespace edthresh {

class UnsupportedBackend : public std::runtime_error {
 public:
  explicit UnsupportedBackend(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Schnorr proof of knowledge of x with K = x*B, made non-interactive by Fiat-Shamir.

struct SchnorrProof {
  EdPoint U;
  Int z;
};

inline Int schnorr_challenge(const CurveProfile& prof, const EdPoint& K, const EdPoint& U, ByteView context) {
  const auto& E = prof.curve;
  return hash_to_scalar(prof, "FS/SCH", {Bytes(context.begin(), context.end()), E.encode(prof.base), E.encode(K), E.encode(U)});
}

/// Prover with an explicit commitment nonce `r`.
inline SchnorrProof schnorr_prove_with_nonce(const CurveProfile& prof, const Int& x, const EdPoint& K,
                                             ByteView context, const Int& r) {
  EdPoint U = prof.mul_base(r);
  Int c = schnorr_challenge(prof, K, U, context);
  return {U, prof.scalars.add(r, prof.scalars.mul(c, x))};
}

inline SchnorrProof schnorr_prove(const CurveProfile& prof, const Int& x, const EdPoint& K, ByteView context,
                                  RandomSource& rng) {
  return schnorr_prove_with_nonce(prof, x, K, context, rng.below(prof.q()));
}

/// Accepts iff z*B = U + c*K.
inline bool schnorr_verify(const CurveProfile& prof, const EdPoint& K, const SchnorrProof& proof, ByteView context) {
  const auto& E = prof.curve;
  if (!E.on_curve(K) || !E.on_curve(proof.U) || proof.z < 0 || proof.z >= prof.q()) return false;
  Int c = schnorr_challenge(prof, K, proof.U, context);
  return prof.mul_base(proof.z) == E.add(proof.U, E.mul(c, K));
}

// ---------------------------------------------------------------------------
// Equality of discrete logarithms: x*B = K and x*Bbar = Kbar.

struct DlogEqOptions {
  unsigned tau = 128;
  /// One round with a full-size challenge instead of tau binary rounds.
  bool full_challenge = false;
};

struct DlogEqRound {
  EdPoint U;
  EdPoint Ubar;
  Int c;
  Int s;
};

struct DlogEqProof {
  std::vector<DlogEqRound> rounds;
};

namespace detail {

inline std::vector<Bytes> dlogeq_transcript(const CurveProfile& prof, const EdPoint& Bbar, const EdPoint& K,
                                            const EdPoint& Kbar, ByteView context,
                                            const std::vector<DlogEqRound>& rounds) {
  const auto& E = prof.curve;
  std::vector<Bytes> parts{Bytes(context.begin(), context.end()), E.encode(prof.base), E.encode(Bbar),
                           E.encode(K), E.encode(Kbar)};
  for (const auto& r : rounds) {
    parts.push_back(E.encode(r.U));
    parts.push_back(E.encode(r.Ubar));
  }
  return parts;
}

/// One challenge per round: a bit per round, or a single scalar in full-challenge mode.
inline std::vector<Int> dlogeq_challenges(const CurveProfile& prof, const std::vector<Bytes>& transcript,
                                          std::size_t rounds, bool full) {
  if (full) return {hash_to_scalar(prof, "FS/DLEQ", transcript)};
  std::vector<Int> out;
  Bytes stream;
  for (std::uint64_t block = 0; stream.size() * 8 < rounds; ++block) {
    auto parts = transcript;
    parts.push_back(to_le(Int(static_cast<unsigned long>(block)), 8));
    Bytes h = sha512(frame("FS/DLEQ-BITS", parts));
    stream.insert(stream.end(), h.begin(), h.end());
  }
  for (std::size_t i = 0; i < rounds; ++i) out.emplace_back((stream[i / 8] >> (i % 8)) & 1);
  return out;
}

}  // namespace detail

inline DlogEqProof dlogeq_prove(const CurveProfile& prof, const Int& x, const EdPoint& Bbar, const EdPoint& K,
                                const EdPoint& Kbar, ByteView context, RandomSource& rng,
                                const DlogEqOptions& opts = {}) {
  const auto& E = prof.curve;
  std::size_t n = opts.full_challenge ? 1 : opts.tau;
  std::vector<Int> nonces;
  DlogEqProof proof;
  for (std::size_t i = 0; i < n; ++i) {
    Int r = rng.below(prof.q());
    proof.rounds.push_back({prof.mul_base(r), E.mul(r, Bbar), 0, 0});
    nonces.push_back(r);
  }
  auto transcript = detail::dlogeq_transcript(prof, Bbar, K, Kbar, context, proof.rounds);
  auto cs = detail::dlogeq_challenges(prof, transcript, n, opts.full_challenge);
  for (std::size_t i = 0; i < n; ++i) {
    proof.rounds[i].c = cs[i];
    proof.rounds[i].s = prof.scalars.add(nonces[i], prof.scalars.mul(cs[i], x));
  }
  return proof;
}

/// Every round must satisfy s*B = c*K + U and s*Bbar = c*Kbar + Ubar with FS-derived c.
inline bool dlogeq_verify(const CurveProfile& prof, const EdPoint& Bbar, const EdPoint& K, const EdPoint& Kbar,
                          const DlogEqProof& proof, ByteView context, const DlogEqOptions& opts = {}) {
  const auto& E = prof.curve;
  std::size_t n = opts.full_challenge ? 1 : opts.tau;
  if (proof.rounds.size() != n) return false;
  for (const auto* P : {&Bbar, &K, &Kbar}) {
    if (!E.on_curve(*P)) return false;
  }
  auto transcript = detail::dlogeq_transcript(prof, Bbar, K, Kbar, context, proof.rounds);
  auto cs = detail::dlogeq_challenges(prof, transcript, n, opts.full_challenge);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = proof.rounds[i];
    if (r.c != cs[i] || r.s < 0 || r.s >= prof.q()) return false;
    if (!E.on_curve(r.U) || !E.on_curve(r.Ubar)) return false;
    if (prof.mul_base(r.s) != E.add(E.mul(r.c, K), r.U)) return false;
    if (E.mul(r.s, Bbar) != E.add(E.mul(r.c, Kbar), r.Ubar)) return false;
  }
  return true;
}

/// tau fixed-size round records U || Ubar || c || s.
inline Bytes encode_dlogeq(const CurveProfile& prof, const DlogEqProof& proof) {
  Bytes out;
  for (const auto& r : proof.rounds) {
    for (const Bytes& part : {prof.curve.encode(r.U), prof.curve.encode(r.Ubar), to_le(r.c, prof.scalar_bytes()),
                              to_le(r.s, prof.scalar_bytes())}) {
      out.insert(out.end(), part.begin(), part.end());
    }
  }
  return out;
}

inline DlogEqProof decode_dlogeq(const CurveProfile& prof, ByteView data) {
  std::size_t pb = prof.point_bytes(), sb = prof.scalar_bytes(), rec = 2 * pb + 2 * sb;
  if (data.size() % rec != 0) throw DecodeError(DecodeFailure::bad_length, "dlogeq proof: wrong length");
  DlogEqProof proof;
  for (std::size_t off = 0; off < data.size(); off += rec) {
    DlogEqRound r;
    r.U = prof.curve.decode(data.subspan(off, pb));
    r.Ubar = prof.curve.decode(data.subspan(off + pb, pb));
    r.c = from_le(data.subspan(off + 2 * pb, sb));
    r.s = from_le(data.subspan(off + 2 * pb + sb, sb));
    if (r.c >= prof.q() || r.s >= prof.q()) throw DecodeError(DecodeFailure::non_canonical, "dlogeq proof: scalar");
    proof.rounds.push_back(r);
  }
  return proof;
}

}  // namespace edthresh
