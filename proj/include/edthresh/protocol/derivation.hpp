#pragma once

#include "edthresh/protocol/records.hpp"
#include "edthresh/vss.hpp"

namespace edthresh {

inline Bytes be64(std::uint64_t v) {
  Bytes out(8);
  for (int i = 7; i >= 0; --i, v >>= 8) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v);
  return out;
}

/// t = H(D || i).
inline Int derivation_tweak(const CurveProfile& prof, const EdPoint& D, std::uint64_t index) {
  return hash_to_scalar(prof, "DER", {prof.curve.encode(D), be64(index)});
}

/// A^i = A + H(D || i) B.
inline EdPoint derived_public_key(const CurveProfile& prof, const EdPoint& A, const EdPoint& D, std::uint64_t index) {
  return prof.curve.add(A, prof.mul_base(derivation_tweak(prof, D, index)));
}

/// Coefficient of t in party `self`'s update when signing with `peer`:
/// (2, -1) for {1,2}, (3/2, -1/2) for {1,3}, (3, -2) for {2,3}.
inline Int pair_coefficient(const CurveProfile& prof, int self, int peer) {
  return lagrange_weight(prof.scalars, {Int(self), Int(peer)}, Int(self));
}

/// Signing weight of `rec` when paired with `peer`:
///   P1: omega_1 or 3/4 omega_1;  P2: omega_2 or -3 omega_2;  P3: -1/2 x_3 or -2 x_3.
inline Int signing_weight(const CurveProfile& prof, const PartyRecord& rec, int peer) {
  const auto& fq = prof.scalars;
  int self = rec.role;
  if (self == peer || peer < 1 || peer > 3) throw std::invalid_argument("signing_weight: bad signer pair");
  switch (self) {
    case 1: return peer == 2 ? rec.omega : fq.mul(fq.div(3, 4), rec.omega);
    case 2: return peer == 1 ? rec.omega : fq.mul(fq.neg(3), rec.omega);
    case 3: return peer == 1 ? fq.mul(fq.neg(fq.inv(2)), rec.x) : fq.mul(fq.neg(2), rec.x);
  }
  throw std::invalid_argument("signing_weight: bad role");
}

/// omega^i = omega + coefficient * H(D || i).
inline Int derived_weight(const CurveProfile& prof, const Int& weight, int self, int peer, const Int& tweak) {
  return prof.scalars.add(weight, prof.scalars.mul(pair_coefficient(prof, self, peer), tweak));
}

struct DerivedKey {
  std::uint64_t index;
  Int tweak;
  EdPoint A;
};

/// Records A^i in the record's derivation cache.
inline DerivedKey derive(const CurveProfile& prof, PartyRecord& rec, std::uint64_t index) {
  if (!rec.D) throw std::invalid_argument("derive: record has no shared secret D");
  Int t = derivation_tweak(prof, *rec.D, index);
  EdPoint Ai = prof.curve.add(rec.A, prof.mul_base(t));
  rec.derived[index] = Ai;
  return {index, t, Ai};
}

}  // namespace edthresh
