#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "edthresh/protocol/messages.hpp"
#include "edthresh/recovery_enc.hpp"

namespace edthresh {

/// Nonce seed r' and its public image. With no Purify parameters configured (an Ed25519
/// profile without a supplied nonce curve) the seed is a plain scalar, the public image is the
/// point at infinity, and nonces are derived by hashing; see session_nonce.
struct NonceSeed {
  Int secret;
  WPoint2 pub;

  static NonceSeed generate(const CurveProfile& prof, RandomSource& rng) {
    if (!prof.purify) return {rng.below(prof.q()), WPoint2::at_infinity()};
    auto s = PurifySeed::generate(prof, rng);
    return {s.secret, s.pub};
  }

  static NonceSeed from_secret(const CurveProfile& prof, const Int& secret) {
    if (!prof.purify) return {mod(secret, prof.q()), WPoint2::at_infinity()};
    const auto& pp = prof.purify_params();
    Int s = mod(secret, pp.order);
    return {s, pp.eprime.mul(s, pp.base)};
  }
};

inline Bytes encode_seed_public(const CurveProfile& prof, const WPoint2& P) {
  return prof.purify ? encode_aux(prof, P) : Bytes{};
}

inline WPoint2 decode_seed_public(const CurveProfile& prof, ByteView data) {
  if (prof.purify) return decode_aux(prof, data);
  if (!data.empty()) throw DecodeError(DecodeFailure::bad_length, "seed image: expected empty field");
  return WPoint2::at_infinity();
}

/// X_i = (A_i, R'_i) together with the party index.
struct PartyPublic {
  int index = 0;
  EdPoint A;
  WPoint2 Rp;

  friend bool operator==(const PartyPublic&, const PartyPublic&) = default;
};

/// Everything P1 and P2 publish during key generation.
struct KeygenPublic {
  EdPoint A1, M1, A2, M2;
  EdPoint Y31, Y32;
  WPoint2 Rp1, Rp2;

  friend bool operator==(const KeygenPublic&, const KeygenPublic&) = default;

  /// A_3 = 2 Y_{3,1} - Y_{3,2}.
  EdPoint A3(const CurveProfile& prof) const {
    const auto& E = prof.curve;
    return E.sub(E.add(Y31, Y31), Y32);
  }

  /// Y_{j,i} = f_j(i) B. Dealer 3's line through (1, Y_{3,1}) and (2, Y_{3,2}) is extrapolated.
  EdPoint Y(const CurveProfile& prof, int j, int i) const {
    const auto& E = prof.curve;
    switch (j) {
      case 1: return E.add(A1, E.mul(i, M1));
      case 2: return E.add(A2, E.mul(i, M2));
      case 3: return E.add(A3(prof), E.mul(i, E.sub(Y32, Y31)));
    }
    throw std::invalid_argument("KeygenPublic::Y: dealer index");
  }

  /// x_i B, the statement of party i's proof of knowledge.
  EdPoint x_statement(const CurveProfile& prof, int i) const {
    const auto& E = prof.curve;
    return E.add(E.add(Y(prof, 1, i), Y(prof, 2, i)), Y(prof, 3, i));
  }

  EdPoint joint_key(const CurveProfile& prof) const {
    const auto& E = prof.curve;
    return E.add(E.add(A1, A2), A3(prof));
  }

  PartyPublic X(int i) const {
    if (i == 1) return {1, A1, Rp1};
    if (i == 2) return {2, A2, Rp2};
    throw std::invalid_argument("KeygenPublic::X: only P1 and P2 publish at keygen");
  }
};

/// A party's long-lived material.
struct PartyRecord {
  std::string profile;
  int role = 0;
  Int x;      // summed share x_i
  Int omega;  // P1: 2 x_1, P2: -x_2, P3: x_3
  Int y3;     // own y_{3,i} (P1, P2)
  Int rprime;
  EdPoint A;
  KeygenPublic pub;
  std::optional<PartyPublic> x3;  // X_3 once P3 has joined
  std::optional<EdPoint> D;
  std::optional<RecBlob> rec13, rec23;
  bool pin_r3 = false;
  std::map<std::uint64_t, EdPoint> derived;

  friend bool operator==(const PartyRecord&, const PartyRecord&) = default;

  PartyPublic self_public(const CurveProfile& prof) const {
    if (role == 3) {
      if (!x3) throw std::logic_error("P3 record without X_3");
      return *x3;
    }
    (void)prof;
    return pub.X(role);
  }

  PartyPublic public_of(int index) const {
    if (index == 3) {
      if (!x3) throw std::invalid_argument("X_3 unknown to this party");
      return *x3;
    }
    return pub.X(index);
  }
};

}  // namespace edthresh
