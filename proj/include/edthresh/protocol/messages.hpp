#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "edthresh/purify.hpp"

namespace edthresh {

enum class Round : std::uint8_t {
  kgc = 1,      // keygen commitment
  kgd = 2,      // keygen decommitment
  share = 3,    // y_{i,j} and rec_{i,3}
  pok = 4,      // Schnorr proof of x_i
  nonce = 5,    // R_i and its Purify proof
  partial = 6,  // S_i
  rec_package = 7,
  rec_join = 8,  // X_3 and the proof of x_3
};

inline std::string round_name(Round r) {
  switch (r) {
    case Round::kgc: return "KGC";
    case Round::kgd: return "KGD";
    case Round::share: return "SHARE";
    case Round::pok: return "POK";
    case Round::nonce: return "NONCE";
    case Round::partial: return "PARTIAL";
    case Round::rec_package: return "RECPKG";
    case Round::rec_join: return "RECJOIN";
  }
  return "?";
}

inline std::optional<Round> round_from_name(std::string_view s) {
  for (int r = 1; r <= 8; ++r) {
    if (round_name(static_cast<Round>(r)) == s) return static_cast<Round>(r);
  }
  return std::nullopt;
}

enum class AbortKind {
  commit_mismatch,
  bad_share,
  bad_proof,
  bad_nonce_proof,
  bad_signature,
  decrypt_failure,
  malformed_message,
  unexpected_message,
  missing_message,
};

inline std::string abort_name(AbortKind k) {
  switch (k) {
    case AbortKind::commit_mismatch: return "AbortCommitMismatch";
    case AbortKind::bad_share: return "AbortBadShare";
    case AbortKind::bad_proof: return "AbortBadProof";
    case AbortKind::bad_nonce_proof: return "AbortBadNonceProof";
    case AbortKind::bad_signature: return "AbortBadSignature";
    case AbortKind::decrypt_failure: return "AbortDecryptFailure";
    case AbortKind::malformed_message: return "AbortMalformedMessage";
    case AbortKind::unexpected_message: return "AbortUnexpectedMessage";
    case AbortKind::missing_message: return "AbortMissingMessage";
  }
  return "Abort";
}

/// A named ceremony abort, blaming `sender` in `round`.
class AbortError : public std::runtime_error {
 public:
  AbortError(AbortKind kind, Round round, int sender, const std::string& detail = {})
      : std::runtime_error(abort_name(kind) + " (round " + round_name(round) + ", sender P" + std::to_string(sender) +
                           (detail.empty() ? "" : ": " + detail) + ")"),
        kind_(kind),
        round_(round),
        sender_(sender),
        detail_(detail) {}

  AbortKind kind() const { return kind_; }
  Round round() const { return round_; }
  int sender() const { return sender_; }
  const std::string& detail() const { return detail_; }

 private:
  AbortKind kind_;
  Round round_;
  int sender_;
  std::string detail_;
};

class MessageFormatError : public std::runtime_error {
 public:
  explicit MessageFormatError(const std::string& what) : std::runtime_error(what) {}
};

/// Wire format:
///   u8 version (1) | u16 id length | id | u8 round | u8 sender | u8 receiver |
///   u16 field count | per field: u32 length | bytes
/// All integers big-endian.
struct CeremonyMessage {
  std::string ceremony_id;
  Round round = Round::kgc;
  std::uint8_t sender = 0;
  std::uint8_t receiver = 0;
  std::vector<Bytes> fields;

  friend bool operator==(const CeremonyMessage&, const CeremonyMessage&) = default;
};

inline constexpr std::uint8_t kWireVersion = 1;

inline Bytes serialize(const CeremonyMessage& m) {
  if (m.ceremony_id.size() > 0xffff || m.fields.size() > 0xffff) throw std::invalid_argument("serialize: too large");
  Bytes out;
  auto put = [&](std::uint64_t v, int width) {
    for (int i = width - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  };
  put(kWireVersion, 1);
  put(m.ceremony_id.size(), 2);
  out.insert(out.end(), m.ceremony_id.begin(), m.ceremony_id.end());
  put(static_cast<std::uint8_t>(m.round), 1);
  put(m.sender, 1);
  put(m.receiver, 1);
  put(m.fields.size(), 2);
  for (const auto& f : m.fields) {
    if (f.size() > 0xffffffffu) throw std::invalid_argument("serialize: field too large");
    put(f.size(), 4);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

inline CeremonyMessage deserialize(ByteView in) {
  std::size_t pos = 0;
  auto take = [&](std::size_t n) {
    if (in.size() - pos < n) throw MessageFormatError("message truncated");
    auto s = in.subspan(pos, n);
    pos += n;
    return s;
  };
  auto get = [&](int width) {
    std::uint64_t v = 0;
    for (auto b : take(static_cast<std::size_t>(width))) v = (v << 8) | b;
    return v;
  };
  if (get(1) != kWireVersion) throw MessageFormatError("unknown wire version");
  CeremonyMessage m;
  auto id = take(get(2));
  m.ceremony_id.assign(id.begin(), id.end());
  auto r = get(1);
  if (r < 1 || r > 8) throw MessageFormatError("unknown round tag");
  m.round = static_cast<Round>(r);
  m.sender = static_cast<std::uint8_t>(get(1));
  m.receiver = static_cast<std::uint8_t>(get(1));
  auto count = get(2);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto f = take(get(4));
    m.fields.emplace_back(f.begin(), f.end());
  }
  if (pos != in.size()) throw MessageFormatError("trailing bytes");
  return m;
}

/// Field decoding that reports failures as a malformed-message abort against the sender.
class FieldReader {
 public:
  FieldReader(const CurveProfile& prof, const CeremonyMessage& m, std::size_t expected_fields)
      : prof_(prof), m_(m) {
    if (m.fields.size() != expected_fields) fail("expected " + std::to_string(expected_fields) + " fields");
  }

  const Bytes& raw(std::size_t i) const { return m_.fields.at(i); }

  EdPoint point(std::size_t i) const {
    try {
      return prof_.curve.decode(m_.fields.at(i));
    } catch (const DecodeError& e) {
      fail(e.what());
    }
  }

  /// A point that must also lie in the order-q subgroup.
  EdPoint subgroup_point(std::size_t i) const {
    EdPoint P = point(i);
    if (prof_.curve.mul(prof_.q(), P) != EdwardsCurve::identity()) fail("point outside the prime-order subgroup");
    return P;
  }

  Int scalar(std::size_t i) const {
    const Bytes& f = m_.fields.at(i);
    if (f.size() != prof_.scalar_bytes()) fail("scalar: wrong length");
    Int v = from_le(f);
    if (v >= prof_.q()) fail("scalar: not reduced");
    return v;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw AbortError(AbortKind::malformed_message, m_.round, m_.sender, why);
  }

 private:
  const CurveProfile& prof_;
  const CeremonyMessage& m_;
};

inline Bytes encode_scalar(const CurveProfile& prof, const Int& v) { return to_le(v, prof.scalar_bytes()); }

}  // namespace edthresh
