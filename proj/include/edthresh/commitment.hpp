#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "edthresh/hashing.hpp"
#include "edthresh/random.hpp"

namespace edthresh {

/// Hash commitment in the random-oracle model:
///   C = H'(frame("COM", nonce, encode(parts)))
///   D = nonce || encode(parts)
/// where encode() length-prefixes each part.
struct CommitPair {
  Bytes C;
  Bytes D;
};

inline constexpr std::size_t kCommitNonceBytes = 32;

inline Bytes encode_parts(const std::vector<Bytes>& parts) {
  Bytes out;
  for (const auto& p : parts) append_framed(out, p);
  return out;
}

inline std::optional<std::vector<Bytes>> decode_parts(ByteView data) {
  std::vector<Bytes> parts;
  std::size_t pos = 0;
  while (pos < data.size()) {
    if (data.size() - pos < 8) return std::nullopt;
    std::uint64_t len = 0;
    for (int i = 0; i < 8; ++i) len = len << 8 | data[pos + i];
    pos += 8;
    if (len > data.size() - pos) return std::nullopt;
    parts.emplace_back(data.begin() + static_cast<std::ptrdiff_t>(pos),
                       data.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return parts;
}

inline Bytes make_decommitment(ByteView nonce, const std::vector<Bytes>& parts) {
  Bytes d(nonce.begin(), nonce.end());
  Bytes enc = encode_parts(parts);
  d.insert(d.end(), enc.begin(), enc.end());
  return d;
}

inline Bytes commitment_of(const CurveProfile& prof, ByteView D) {
  if (D.size() < kCommitNonceBytes) throw std::invalid_argument("commitment_of: short decommitment");
  Bytes nonce(D.begin(), D.begin() + kCommitNonceBytes);
  Bytes value(D.begin() + kCommitNonceBytes, D.end());
  return base_hash(prof, frame("COM", {nonce, value}));
}

inline CommitPair commit(const CurveProfile& prof, const std::vector<Bytes>& parts, RandomSource& rng) {
  Bytes D = make_decommitment(rng.bytes(kCommitNonceBytes), parts);
  return {commitment_of(prof, D), D};
}

/// Ver(C, D): the committed parts, or nothing when D does not open C.
inline std::optional<std::vector<Bytes>> open(const CurveProfile& prof, ByteView C, ByteView D) {
  if (D.size() < kCommitNonceBytes) return std::nullopt;
  Bytes expected = commitment_of(prof, D);
  if (!std::equal(expected.begin(), expected.end(), C.begin(), C.end())) return std::nullopt;
  return decode_parts(D.subspan(kCommitNonceBytes));
}

}  // namespace edthresh
