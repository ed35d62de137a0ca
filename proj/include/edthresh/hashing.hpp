#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "edthresh/profile.hpp"

namespace edthresh {

/// SHA-512 of `data`.
inline Bytes sha512(ByteView data) {
  Bytes out(64);
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha512(), nullptr) != 1 || len != 64) {
    throw std::runtime_error("sha512: digest failed");
  }
  return out;
}

/// The base hash H' with a 2b-bit output: SHA-512 truncated to the profile size.
inline Bytes base_hash(const CurveProfile& prof, ByteView data) {
  Bytes h = sha512(data);
  h.resize(prof.digest_bytes());
  return h;
}

/// Appends an 8-byte big-endian length followed by the bytes.
inline void append_framed(Bytes& out, ByteView part) {
  std::uint64_t len = part.size();
  for (int i = 7; i >= 0; --i) out.push_back(static_cast<std::uint8_t>(len >> (8 * i)));
  out.insert(out.end(), part.begin(), part.end());
}

/// Domain tag followed by every part, each length-prefixed.
inline Bytes frame(std::string_view tag, const std::vector<Bytes>& parts) {
  Bytes out;
  append_framed(out, ByteView(reinterpret_cast<const std::uint8_t*>(tag.data()), tag.size()));
  for (const auto& p : parts) append_framed(out, p);
  return out;
}

/// H = xi o H': framed digest read little-endian and reduced mod q.
inline Int hash_to_scalar(const CurveProfile& prof, std::string_view tag, const std::vector<Bytes>& parts) {
  return mod(from_le(base_hash(prof, frame(tag, parts))), prof.q());
}

/// Plain digest of a byte string reduced mod q (no framing), as conventional EdDSA does.
inline Int hash_to_scalar_raw(const CurveProfile& prof, ByteView data) {
  return mod(from_le(base_hash(prof, data)), prof.q());
}

enum class Clamp {
  wide,      // 2^{n+1} + sum_{i=c}^{n} 2^i h_i
  standard,  // 2^n + sum_{i=c}^{n-1} 2^i h_i
};

/// The scalar before reduction mod q. `h` is the full H'(k) digest; only its first n bits are read.
inline Int clamp_unreduced(const CurveProfile& prof, ByteView h, Clamp mode) {
  auto bit = [&](unsigned i) -> bool {
    if (i >= prof.n) return false;  // pi truncates to n bits
    return (h[i / 8] >> (i % 8)) & 1;
  };
  Int v = 0;
  unsigned top = mode == Clamp::wide ? prof.n : prof.n - 1;
  for (unsigned i = prof.c; i <= top; ++i) {
    if (bit(i)) mpz_setbit(v.get_mpz_t(), i);
  }
  mpz_setbit(v.get_mpz_t(), mode == Clamp::wide ? prof.n + 1 : prof.n);
  return v;
}

/// psi o pi o H'(k) for a b-bit secret string k.
inline Int secret_scalar(const CurveProfile& prof, ByteView k, Clamp mode = Clamp::wide) {
  if (k.size() != prof.b / 8) throw std::invalid_argument("secret_scalar: key must be b bits");
  return mod(clamp_unreduced(prof, base_hash(prof, k), mode), prof.q());
}

/// Pearson statistic of `trials` samples in Z_modulus against the uniform law over `buckets`
/// contiguous ranges. Bucket k holds values v with floor(v * buckets / modulus) == k.
inline double chi_square_uniformity(const std::function<Int()>& sampler, const Int& modulus,
                                    std::size_t trials, std::size_t buckets) {
  if (trials < 10 * buckets) throw std::invalid_argument("chi_square_uniformity: too few trials");
  std::vector<double> observed(buckets, 0.0);
  auto bucket_of = [&](const Int& v) {
    Int k = v * static_cast<unsigned long>(buckets) / modulus;
    return static_cast<std::size_t>(k.get_ui());
  };
  for (std::size_t t = 0; t < trials; ++t) observed[bucket_of(mod(sampler(), modulus))] += 1.0;

  // Bucket k covers [ceil(k*m/B), ceil((k+1)*m/B)).
  auto lower = [&](std::size_t k) {
    Int num = modulus * static_cast<unsigned long>(k) + static_cast<unsigned long>(buckets) - 1;
    return Int(num / static_cast<unsigned long>(buckets));
  };
  double stat = 0.0;
  for (std::size_t k = 0; k < buckets; ++k) {
    Int width = lower(k + 1) - lower(k);
    double expected = static_cast<double>(trials) * (width.get_d() / modulus.get_d());
    double diff = observed[k] - expected;
    stat += diff * diff / expected;
  }
  return stat;
}

}  // namespace edthresh
