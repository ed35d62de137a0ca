#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edthresh {

using Int = mpz_class;
using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Non-negative residue of `a` modulo `m`.
inline Int mod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int pow_mod(const Int& base, const Int& exp, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline bool is_probable_prime(const Int& n) {
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

inline std::size_t bit_length(const Int& n) {
  return n == 0 ? 0 : mpz_sizeinbase(n.get_mpz_t(), 2);
}

inline bool test_bit(const Int& n, std::size_t i) {
  return mpz_tstbit(n.get_mpz_t(), i) != 0;
}

inline Int from_le(ByteView bytes) {
  Int r;
  if (!bytes.empty()) {
    mpz_import(r.get_mpz_t(), bytes.size(), -1, 1, 0, 0, bytes.data());
  }
  return r;
}

/// Little-endian encoding padded to exactly `len` bytes. Throws if `v` does not fit.
inline Bytes to_le(const Int& v, std::size_t len) {
  if (v < 0) throw std::invalid_argument("to_le: negative value");
  Bytes out(len, 0);
  std::size_t needed = (bit_length(v) + 7) / 8;
  if (needed > len) throw std::invalid_argument("to_le: value does not fit");
  std::size_t written = 0;
  if (v != 0) mpz_export(out.data(), &written, -1, 1, 0, 0, v.get_mpz_t());
  return out;
}

inline Int from_dec(std::string_view s) { return Int(std::string(s), 10); }

inline Int from_hex_int(std::string_view s) {
  if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
  return Int(std::string(s), 16);
}

inline std::string to_dec(const Int& v) { return v.get_str(10); }

inline std::string to_hex(ByteView bytes) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

inline Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw std::invalid_argument("from_hex: odd length");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("from_hex: bad digit");
  };
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
  }
  return out;
}

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }

inline Bytes concat(std::initializer_list<ByteView> parts) {
  Bytes out;
  for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace edthresh
