#pragma once

#include <openssl/evp.h>
#include <openssl/rand.h>

#include <fstream>
#include <sstream>

#include "edthresh/harness/transcript.hpp"

namespace edthresh {

class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kRecordFormat = "edthresh-record/1";
inline constexpr const char* kKeyFormat = "edthresh-p3key/1";
inline constexpr const char* kSealedFormat = "edthresh-sealed/1";

namespace detail {

inline std::string hex_scalar(const CurveProfile& prof, const Int& v) { return to_hex(encode_scalar(prof, v)); }

inline Int read_scalar(const CurveProfile& prof, const Json& j) {
  Bytes b = from_hex(j.get<std::string>());
  if (b.size() != prof.scalar_bytes()) throw RecordError("scalar field has the wrong length");
  Int v = from_le(b);
  if (v >= prof.q()) throw RecordError("scalar field is not reduced");
  return v;
}

inline std::string hex_point(const CurveProfile& prof, const EdPoint& P) { return to_hex(prof.curve.encode(P)); }

inline EdPoint read_point(const CurveProfile& prof, const Json& j) {
  return prof.curve.decode(from_hex(j.get<std::string>()));
}

inline std::string hex_aux(const CurveProfile& prof, const WPoint2& P) { return to_hex(encode_seed_public(prof, P)); }

inline WPoint2 read_aux(const CurveProfile& prof, const Json& j) {
  return decode_seed_public(prof, from_hex(j.get<std::string>()));
}

}  // namespace detail

inline Json record_to_json(const CurveProfile& prof, const PartyRecord& r) {
  using namespace detail;
  Json j;
  j["format"] = kRecordFormat;
  j["profile"] = r.profile;
  j["role"] = r.role;
  j["x"] = hex_scalar(prof, r.x);
  j["omega"] = hex_scalar(prof, r.omega);
  j["y3"] = hex_scalar(prof, r.y3);
  j["rprime"] = to_hex(to_le(r.rprime, prof.purify ? (bit_length(prof.purify_params().order) + 7) / 8
                                                   : prof.scalar_bytes()));
  j["A"] = hex_point(prof, r.A);
  Json pub;
  pub["A1"] = hex_point(prof, r.pub.A1);
  pub["M1"] = hex_point(prof, r.pub.M1);
  pub["A2"] = hex_point(prof, r.pub.A2);
  pub["M2"] = hex_point(prof, r.pub.M2);
  pub["Y31"] = hex_point(prof, r.pub.Y31);
  pub["Y32"] = hex_point(prof, r.pub.Y32);
  pub["Rp1"] = hex_aux(prof, r.pub.Rp1);
  pub["Rp2"] = hex_aux(prof, r.pub.Rp2);
  j["pub"] = pub;
  if (r.x3) {
    j["x3"] = Json{{"A", hex_point(prof, r.x3->A)}, {"Rp", hex_aux(prof, r.x3->Rp)}};
  } else {
    j["x3"] = nullptr;
  }
  j["D"] = r.D ? Json(hex_point(prof, *r.D)) : Json(nullptr);
  auto blob = [](const std::optional<RecBlob>& b) {
    return b ? Json::array({to_hex(b->first), to_hex(b->second)}) : Json(nullptr);
  };
  j["rec13"] = blob(r.rec13);
  j["rec23"] = blob(r.rec23);
  j["pin_r3"] = r.pin_r3;
  Json derived = Json::object();
  for (const auto& [i, Ai] : r.derived) derived[std::to_string(i)] = hex_point(prof, Ai);
  j["derived"] = derived;
  return j;
}

inline PartyRecord record_from_json(const CurveProfile& prof, const Json& j) {
  using namespace detail;
  try {
    if (j.at("format").get<std::string>() != kRecordFormat) throw RecordError("not a party record");
    PartyRecord r;
    r.profile = j.at("profile").get<std::string>();
    if (r.profile != prof.name) throw RecordError("record is for profile '" + r.profile + "'");
    r.role = j.at("role").get<int>();
    if (r.role < 1 || r.role > 3) throw RecordError("record role out of range");
    r.x = read_scalar(prof, j.at("x"));
    r.omega = read_scalar(prof, j.at("omega"));
    r.y3 = read_scalar(prof, j.at("y3"));
    r.rprime = from_le(from_hex(j.at("rprime").get<std::string>()));
    r.A = read_point(prof, j.at("A"));
    const auto& p = j.at("pub");
    r.pub = {read_point(prof, p.at("A1")),  read_point(prof, p.at("M1")),  read_point(prof, p.at("A2")),
             read_point(prof, p.at("M2")),  read_point(prof, p.at("Y31")), read_point(prof, p.at("Y32")),
             read_aux(prof, p.at("Rp1")),   read_aux(prof, p.at("Rp2"))};
    if (!j.at("x3").is_null()) {
      r.x3 = PartyPublic{3, read_point(prof, j.at("x3").at("A")), read_aux(prof, j.at("x3").at("Rp"))};
    }
    if (!j.at("D").is_null()) r.D = read_point(prof, j.at("D"));
    auto blob = [](const Json& b) -> std::optional<RecBlob> {
      if (b.is_null()) return std::nullopt;
      return RecBlob{from_hex(b.at(0).get<std::string>()), from_hex(b.at(1).get<std::string>())};
    };
    r.rec13 = blob(j.at("rec13"));
    r.rec23 = blob(j.at("rec23"));
    r.pin_r3 = j.at("pin_r3").get<bool>();
    for (const auto& [k, v] : j.at("derived").items()) r.derived[std::stoull(k)] = read_point(prof, v);
    if (r.A != r.pub.joint_key(prof)) throw RecordError("record key does not match its keygen data");
    return r;
  } catch (const Json::exception& e) {
    throw RecordError(std::string("malformed record: ") + e.what());
  } catch (const DecodeError& e) {
    throw RecordError(std::string("malformed record: ") + e.what());
  }
}

inline Json keypair_to_json(const CurveProfile& prof, const RecoveryKeypair& k) {
  return Json{{"format", kKeyFormat},
              {"profile", prof.name},
              {"sk", detail::hex_scalar(prof, k.sk)},
              {"pk", detail::hex_point(prof, k.pk)}};
}

inline RecoveryKeypair keypair_from_json(const CurveProfile& prof, const Json& j) {
  try {
    if (j.at("format").get<std::string>() != kKeyFormat) throw RecordError("not a P3 key file");
    if (j.at("profile").get<std::string>() != prof.name) throw RecordError("key is for another profile");
    RecoveryKeypair k{detail::read_scalar(prof, j.at("sk")), detail::read_point(prof, j.at("pk"))};
    if (prof.mul_base(k.sk) != k.pk) throw RecordError("P3 key pair is inconsistent");
    return k;
  } catch (const Json::exception& e) {
    throw RecordError(std::string("malformed key file: ") + e.what());
  } catch (const DecodeError& e) {
    throw RecordError(std::string("malformed key file: ") + e.what());
  }
}

/// AES-256-GCM under a PBKDF2-HMAC-SHA256 key.
inline constexpr int kSealIterations = 200000;

inline Json seal(const Json& inner, const std::string& passphrase) {
  Bytes salt(16), iv(12), key(32), tag(16);
  if (RAND_bytes(salt.data(), 16) != 1 || RAND_bytes(iv.data(), 12) != 1) throw RecordError("RAND_bytes failed");
  if (PKCS5_PBKDF2_HMAC(passphrase.data(), static_cast<int>(passphrase.size()), salt.data(), 16, kSealIterations,
                        EVP_sha256(), 32, key.data()) != 1) {
    throw RecordError("PBKDF2 failed");
  }
  std::string pt = inner.dump();
  Bytes ct(pt.size() + 16);
  int len = 0, fin = 0;
  std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
  if (!ctx || EVP_EncryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), iv.data()) != 1 ||
      EVP_EncryptUpdate(ctx.get(), ct.data(), &len, reinterpret_cast<const unsigned char*>(pt.data()),
                        static_cast<int>(pt.size())) != 1 ||
      EVP_EncryptFinal_ex(ctx.get(), ct.data() + len, &fin) != 1 ||
      EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_GET_TAG, 16, tag.data()) != 1) {
    throw RecordError("sealing failed");
  }
  ct.resize(static_cast<std::size_t>(len + fin));
  return Json{{"format", kSealedFormat},   {"kdf", "pbkdf2-hmac-sha256"}, {"iterations", kSealIterations},
              {"salt", to_hex(salt)},      {"iv", to_hex(iv)},           {"ciphertext", to_hex(ct)},
              {"tag", to_hex(tag)}};
}

inline bool is_sealed(const Json& j) { return j.contains("format") && j["format"] == kSealedFormat; }

inline Json unseal(const Json& j, const std::string& passphrase) {
  try {
    Bytes salt = from_hex(j.at("salt").get<std::string>()), iv = from_hex(j.at("iv").get<std::string>());
    Bytes ct = from_hex(j.at("ciphertext").get<std::string>()), tag = from_hex(j.at("tag").get<std::string>());
    int iters = j.at("iterations").get<int>();
    if (iv.size() != 12 || tag.size() != 16 || iters <= 0) throw RecordError("sealed record: bad parameters");
    Bytes key(32), pt(ct.size() + 16);
    if (PKCS5_PBKDF2_HMAC(passphrase.data(), static_cast<int>(passphrase.size()), salt.data(),
                          static_cast<int>(salt.size()), iters, EVP_sha256(), 32, key.data()) != 1) {
      throw RecordError("PBKDF2 failed");
    }
    int len = 0, fin = 0;
    std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)> ctx(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free);
    if (!ctx || EVP_DecryptInit_ex(ctx.get(), EVP_aes_256_gcm(), nullptr, key.data(), iv.data()) != 1 ||
        EVP_DecryptUpdate(ctx.get(), pt.data(), &len, ct.data(), static_cast<int>(ct.size())) != 1 ||
        EVP_CIPHER_CTX_ctrl(ctx.get(), EVP_CTRL_GCM_SET_TAG, 16, tag.data()) != 1 ||
        EVP_DecryptFinal_ex(ctx.get(), pt.data() + len, &fin) != 1) {
      throw RecordError("sealed record: wrong passphrase or corrupted file");
    }
    pt.resize(static_cast<std::size_t>(len + fin));
    return Json::parse(pt.begin(), pt.end());
  } catch (const Json::exception& e) {
    throw RecordError(std::string("sealed record: ") + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw RecordError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw RecordError(path + ": " + e.what());
  }
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw RecordError("cannot write " + path);
  out << text;
  if (!out) throw RecordError("write failed: " + path);
}

inline void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace edthresh
