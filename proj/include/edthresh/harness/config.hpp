#pragma once

#include "edthresh/harness/record_io.hpp"
#include "edthresh/profile_check.hpp"

namespace edthresh {

inline constexpr const char* kConfigFormat = "edthresh-config/1";

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed configuration file.
struct ToolConfig {
  std::string profile_name = "toy";
  std::optional<PurifyParams> purify;  // ed25519 nonce-curve parameters, if supplied
  CeremonyConfig ceremony;
  bool sealed = false;

  CurveProfile profile() const {
    if (profile_name == "toy") return toy_profile();
    if (profile_name == "ed25519") return ed25519_profile(purify);
    throw ConfigError("unknown profile '" + profile_name + "'");
  }
};

namespace detail {

inline Json constants_json(const CurveProfile& prof) {
  Json c;
  c["p"] = to_dec(prof.p());
  c["q"] = to_dec(prof.q());
  c["a"] = to_dec(prof.curve.a());
  c["d"] = to_dec(prof.curve.d());
  c["B"] = Json::array({to_dec(prof.base.x), to_dec(prof.base.y)});
  c["b"] = prof.b;
  c["c"] = prof.c;
  c["n"] = prof.n;
  return c;
}

inline Json purify_json(const PurifyParams& pp) {
  auto fq2 = [](const Fq2& v) { return Json::array({to_dec(v.c0), to_dec(v.c1)}); };
  Json j;
  j["delta"] = to_dec(pp.delta);
  j["a"] = to_dec(pp.a);
  j["b"] = to_dec(pp.b);
  j["q1"] = to_dec(pp.q1);
  j["q2"] = to_dec(pp.q2);
  j["base"] = Json::array({fq2(pp.base.x), fq2(pp.base.y)});
  return j;
}

inline PurifyParams purify_from_json(const PrimeField& fq, const Json& j) {
  auto dec = [](const Json& v) { return from_dec(v.get<std::string>()); };
  auto fq2 = [&](const Json& v) { return Fq2{dec(v.at(0)), dec(v.at(1))}; };
  WPoint2 base = WPoint2::of(fq2(j.at("base").at(0)), fq2(j.at("base").at(1)));
  return PurifyParams::make(fq, dec(j.at("delta")), dec(j.at("a")), dec(j.at("b")), dec(j.at("q1")), dec(j.at("q2")),
                            base);
}

}  // namespace detail

inline Json config_to_json(const ToolConfig& cfg) {
  CurveProfile prof = cfg.profile();
  Json j;
  j["format"] = kConfigFormat;
  j["profile"] = cfg.profile_name;
  j["constants"] = detail::constants_json(prof);
  j["purify_params"] = cfg.profile_name == "ed25519" && cfg.purify ? detail::purify_json(*cfg.purify) : Json(nullptr);
  j["purify_backend"] = std::string(backend_name(cfg.ceremony.purify_backend));
  j["encryption_backend"] = cfg.ceremony.enc_backend == EncryptionBackend::hashed_dh ? "hashed-dh" : "verifiable";
  j["dleq_tau"] = cfg.ceremony.dleq.tau;
  j["dleq_full_challenge"] = cfg.ceremony.dleq.full_challenge;
  j["pin_r3"] = cfg.ceremony.pin_r3;
  j["record_mode"] = cfg.sealed ? "sealed" : "plaintext";
  return j;
}

/// Parses and validates a configuration; the recorded constants must match the named profile.
inline ToolConfig config_from_json(const Json& j) {
  try {
    if (j.at("format").get<std::string>() != kConfigFormat) throw ConfigError("not a configuration file");
    ToolConfig cfg;
    cfg.profile_name = j.at("profile").get<std::string>();
    if (cfg.profile_name != "toy" && cfg.profile_name != "ed25519") {
      throw ConfigError("unknown profile '" + cfg.profile_name + "'");
    }
    if (j.contains("purify_params") && !j.at("purify_params").is_null()) {
      if (cfg.profile_name != "ed25519") throw ConfigError("purify_params applies to the ed25519 profile only");
      cfg.purify = detail::purify_from_json(ed25519_profile(std::nullopt).scalars, j.at("purify_params"));
    }
    std::string pb = j.at("purify_backend").get<std::string>();
    if (pb == backend_name(PurifyBackend::dev_transparent)) {
      cfg.ceremony.purify_backend = PurifyBackend::dev_transparent;
    } else if (pb == backend_name(PurifyBackend::bulletproof)) {
      cfg.ceremony.purify_backend = PurifyBackend::bulletproof;
    } else {
      throw ConfigError("unknown purify_backend '" + pb + "'");
    }
    std::string eb = j.at("encryption_backend").get<std::string>();
    if (eb == "hashed-dh") {
      cfg.ceremony.enc_backend = EncryptionBackend::hashed_dh;
    } else if (eb == "verifiable") {
      cfg.ceremony.enc_backend = EncryptionBackend::verifiable;
    } else {
      throw ConfigError("unknown encryption_backend '" + eb + "'");
    }
    cfg.ceremony.dleq.tau = j.at("dleq_tau").get<unsigned>();
    if (cfg.ceremony.dleq.tau == 0) throw ConfigError("dleq_tau must be positive");
    cfg.ceremony.dleq.full_challenge = j.at("dleq_full_challenge").get<bool>();
    cfg.ceremony.pin_r3 = j.at("pin_r3").get<bool>();
    std::string mode = j.at("record_mode").get<std::string>();
    if (mode != "sealed" && mode != "plaintext") throw ConfigError("record_mode must be sealed or plaintext");
    cfg.sealed = mode == "sealed";

    CurveProfile prof = cfg.profile();
    if (j.contains("constants") && j.at("constants") != detail::constants_json(prof)) {
      throw ConfigError("constants do not match the '" + cfg.profile_name + "' profile");
    }
    auto problems = validate_profile(prof, prof.name == "toy");
    if (!problems.empty()) throw ConfigError("invalid profile: " + problems.front());
    return cfg;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed configuration: ") + e.what());
  }
}

}  // namespace edthresh
