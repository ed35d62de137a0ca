#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "edthresh/harness/config.hpp"

namespace edthresh {

/// Process exit codes. Aborts map to kExitAbortBase + the abort kind's ordinal.
inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitConfig = 3;
inline constexpr int kExitUnsupported = 4;
inline constexpr int kExitAbortBase = 10;

inline int exit_code(AbortKind k) { return kExitAbortBase + static_cast<int>(k); }

namespace cli {

namespace fs = std::filesystem;

inline const char* kPassphraseEnv = "EDTHRESH_PASSPHRASE";

struct Context {
  fs::path dir;
  std::ostream& out;
  std::ostream& err;

  fs::path config_path() const { return dir / "config.json"; }
  fs::path key_path() const { return dir / "p3_key.json"; }
  fs::path record_path(int i) const { return dir / ("party" + std::to_string(i) + ".json"); }
  fs::path pubkey_path(std::optional<std::uint64_t> index) const {
    return dir / (index ? "public_key." + std::to_string(*index) + ".hex" : std::string("public_key.hex"));
  }
  fs::path transcript_path(const std::string& kind) const { return dir / (kind + ".transcript.json"); }
};

inline std::string passphrase() {
  const char* p = std::getenv(kPassphraseEnv);
  if (!p || !*p) throw ConfigError(std::string("sealed mode needs the passphrase in $") + kPassphraseEnv);
  return p;
}

inline ToolConfig load_config(const Context& c) { return config_from_json(read_json_file(c.config_path())); }

/// Secret-bearing files go through here: sealed mode encrypts, plaintext mode warns.
inline void write_secret(const Context& c, const ToolConfig& cfg, const fs::path& path, const Json& j) {
  if (cfg.sealed) {
    write_json_file(path, seal(j, passphrase()));
  } else {
    c.err << "warning: writing " << path.filename().string() << " unencrypted (record_mode plaintext)\n";
    write_json_file(path, j);
  }
  fs::permissions(path, fs::perms::owner_read | fs::perms::owner_write, fs::perm_options::replace);
}

inline Json read_secret(const fs::path& path) {
  Json j = read_json_file(path.string());
  return is_sealed(j) ? unseal(j, passphrase()) : j;
}

inline PartyRecord load_record(const Context& c, const CurveProfile& prof, int i) {
  if (!fs::exists(c.record_path(i))) throw RecordError("no record for P" + std::to_string(i) + " in " + c.dir.string());
  return record_from_json(prof, read_secret(c.record_path(i)));
}

inline std::vector<int> parse_signers(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok != "1" && tok != "2" && tok != "3") throw CLI::ValidationError("--signers", "expected indices 1, 2 or 3");
    out.push_back(tok[0] - '0');
  }
  if (out.size() != 2 || out[0] == out[1]) throw CLI::ValidationError("--signers", "expected two distinct indices");
  if (out[0] > out[1]) std::swap(out[0], out[1]);
  return out;
}

inline Bytes read_file_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw RecordError("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

inline void write_file_bytes(const fs::path& path, const Bytes& b) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw RecordError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(b.data()), static_cast<std::streamsize>(b.size()));
}

inline std::string fresh_id() {
  SystemRandom rng;
  return to_hex(rng.bytes(8));
}

/// Writes the transcript and reports the outcome; returns the exit code.
inline int finish(const Context& c, const CurveProfile& prof, const CeremonyOutcome& out) {
  write_json_file(c.transcript_path(kind_name(out.kind)).string(), transcript_json(prof, out));
  if (out.abort) {
    c.err << "abort: " << out.abort->what() << "\n";
    return exit_code(out.abort->kind());
  }
  return kExitOk;
}

inline int cmd_setup(const Context& c, const std::string& profile, bool check, bool sealed, bool pin, unsigned tau,
                     bool full_challenge, const std::string& purify_file, bool force) {
  if (check) {
    ToolConfig cfg = load_config(c);
    CurveProfile prof = cfg.profile();
    if (fs::exists(c.key_path())) keypair_from_json(prof, read_secret(c.key_path()));
    c.out << "config ok: profile " << prof.name << (prof.purify ? "" : " (nonce curve disabled)") << "\n";
    return kExitOk;
  }
  if (!force && (fs::exists(c.config_path()) || fs::exists(c.key_path()))) {
    throw ConfigError(c.dir.string() + " already holds a setup; pass --force to replace it");
  }
  ToolConfig cfg;
  cfg.profile_name = profile;
  cfg.sealed = sealed;
  cfg.ceremony.pin_r3 = pin;
  cfg.ceremony.dleq.tau = tau;
  cfg.ceremony.dleq.full_challenge = full_challenge;
  if (!purify_file.empty()) {
    if (profile != "ed25519") throw ConfigError("--purify-params applies to the ed25519 profile only");
    cfg.purify = detail::purify_from_json(ed25519_profile(std::nullopt).scalars, read_json_file(purify_file));
  }
  Json j = config_to_json(cfg);
  cfg = config_from_json(j);
  CurveProfile prof = cfg.profile();
  fs::create_directories(c.dir);
  write_json_file(c.config_path().string(), j);
  SystemRandom rng;
  write_secret(c, cfg, c.key_path(), keypair_to_json(prof, RecoveryKeypair::generate(prof, rng)));
  c.out << "wrote " << c.config_path().string() << " and " << c.key_path().string() << "\n";
  if (!prof.purify) c.out << "note: profile " << prof.name << " has no nonce-curve parameters; nonce proofs are disabled\n";
  return kExitOk;
}

inline int cmd_keygen(const Context& c, const std::string& id) {
  ToolConfig cfg = load_config(c);
  CurveProfile prof = cfg.profile();
  auto keys = keypair_from_json(prof, read_secret(c.key_path()));
  SystemRandom rng;
  auto out = run_keygen(prof, keys.pk, id.empty() ? fresh_id() : id, rng, cfg.ceremony);
  int code = finish(c, prof, out);
  if (code != kExitOk) return code;
  for (int i : {1, 2}) write_secret(c, cfg, c.record_path(i), record_to_json(prof, out.records.at(i)));
  if (fs::exists(c.record_path(3))) fs::remove(c.record_path(3));
  std::string pk = to_hex(prof.curve.encode(*out.public_key));
  write_text_file(c.pubkey_path(std::nullopt).string(), pk + "\n");
  c.out << "public key: " << pk << "\n";
  return kExitOk;
}

inline int report_signature(const Context& c, const CurveProfile& prof, const CeremonyOutcome& out,
                            const fs::path& sig_path, std::optional<std::uint64_t> index) {
  Bytes sig = encode_signature(prof, *out.signature);
  write_file_bytes(sig_path, sig);
  write_text_file(c.pubkey_path(index).string(), to_hex(prof.curve.encode(*out.public_key)) + "\n");
  c.out << "signature: " << to_hex(sig) << "\n";
  return kExitOk;
}

inline int cmd_sign(const Context& c, const std::vector<int>& signers, const fs::path& msg_path, fs::path sig_path,
                    std::optional<std::uint64_t> index, const std::string& id) {
  ToolConfig cfg = load_config(c);
  CurveProfile prof = cfg.profile();
  auto ra = load_record(c, prof, signers[0]);
  auto rb = load_record(c, prof, signers[1]);
  if (signers[1] == 3 && !ra.x3) throw RecordError("P" + std::to_string(signers[0]) + " has not met P3; run recover-sign");
  Bytes msg = read_file_bytes(msg_path);
  auto out = run_sign(prof, ra, rb, msg, id.empty() ? fresh_id() : id, cfg.ceremony, nullptr, index);
  int code = finish(c, prof, out);
  if (code != kExitOk) return code;
  if (sig_path.empty()) sig_path = c.dir / "signature.bin";
  return report_signature(c, prof, out, sig_path, index);
}

inline int cmd_recover_sign(const Context& c, const std::vector<int>& signers, const fs::path& msg_path,
                            fs::path sig_path, std::optional<std::uint64_t> index, const std::string& id) {
  if (signers[1] != 3) throw CLI::ValidationError("--signers", "recover-sign pairs P1 or P2 with P3");
  int online = signers[0];
  ToolConfig cfg = load_config(c);
  CurveProfile prof = cfg.profile();
  auto rec = load_record(c, prof, online);
  auto keys = keypair_from_json(prof, read_secret(c.key_path()));
  std::optional<PartyRecord> other;
  if (fs::exists(c.record_path(3 - online))) other = load_record(c, prof, 3 - online);
  std::optional<Int> pinned;
  if (cfg.ceremony.pin_r3 && fs::exists(c.record_path(3))) pinned = load_record(c, prof, 3).rprime;
  Bytes msg = read_file_bytes(msg_path);
  SystemRandom rng;
  auto out = run_recover_sign(prof, rec, keys, msg, id.empty() ? fresh_id() : id, rng, cfg.ceremony, nullptr, pinned,
                              other ? &*other : nullptr, index);
  int code = finish(c, prof, out);
  if (code != kExitOk) return code;
  for (const auto& [i, r] : out.records) write_secret(c, cfg, c.record_path(i), record_to_json(prof, r));
  if (sig_path.empty()) sig_path = c.dir / "signature.bin";
  return report_signature(c, prof, out, sig_path, index);
}

inline int cmd_derive(const Context& c, std::uint64_t index) {
  ToolConfig cfg = load_config(c);
  CurveProfile prof = cfg.profile();
  std::optional<EdPoint> Ai;
  for (int i : {1, 2, 3}) {
    if (!fs::exists(c.record_path(i))) continue;
    auto r = load_record(c, prof, i);
    auto dk = derive(prof, r, index);
    if (Ai && *Ai != dk.A) throw RecordError("records disagree on the derived key");
    Ai = dk.A;
    write_secret(c, cfg, c.record_path(i), record_to_json(prof, r));
  }
  if (!Ai) throw RecordError("no party records in " + c.dir.string());
  std::string hex = to_hex(prof.curve.encode(*Ai));
  write_text_file(c.pubkey_path(index).string(), hex + "\n");
  c.out << "derived key " << index << ": " << hex << "\n";
  return kExitOk;
}

inline int cmd_verify(const Context& c, const fs::path& sig_path, const fs::path& msg_path, fs::path key_path,
                      std::optional<std::uint64_t> index) {
  ToolConfig cfg = load_config(c);
  CurveProfile prof = cfg.profile();
  if (key_path.empty()) key_path = c.pubkey_path(index);
  std::ifstream kin(key_path);
  std::string key_hex;
  if (!kin || !(kin >> key_hex)) throw RecordError("cannot read public key from " + key_path.string());
  bool ok = central_verify_encoded(prof, from_hex(key_hex), read_file_bytes(msg_path), read_file_bytes(sig_path));
  c.out << (ok ? "signature valid" : "signature INVALID") << "\n";
  return ok ? kExitOk : kExitReject;
}

inline int cmd_replay(const Context& c, const fs::path& transcript) {
  ToolConfig cfg = load_config(c);
  CurveProfile prof = cfg.profile();
  auto rep = replay_transcript(prof, read_json_file(transcript.string()), cfg.ceremony.dleq);
  for (const auto& line : rep.checks) c.out << line << "\n";
  if (rep.failure) c.out << "verify-only failure: " << *rep.failure << "\n";
  c.out << "recorded outcome " << rep.recorded_status << (rep.reproduced ? " reproduced" : " NOT reproduced") << "\n";
  return rep.reproduced ? kExitOk : kExitReject;
}

}  // namespace cli

/// Entry point shared by the executable and the tests.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"(2,3)-threshold EdDSA with an offline recovery party"};
  app.require_subcommand(1);
  std::string dir = ".", id;
  app.add_option("--dir", dir, "Directory holding config, keys, records and transcripts");
  app.add_option("--id", id, "Ceremony identifier (random by default)");

  std::string profile = "toy", purify_file, signers_s, msg, sig, key;
  bool check = false, sealed = false, pin = false, full = false, force = false;
  unsigned tau = 128;
  std::optional<std::uint64_t> index;
  std::string transcript;

  auto* setup = app.add_subcommand("setup", "Write or check the configuration and P3's key pair");
  setup->add_option("--profile", profile)->check(CLI::IsMember({"toy", "ed25519"}));
  setup->add_flag("--check", check, "Validate an existing configuration");
  setup->add_flag("--sealed", sealed, "Encrypt records under $EDTHRESH_PASSPHRASE");
  setup->add_flag("--pin-r3", pin, "Keep P3's nonce seed across recoveries");
  setup->add_option("--tau", tau, "DlogEq rounds")->check(CLI::PositiveNumber);
  setup->add_flag("--full-challenge", full, "DlogEq with one full-size challenge");
  setup->add_option("--purify-params", purify_file, "JSON nonce-curve parameters for ed25519");
  setup->add_flag("--force", force, "Replace an existing setup");

  auto* keygen = app.add_subcommand("keygen", "Run key generation between P1 and P2");

  auto* sign = app.add_subcommand("sign", "Sign with two parties");
  sign->add_option("--signers", signers_s)->required();
  sign->add_option("--msg", msg)->required()->check(CLI::ExistingFile);
  sign->add_option("--out", sig, "Signature file (default DIR/signature.bin)");
  sign->add_option("--index", index, "Sign under derived key i");

  auto* recover = app.add_subcommand("recover-sign", "Bring in P3 and sign");
  recover->add_option("--signers", signers_s)->required();
  recover->add_option("--msg", msg)->required()->check(CLI::ExistingFile);
  recover->add_option("--out", sig, "Signature file (default DIR/signature.bin)");
  recover->add_option("--index", index, "Sign under derived key i");

  auto* derive_cmd = app.add_subcommand("derive", "Derive key i in every record present");
  derive_cmd->add_option("--index", index)->required();

  auto* verify = app.add_subcommand("verify", "Check a signature");
  verify->add_option("--sig", sig)->required()->check(CLI::ExistingFile);
  verify->add_option("--msg", msg)->required()->check(CLI::ExistingFile);
  verify->add_option("--key", key, "Hex public key file (default DIR/public_key[.i].hex)");
  verify->add_option("--index", index, "Verify against derived key i");

  auto* replay = app.add_subcommand("replay", "Verify a transcript without secrets");
  replay->add_option("--transcript", transcript)->required()->check(CLI::ExistingFile);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  cli::Context c{dir, out, err};
  try {
    if (*setup) return cli::cmd_setup(c, profile, check, sealed, pin, tau, full, purify_file, force);
    if (*keygen) return cli::cmd_keygen(c, id);
    if (*sign) return cli::cmd_sign(c, cli::parse_signers(signers_s), msg, sig, index, id);
    if (*recover) return cli::cmd_recover_sign(c, cli::parse_signers(signers_s), msg, sig, index, id);
    if (*derive_cmd) return cli::cmd_derive(c, *index);
    if (*verify) return cli::cmd_verify(c, sig, msg, key, index);
    if (*replay) return cli::cmd_replay(c, transcript);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedBackend& e) {
    err << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const RecordError& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const TranscriptError& e) {
    err << "transcript error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "i/o error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DecodeError& e) {
    err << "decode error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitUsage;
}

}  // namespace edthresh
