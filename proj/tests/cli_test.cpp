#include <gtest/gtest.h>

#include <cstdlib>
#include <sstream>

#include "edthresh/harness/cli.hpp"

using namespace edthresh;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("edthresh_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    msg_ = (dir_ / "msg.txt").string();
    std::ofstream(msg_) << "transfer 10 units";
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), {"edthresh", "--dir", dir_.string()});
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  Bytes file(const std::string& name) { return cli::read_file_bytes(dir_ / name); }
  std::string path(const std::string& name) { return (dir_ / name).string(); }

  fs::path dir_;
  std::string msg_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, KeygenSignVerifyFlow) {
  ASSERT_EQ(run({"setup", "--profile", "toy"}), kExitOk) << err_.str();
  EXPECT_NE(err_.str().find("unencrypted"), std::string::npos);
  ASSERT_EQ(run({"setup", "--check"}), kExitOk) << err_.str();
  ASSERT_EQ(run({"keygen"}), kExitOk) << err_.str();
  ASSERT_EQ(run({"sign", "--signers", "1,2", "--msg", msg_, "--out", path("a.sig")}), kExitOk) << err_.str();
  EXPECT_EQ(run({"verify", "--sig", path("a.sig"), "--msg", msg_}), kExitOk);
  ASSERT_EQ(run({"replay", "--transcript", path("keygen.transcript.json")}), kExitOk) << out_.str();
  ASSERT_EQ(run({"replay", "--transcript", path("sign.transcript.json")}), kExitOk) << out_.str();

  auto prof = toy_profile();
  Bytes hex = file("public_key.hex");
  Bytes pk = from_hex(std::string(hex.begin(), hex.end() - 1));
  EXPECT_TRUE(central_verify_encoded(prof, pk, to_bytes("transfer 10 units"), file("a.sig")));
}

TEST_F(CliTest, SigningTwiceGivesIdenticalFiles) {
  ASSERT_EQ(run({"setup", "--profile", "toy"}), kExitOk);
  ASSERT_EQ(run({"keygen"}), kExitOk);
  ASSERT_EQ(run({"sign", "--signers", "1,2", "--msg", msg_, "--out", path("a.sig")}), kExitOk);
  ASSERT_EQ(run({"sign", "--signers", "2,1", "--msg", msg_, "--out", path("b.sig")}), kExitOk);
  EXPECT_EQ(file("a.sig"), file("b.sig"));
}

TEST_F(CliTest, TamperedSignatureIsRejected) {
  ASSERT_EQ(run({"setup", "--profile", "toy"}), kExitOk);
  ASSERT_EQ(run({"keygen"}), kExitOk);
  ASSERT_EQ(run({"sign", "--signers", "1,2", "--msg", msg_, "--out", path("a.sig")}), kExitOk);
  Bytes sig = file("a.sig");
  for (std::size_t i = 0; i < sig.size(); ++i) {
    Bytes bad = sig;
    bad[i] ^= 0x01;
    cli::write_file_bytes(dir_ / "bad.sig", bad);
    EXPECT_NE(run({"verify", "--sig", path("bad.sig"), "--msg", msg_}), kExitOk) << "byte " << i;
  }
  std::ofstream(path("other.txt")) << "transfer 11 units";
  EXPECT_EQ(run({"verify", "--sig", path("a.sig"), "--msg", path("other.txt")}), kExitReject);
}

TEST_F(CliTest, RecoveryThenAllPairsAndDerivation) {
  ASSERT_EQ(run({"setup", "--profile", "toy", "--pin-r3"}), kExitOk);
  ASSERT_EQ(run({"keygen"}), kExitOk);
  EXPECT_EQ(run({"sign", "--signers", "1,3", "--msg", msg_}), kExitConfig);
  ASSERT_EQ(run({"recover-sign", "--signers", "1,3", "--msg", msg_, "--out", path("r.sig")}), kExitOk) << err_.str();
  EXPECT_EQ(run({"verify", "--sig", path("r.sig"), "--msg", msg_}), kExitOk);
  ASSERT_EQ(run({"replay", "--transcript", path("recover-sign.transcript.json")}), kExitOk) << out_.str();
  ASSERT_EQ(run({"recover-sign", "--signers", "1,3", "--msg", msg_, "--out", path("r2.sig")}), kExitOk);
  EXPECT_EQ(file("r.sig"), file("r2.sig"));
  for (std::string pair : {"1,2", "1,3", "2,3"}) {
    ASSERT_EQ(run({"sign", "--signers", pair, "--msg", msg_, "--out", path("p.sig")}), kExitOk) << pair << err_.str();
    EXPECT_EQ(run({"verify", "--sig", path("p.sig"), "--msg", msg_}), kExitOk) << pair;
  }
  ASSERT_EQ(run({"derive", "--index", "42"}), kExitOk);
  for (std::string pair : {"1,2", "1,3", "2,3"}) {
    ASSERT_EQ(run({"sign", "--signers", pair, "--index", "42", "--msg", msg_, "--out", path("d.sig")}), kExitOk);
    EXPECT_EQ(run({"verify", "--sig", path("d.sig"), "--msg", msg_, "--index", "42"}), kExitOk) << pair;
    EXPECT_EQ(run({"verify", "--sig", path("d.sig"), "--msg", msg_}), kExitReject) << pair;
  }
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}), kExitUsage);
  EXPECT_EQ(run({"frobnicate"}), kExitUsage);
  EXPECT_EQ(run({"setup", "--profile", "p256"}), kExitUsage);
  ASSERT_EQ(run({"setup", "--profile", "toy"}), kExitOk);
  ASSERT_EQ(run({"keygen"}), kExitOk);
  EXPECT_EQ(run({"sign", "--signers", "1,1", "--msg", msg_}), kExitUsage);
  EXPECT_EQ(run({"sign", "--signers", "1,2,3", "--msg", msg_}), kExitUsage);
  EXPECT_EQ(run({"sign", "--msg", msg_}), kExitUsage);
  EXPECT_EQ(run({"recover-sign", "--signers", "1,2", "--msg", msg_}), kExitUsage);
  EXPECT_EQ(run({"derive"}), kExitUsage);
}

TEST_F(CliTest, ConfigAndIoErrors) {
  EXPECT_EQ(run({"keygen"}), kExitConfig);
  ASSERT_EQ(run({"setup", "--profile", "toy"}), kExitOk);
  EXPECT_EQ(run({"setup", "--profile", "toy"}), kExitConfig);
  EXPECT_EQ(run({"sign", "--signers", "1,2", "--msg", msg_}), kExitConfig);
  std::ofstream(path("config.json")) << "{ not json";
  EXPECT_EQ(run({"setup", "--check"}), kExitConfig);
  EXPECT_EQ(run({"setup", "--profile", "toy", "--force", "--tau", "16"}), kExitOk);
  Json cfg = read_json_file(path("config.json"));
  EXPECT_EQ(cfg["dleq_tau"], 16);
  cfg["encryption_backend"] = "verifiable";
  write_json_file(path("config.json"), cfg);
  EXPECT_EQ(run({"keygen"}), kExitUnsupported);
}

TEST_F(CliTest, SealedModeEncryptsRecords) {
  ::setenv(cli::kPassphraseEnv, "test passphrase", 1);
  ASSERT_EQ(run({"setup", "--profile", "toy", "--sealed"}), kExitOk) << err_.str();
  EXPECT_EQ(err_.str().find("unencrypted"), std::string::npos);
  ASSERT_EQ(run({"keygen"}), kExitOk) << err_.str();
  Json rec = read_json_file(path("party1.json"));
  EXPECT_TRUE(is_sealed(rec));
  ASSERT_EQ(run({"sign", "--signers", "1,2", "--msg", msg_, "--out", path("s.sig")}), kExitOk);
  EXPECT_EQ(run({"verify", "--sig", path("s.sig"), "--msg", msg_}), kExitOk);
  ::setenv(cli::kPassphraseEnv, "wrong", 1);
  EXPECT_EQ(run({"sign", "--signers", "1,2", "--msg", msg_}), kExitConfig);
  ::unsetenv(cli::kPassphraseEnv);
  EXPECT_EQ(run({"sign", "--signers", "1,2", "--msg", msg_}), kExitConfig);
}

TEST_F(CliTest, Ed25519WithoutNonceCurve) {
  ASSERT_EQ(run({"setup", "--profile", "ed25519"}), kExitOk);
  EXPECT_NE(out_.str().find("nonce proofs are disabled"), std::string::npos);
  ASSERT_EQ(run({"keygen"}), kExitOk) << err_.str();
  ASSERT_EQ(run({"sign", "--signers", "1,2", "--msg", msg_, "--out", path("e.sig")}), kExitOk);
  EXPECT_EQ(file("e.sig").size(), 64u);
  EXPECT_EQ(run({"verify", "--sig", path("e.sig"), "--msg", msg_}), kExitOk);
}

TEST(ExitCodes, DistinctPerAbortKind) {
  std::set<int> codes{kExitOk, kExitReject, kExitUsage, kExitConfig, kExitUnsupported};
  for (int k = 0; k <= static_cast<int>(AbortKind::missing_message); ++k) {
    EXPECT_TRUE(codes.insert(exit_code(static_cast<AbortKind>(k))).second);
  }
}
