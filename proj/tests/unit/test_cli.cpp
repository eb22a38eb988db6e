#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "ncplush/json_codec.hpp"

using namespace ncplush;
using namespace ncplush::testing;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  Json json;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ncplush_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string manifest(const std::string& name, const SymmetricRealization& r) {
    return write(name, save_manifest(r));
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "ncplush");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    Outcome o;
    o.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.err = err.str();
    if (!out.str().empty() && out.str().front() == '{') o.json = Json::parse(out.str());
    return o;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, EvalF1) {
  const std::string m = manifest("f1.json", F1());
  const std::string p = write("x.json", R"({"X": [[[[0.2, 0.0]]]]})");
  const Outcome o = run({"eval", "--in", m, "--point", p});
  EXPECT_EQ(o.code, cli::kExitOk);
  EXPECT_NEAR(o.json["value"][0][0][0].get<double>(), 1.25, 1e-12);
}

TEST_F(CliTest, CheckMinimal) {
  EXPECT_EQ(run({"check-minimal", "--in", manifest("f2.json", F2())}).code, cli::kExitOk);
  const Outcome o = run({"check-minimal", "--in", manifest("f4.json", F4())});
  EXPECT_EQ(o.code, cli::kExitFalse);
  EXPECT_EQ(o.json["span_dim"], 2);
}

TEST_F(CliTest, ReduceWritesManifest) {
  const std::string out = path("red.json");
  const Outcome o = run({"reduce", "--in", manifest("f4.json", F4()), "--out", out});
  EXPECT_EQ(o.code, cli::kExitOk);
  std::ifstream in(out);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(load_manifest(text.str()).d(), 2);
}

TEST_F(CliTest, CertifyPlushF2) {
  const Outcome o = run({"certify-plush", "--in", manifest("f2.json", F2())});
  EXPECT_EQ(o.code, cli::kExitFalse);
  EXPECT_EQ(o.json["verdict"], "certified_false");
  EXPECT_NEAR(o.json["min_eig_ran_Bstar"].get<double>(), -1.0, 1e-9);
  EXPECT_NEAR(o.json["witness"]["hess_eig"].get<double>(), -1.0, 1e-6);
}

TEST_F(CliTest, CertifyF3) {
  const std::string m = manifest("f3.json", F3());
  EXPECT_EQ(run({"certify-plush", "--in", m}).code, cli::kExitOk);
  const Outcome c = run({"certify-convex", "--in", m});
  EXPECT_EQ(c.code, cli::kExitFalse);
  EXPECT_NEAR(c.json["min_eig_QKQ"].get<double>(), -1.0, 1e-9);
}

TEST_F(CliTest, MinimalityRequiredUnlessAutoReduce) {
  const std::string m = manifest("f4.json", F4());
  const Outcome o = run({"certify-plush", "--in", m});
  EXPECT_EQ(o.code, cli::kExitError);
  EXPECT_EQ(o.json["error"]["kind"], "MinimalityRequired");
  EXPECT_NE(o.err.find("MinimalityRequired"), std::string::npos);
  EXPECT_EQ(run({"certify-plush", "--in", m, "--auto-reduce"}).code, cli::kExitFalse);
}

TEST_F(CliTest, Radius) {
  const Outcome o = run({"radius", "--in", manifest("f1.json", F1())});
  EXPECT_EQ(o.code, cli::kExitOk);
  EXPECT_NEAR(o.json["radius"].get<double>(), 1.0 / 3.0, 1e-9);
  const SymmetricRealization zero(diag({1.0}), {mat({{0.0}})}, vec({1.0}));
  const Outcome z = run({"radius", "--in", manifest("z.json", zero)});
  EXPECT_TRUE(z.json["radius"].is_null());
  EXPECT_TRUE(z.json["unbounded"].get<bool>());
}

TEST_F(CliTest, DecomposeThenVerify) {
  const std::string m = manifest("f3.json", F3());
  const std::string dec = path("dec.json");
  const Outcome d = run({"decompose", "--in", m, "--out", dec});
  EXPECT_EQ(d.code, cli::kExitOk);
  EXPECT_EQ(d.json["h"], 2);
  const Outcome v = run({"verify", "--in", m, "--dec", dec, "--samples", "20"});
  EXPECT_EQ(v.code, cli::kExitOk);
  EXPECT_LE(v.json["max_residual"].get<double>(), 1e-6);
}

TEST_F(CliTest, VerifyMismatchFails) {
  const std::string dec = path("dec.json");
  ASSERT_EQ(run({"decompose", "--in", manifest("f3.json", F3()), "--out", dec}).code, cli::kExitOk);
  const SymmetricRealization other(F3().K(), {0.5 * F3().B(0)}, F3().c());
  const Outcome v = run({"verify", "--in", manifest("other.json", other), "--dec", dec});
  EXPECT_EQ(v.code, cli::kExitError);
  EXPECT_EQ(v.json["error"]["kind"], "VerificationFailed");
}

TEST_F(CliTest, SampleAndWitness) {
  const std::string m = manifest("f2.json", F2());
  const Outcome s = run({"sample", "--in", m, "--samples", "10", "--seed", "3"});
  EXPECT_EQ(s.code, cli::kExitOk);
  EXPECT_LE(s.json["min_eig"].get<double>(), -1.0 + 1e-9);
  EXPECT_EQ(run({"witness", "--in", m}).code, cli::kExitFalse);
  EXPECT_EQ(run({"witness", "--in", manifest("f3.json", F3())}).code, cli::kExitOk);
}

TEST_F(CliTest, GenIsDeterministic) {
  const Outcome a = run({"gen", "--kind", "plush", "--a", "2", "--b", "1", "--g", "2", "--seed", "5",
                         "--out", path("a.json")});
  const Outcome b = run({"gen", "--kind", "plush", "--a", "2", "--b", "1", "--g", "2", "--seed", "5",
                         "--out", path("b.json")});
  EXPECT_EQ(a.code, cli::kExitOk);
  std::ifstream fa(path("a.json"));
  std::ifstream fb(path("b.json"));
  std::stringstream ta;
  std::stringstream tb;
  ta << fa.rdbuf();
  tb << fb.rdbuf();
  EXPECT_EQ(ta.str(), tb.str());
  EXPECT_EQ(load_manifest(ta.str()).d(), 3);
}

TEST_F(CliTest, BadInput) {
  const Outcome o = run({"check-minimal", "--in", write("bad.json", R"({"d": 1})")});
  EXPECT_EQ(o.code, cli::kExitError);
  EXPECT_EQ(o.json["error"]["kind"], "ParseError");
  const Outcome k = run({"check-minimal", "--in", write("k.json", R"({"d":1,"g":0,"K":[[[2,0]]],"B":[],"c":[[1,0]]})")});
  EXPECT_EQ(k.json["error"]["kind"], "InvalidRealization");
}

TEST_F(CliTest, Usage) {
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"eval", "--in", manifest("f1.json", F1())}).code, cli::kExitUsage);
}
