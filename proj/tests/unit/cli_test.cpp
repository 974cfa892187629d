// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "scsa/cli/commands.hpp"
#include "scsa/cli/csv.hpp"
#include "scsa/cli/run_config.hpp"
#include "scsa/error.hpp"

namespace fs = std::filesystem;
using namespace scsa;
using namespace scsa::cli;

namespace {

class CliRun : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("scsa_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }
  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "scsa");
    out_.str("");
    err_.str("");
    return run_cli(args, out_, err_);
  }
  std::string read(const fs::path& p) const {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
  std::size_t data_rows(const fs::path& p) const {
    std::ifstream in(p);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) ++n;
    return n == 0 ? 0 : n - 1;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST(RunConfig, ParsesNumberLists) {
  EXPECT_EQ(parse_number_list("0.1,0.05, 0.025", "h"), (std::vector<double>{0.1, 0.05, 0.025}));
  EXPECT_EQ(parse_number_list("-0.5", "lambda"), (std::vector<double>{-0.5}));
  EXPECT_THROW(parse_number_list("0.1,abc", "h"), ConfigError);
  EXPECT_THROW(parse_number_list("", "h"), ConfigError);
}

TEST(RunConfig, JsonFieldsAndWindowArray) {
  const RunConfig c = config_from_json_text(
      R"({"input":"beat","h_list":[0.1,0.05],"lambda_list":-70,"gamma_list":[0.5,1],)"
      R"("M":512,"window":[10,20],"margin":0.5,"output_dir":"o","emit_svg":true,"workers":2})");
  EXPECT_EQ(c.input, "beat");
  EXPECT_EQ(c.h_list.size(), 2u);
  EXPECT_EQ(c.lambda_list, std::vector<double>{-70.0});
  EXPECT_EQ(c.M, 512u);
  EXPECT_TRUE(c.M_explicit);
  EXPECT_EQ(c.window, "10:20");
  EXPECT_DOUBLE_EQ(*c.margin, 0.5);
  EXPECT_TRUE(c.emit_svg);
  EXPECT_EQ(c.workers, 2u);
}

TEST(RunConfig, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(config_from_json_text(R"({"hh":[0.1]})"), ConfigError);
  EXPECT_THROW(config_from_json_text("{not json"), ConfigError);
  EXPECT_THROW(config_from_json_text(R"({"h_list":["a"]})"), ConfigError);
  RunConfig c;
  EXPECT_THROW(validate_config(c), ConfigError);
  c.h_list = {0.1, -0.1};
  EXPECT_THROW(validate_config(c), ConfigError);
  c.h_list = {0.1};
  c.M = 1023;
  EXPECT_THROW(validate_config(c), ConfigError);
  c.M = 1024;
  c.gamma_list = {-1.0};
  EXPECT_THROW(validate_config(c), ConfigError);
}

TEST(Csv, FormatsSeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST(Csv, TableRejectsRaggedRows) {
  CsvTable t({"a", "b"});
  t.cell(1.0);
  EXPECT_THROW(t.end_row(), InvariantError);
}

TEST_F(CliRun, SignalRoundTrip) {
  const Signal s = sech2_signal(Grid(0.0, 10.0, 64), 5.0);
  write_signal_csv(dir_ / "s.csv", s);
  const LoadedSignal back = load_signal_csv(dir_ / "s.csv");
  ASSERT_EQ(back.signal.size(), 64u);
  EXPECT_NEAR(back.signal.grid().spacing(), s.grid().spacing(), 1e-12);
  for (std::size_t j = 0; j < 64; ++j) EXPECT_NEAR(back.signal[j], s[j], 1e-12);
}

TEST_F(CliRun, NonNumericCellNamesLocation) {
  std::string text = "x,y\n";
  for (int j = 0; j < 10; ++j) text += std::to_string(j * 0.1) + "," + (j == 4 ? "oops" : "1.0") + "\n";
  const fs::path p = write("bad.csv", text);
  try {
    load_signal_csv(p);
    FAIL() << "expected DataError";
  } catch (const DataError& e) {
    EXPECT_NE(std::string(e.what()).find(":6:2"), std::string::npos) << e.what();
  }
}

TEST_F(CliRun, NonUniformSpacingIsRejected) {
  std::string text = "x,y\n";
  for (int j = 0; j < 10; ++j) text += std::to_string(j * 0.1 + (j == 5 ? 0.01 : 0.0)) + ",1.0\n";
  EXPECT_THROW(load_signal_csv(write("jit.csv", text)), DataError);
}

TEST_F(CliRun, OddCountDropsLastSample) {
  std::string text;
  for (int j = 0; j < 11; ++j) text += "1.0\n";
  const LoadedSignal s = load_signal_csv(write("odd.csv", text), 0.1);
  EXPECT_EQ(s.signal.size(), 10u);
  EXPECT_FALSE(s.warnings.empty());
  EXPECT_THROW(load_signal_csv(dir_ / "odd.csv"), ConfigError);
}

TEST_F(CliRun, MissingFileIsDataError) {
  EXPECT_THROW(load_signal_csv(dir_ / "nope.csv"), DataError);
}

TEST_F(CliRun, SpectrumOnSech2HasTenRows) {
  ASSERT_EQ(run({"spectrum", "--signal", "sech2", "--h", "0.1", "--lambda", "0,-0.5", "--out", dir_.string()}), 0)
      << err_.str();
  EXPECT_EQ(data_rows(dir_ / "spectrum.csv"), 10u);
  const std::string counts = read(dir_ / "counts.csv");
  EXPECT_NE(counts.find("0.10000000000000001,0,10,10"), std::string::npos) << counts;
  EXPECT_NE(counts.find("0.10000000000000001,-0.5,10,3"), std::string::npos) << counts;
}

TEST_F(CliRun, BeatHasBoundStatesAndLambdaReducesCount) {
  ASSERT_EQ(run({"spectrum", "--signal", "beat", "--h", "0.1", "--lambda", "0,-70", "--M", "512", "--out",
                 dir_.string()}),
            0)
      << err_.str();
  std::ifstream in(dir_ / "counts.csv");
  std::string line;
  std::getline(in, line);
  std::vector<std::size_t> nh, nl;
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::string h, lam, a, b;
    std::getline(ls, h, ',');
    std::getline(ls, lam, ',');
    std::getline(ls, a, ',');
    std::getline(ls, b, ',');
    nh.push_back(std::stoul(a));
    nl.push_back(std::stoul(b));
  }
  ASSERT_EQ(nl.size(), 2u);
  EXPECT_GT(nh[0], 0u);
  EXPECT_LT(nl[1], nl[0]);
}

TEST_F(CliRun, ReconstructWritesPointFilesAndSummary) {
  ASSERT_EQ(run({"reconstruct", "--signal", "sech2", "--h", "0.1", "--lambda", "-0.5", "--gamma", "0.5,1", "--M",
                 "256", "--svg", "--out", dir_.string()}),
            0)
      << err_.str();
  EXPECT_EQ(data_rows(dir_ / "summary.csv"), 2u);
  const fs::path point = dir_ / "recon_h0.1_lambda-0.5_gamma0.5.csv";
  ASSERT_TRUE(fs::exists(point));
  EXPECT_EQ(data_rows(point), 256u);
  EXPECT_EQ(read(point).substr(0, 45), "x,y_true,y_rec,in_window,pointwise_rel_err\n0,");
  EXPECT_TRUE(fs::exists(dir_ / "recon_h0.1_lambda-0.5_gamma0.5.svg"));
  EXPECT_TRUE(fs::exists(dir_ / "recon_h0.1_lambda-0.5_gamma0.5_error.svg"));
}

TEST_F(CliRun, CsvInputHasNoTruthColumn) {
  write_signal_csv(dir_ / "in.csv", sech2_signal(Grid(0.0, 10.0, 128), 5.0));
  ASSERT_EQ(run({"reconstruct", "--input", (dir_ / "in.csv").string(), "--h", "0.2", "--out",
                 (dir_ / "o").string()}),
            0)
      << err_.str();
  const std::string text = read(dir_ / "o" / "recon_h0.2_lambda0_gamma0.5.csv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "x,y_rec,in_window");
}

TEST_F(CliRun, ExplicitWindowWraps) {
  ASSERT_EQ(run({"reconstruct", "--signal", "sech2", "--h", "0.2", "--M", "64", "--window", "60:4", "--out",
                 dir_.string()}),
            0)
      << err_.str();
  std::ifstream in(dir_ / "recon_h0.2_lambda0_gamma0.5.csv");
  std::string line;
  std::getline(in, line);
  std::size_t inside = 0;
  std::vector<std::size_t> flagged;
  for (std::size_t j = 0; std::getline(in, line); ++j) {
    std::stringstream ls(line);
    std::string c;
    for (int k = 0; k < 4; ++k) std::getline(ls, c, ',');
    if (c == "1") {
      ++inside;
      flagged.push_back(j);
    }
  }
  EXPECT_EQ(inside, 9u);
  EXPECT_EQ(flagged.front(), 0u);
  EXPECT_EQ(flagged.back(), 63u);
}

TEST_F(CliRun, ExitCodes) {
  EXPECT_EQ(run({"sweep", "--signal", "sech2", "--h", "0.1", "--out", dir_.string()}), kConfigError);
  EXPECT_NE(err_.str().find("need >=2 h values"), std::string::npos);
  EXPECT_EQ(run({"reconstruct", "--signal", "sech2", "--h", "0.1", "--M", "1023"}), kConfigError);
  EXPECT_EQ(run({"reconstruct", "--signal", "nosuch", "--h", "0.1"}), kConfigError);
  EXPECT_EQ(run({"reconstruct", "--input", (dir_ / "missing.csv").string(), "--h", "0.1"}), kDataError);
  EXPECT_EQ(run({"reconstruct", "--signal", "sech2", "--h", "0.1", "--window", "1:9999", "--out",
                 (dir_ / "w").string()}),
            kConfigError);
  EXPECT_FALSE(fs::exists(dir_ / "w"));
  EXPECT_EQ(run({"frobnicate"}), kConfigError);
  EXPECT_EQ(run({"reconstruct", "--config", (dir_ / "missing.json").string()}), kConfigError);
}

TEST_F(CliRun, SweepWithTwoHWarnsAndWritesEmptyFit) {
  ASSERT_EQ(run({"sweep", "--signal", "sech2", "--h", "0.2,0.1", "--M", "256", "--lambda", "-0.5", "--out",
                 dir_.string()}),
            0)
      << err_.str();
  EXPECT_NE(err_.str().find("needs >=3 h values"), std::string::npos);
  EXPECT_EQ(data_rows(dir_ / "convergence.csv"), 0u);
  EXPECT_EQ(data_rows(dir_ / "diagnostics.csv"), 2u);
}

TEST_F(CliRun, SweepIsDeterministicAcrossWorkerCounts) {
  const std::vector<std::string> base{"sweep",   "--signal", "sech2", "--h", "0.2,0.1,0.05", "--M", "256",
                                      "--lambda", "-0.5",    "--gamma", "0.5,1"};
  auto with = [&](const std::string& workers, const fs::path& out) {
    auto args = base;
    args.insert(args.end(), {"--workers", workers, "--out", out.string()});
    return run(args);
  };
  ASSERT_EQ(with("1", dir_ / "a"), 0) << err_.str();
  ASSERT_EQ(with("3", dir_ / "b"), 0) << err_.str();
  for (const char* name : {"summary.csv", "convergence.csv", "diagnostics.csv"}) {
    EXPECT_EQ(read(dir_ / "a" / name), read(dir_ / "b" / name)) << name;
  }
  EXPECT_EQ(data_rows(dir_ / "a" / "convergence.csv"), 2u);
}

TEST_F(CliRun, ConfigFileThenFlagsOverride) {
  const fs::path cfg = write("c.json", R"({"input":"sech2","h_list":[0.3],"M":128,"output_dir":")" +
                                           (dir_ / "fromjson").generic_string() + "\"}");
  ASSERT_EQ(run({"spectrum", "--config", cfg.string(), "--out", (dir_ / "fromflag").string()}), 0) << err_.str();
  EXPECT_TRUE(fs::exists(dir_ / "fromflag" / "spectrum.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "fromjson"));
}

TEST(Demo, UnknownPresetIsConfigError) {
  EXPECT_THROW(demo_config("nosuch", "x"), ConfigError);
  EXPECT_EQ(demo_config("beat", "x").input, "beat");
}
