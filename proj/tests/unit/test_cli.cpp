#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "qportrait/errors.hpp"
#include "qportrait/text_format.hpp"
#include "qportrait_cli/cli.hpp"
#include "qportrait_cli/state_file.hpp"

namespace fs = std::filesystem;
using namespace qp;
using oracle::Mat;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("qportrait_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const fs::path path = dir_ / name;
    std::ofstream(path, std::ios::binary) << text;
    return path.string();
  }
  std::string state(const std::string& name, const Mat& m, const std::optional<cli::LayoutSpec>& layout = {}) {
    return write(name, cli::write_state_file(m, layout));
  }
  static std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST(FormatReal, Examples) {
  EXPECT_EQ(format_real(0.5), "5.00000000000e-01");
  EXPECT_EQ(format_real(-1.0), "-1.00000000000e+00");
  EXPECT_EQ(format_real(1e-15), "0");
  EXPECT_EQ(format_real(-0.0), "0");
}

TEST(StateFileFormat, RoundTripAndLayout) {
  oracle::Random gen(1);
  const Mat m = gen.density(4);
  const auto text = cli::write_state_file(m, cli::parse_layout("2x2"));
  const auto back = cli::parse_state_file(text, "mem");
  EXPECT_LT(oracle::max_abs(back.matrix - m), 1e-11);
  ASSERT_TRUE(back.layout.has_value());
  EXPECT_EQ(cli::layout_string(*back.layout), "2x2");
  EXPECT_EQ(cli::parse_layout("p=3").dim(), 8);
}

TEST(StateFileFormat, Errors) {
  auto code_of = [](const std::string& text) {
    try {
      cli::parse_state_file(text, "s.json");
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InvalidArgument;
  };
  EXPECT_EQ(code_of("{"), Errc::ParseError);
  EXPECT_EQ(code_of(R"({"re": [[1]], "im": [[0]]})"), Errc::ParseError);
  EXPECT_EQ(code_of(R"({"dim": 2, "re": [[1, 0]], "im": [[0, 0], [0, 0]]})"), Errc::ParseError);
  EXPECT_EQ(code_of(R"({"dim": 2, "layout": "2x2", "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]})"),
            Errc::DimensionMismatch);
  EXPECT_EQ(code_of(R"({"dim": 2, "layout": "banana", "re": [[1, 0], [0, 0]], "im": [[0, 0], [0, 0]]})"),
            Errc::ParseError);
}

TEST_F(CliTest, PortraitOfBell) {
  const auto bell = state("bell.json", oracle::projector(oracle::bell()), cli::parse_layout("2x2"));
  const auto r = run({"portrait", "--state", bell, "--axes", "zz"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "# portrait roi=zz\n"
            "k=0 bits=00 p=5.00000000000e-01\n"
            "k=1 bits=10 p=0\n"
            "k=2 bits=01 p=0\n"
            "k=3 bits=11 p=5.00000000000e-01\n");
}

TEST_F(CliTest, PortraitSweep) {
  Mat q = Mat::Zero(2, 2);
  q(0, 0) = 0.8;
  q(1, 1) = 0.2;
  const auto r = run({"portrait", "--state", state("q.json", q), "--sweep", "2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, a, b, c;
  std::getline(lines, header);
  std::getline(lines, a);
  std::getline(lines, b);
  std::getline(lines, c);
  EXPECT_EQ(header, "# sweep theta p");
  EXPECT_EQ(a, "0 8.00000000000e-01");
  EXPECT_NE(b.find(" 5.00000000000e-01"), std::string::npos) << b;
  EXPECT_NE(c.find(" 2.00000000000e-01"), std::string::npos) << c;
}

TEST_F(CliTest, MeasureIsDeterministicAndWritesRecord) {
  const auto bell = state("bell.json", oracle::projector(oracle::bell()));
  const auto rec = (dir_ / "zz.rec").string();
  const auto first = run({"measure", "--state", bell, "--axes", "zz", "--shots", "1000", "--seed", "42", "--out", rec});
  ASSERT_EQ(first.code, cli::kExitOk) << first.err;
  const std::string record = slurp(rec);
  const auto second = run({"measure", "--state", bell, "--axes", "zz", "--shots", "1000", "--seed", "42", "--out", rec});
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(record, slurp(rec));
  EXPECT_EQ(record.rfind("# roi=zz shots=1000 seed=42\n", 0), 0u);
  EXPECT_NE(first.out.find("k=1 bits=10 count=0 nu=0"), std::string::npos) << first.out;
  const auto parallel = run({"measure", "--state", bell, "--axes", "zz", "--shots", "1000", "--seed", "42", "--workers", "4"});
  EXPECT_EQ(parallel.code, cli::kExitOk);
  EXPECT_EQ(parallel.out, run({"measure", "--state", bell, "--axes", "zz", "--shots", "1000", "--seed", "42", "--workers", "4"}).out);
}

TEST_F(CliTest, ReconstructFromRecordsMatchesSimulation) {
  const auto ghz = state("ghz.json", oracle::projector(oracle::ghz(2)));
  const auto records = (dir_ / "records").string();
  const auto sim = run({"reconstruct", "--state", ghz, "--shots", "2000", "--seed", "42", "--write-records", records});
  ASSERT_EQ(sim.code, cli::kExitOk) << sim.err;
  EXPECT_TRUE(fs::exists(fs::path(records) / "settings.txt"));
  EXPECT_TRUE(fs::exists(fs::path(records) / "xy.rec"));
  const auto again = run({"reconstruct", "--records", records});
  ASSERT_EQ(again.code, cli::kExitOk) << again.err;
  // Same coefficient block either way.
  auto block = [](const std::string& s) {
    const auto begin = s.find('\n') + 1;
    return s.substr(begin, s.find("psd_repaired") - begin);
  };
  EXPECT_EQ(block(sim.out), block(again.out));
  const auto exact = run({"reconstruct", "--state", ghz, "--exact", "--out", (dir_ / "est.json").string()});
  ASSERT_EQ(exact.code, cli::kExitOk) << exact.err;
  EXPECT_NE(exact.out.find("max_coefficient_error=0\n"), std::string::npos) << exact.out;
  const auto est = cli::read_state_file((dir_ / "est.json").string());
  EXPECT_LT(oracle::max_abs(est.matrix - oracle::projector(oracle::ghz(2))), 1e-11);
}

TEST_F(CliTest, CorruptRecordNamesFileAndLine) {
  const auto ghz = state("ghz.json", oracle::projector(oracle::ghz(1)));
  const auto records = (dir_ / "records").string();
  ASSERT_EQ(run({"reconstruct", "--state", ghz, "--shots", "5", "--seed", "1", "--write-records", records}).code, cli::kExitOk);
  write("records/y.rec", "# roi=y shots=3 seed=1\n0\n7x\n1\n");
  const auto r = run({"reconstruct", "--records", records});
  EXPECT_EQ(r.code, cli::kExitInvalid);
  EXPECT_NE(r.err.find("y.rec:3"), std::string::npos) << r.err;
  fs::remove(fs::path(records) / "x.rec");
  EXPECT_EQ(run({"reconstruct", "--records", records, "--layout", "p=1"}).code, cli::kExitInvalid);
}

TEST_F(CliTest, ClassifyStatesAndTransforms) {
  const auto bell = state("bell.json", oracle::projector(oracle::bell()));
  const auto v = run({"classify", "--state", bell});
  ASSERT_EQ(v.code, cli::kExitOk) << v.err;
  EXPECT_NE(v.out.find("class=TotalEntanglement\ncovariance_rank=3\n"), std::string::npos) << v.out;
  Mat cc = Mat::Zero(4, 4);
  cc(1, 1) = cc(2, 2) = 0.5;
  EXPECT_NE(run({"classify", "--state", state("cc.json", cc)}).out.find("covariance_rank=1"), std::string::npos);
  const Mat cnot = (Mat(4, 4) << 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0).finished();
  const auto t = run({"classify", "--unitary", state("cnot.json", cnot), "--layout", "2x2"});
  ASSERT_EQ(t.code, cli::kExitOk) << t.err;
  EXPECT_EQ(t.out.rfind("transform=Entangling\n", 0), 0u) << t.out;
  const auto id = run({"classify", "--unitary", state("id.json", Mat::Identity(8, 8)), "--layout", "p=3"});
  EXPECT_EQ(id.out.rfind("transform=Stabilizer\n", 0), 0u) << id.out;
  EXPECT_EQ(run({"classify", "--unitary", state("cnot2.json", cnot)}).code, cli::kExitInvalid);
}

TEST_F(CliTest, ReductionZToX) {
  const auto q = state("mixed.json", Mat::Identity(2, 2) / 2.0);
  const auto r = run({"reduction", "--state", q, "--roi-a", "z", "--roi-b", "x"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out,
            "# reduction from=z to=x\n"
            "measure=" + format_real(std::numbers::pi / std::sqrt(8.0)) + "\n"
            "nonzero_phases=2\n"
            "entropy=1.00000000000e+00\n");
}

TEST_F(CliTest, ExitCodes) {
  const auto bell = state("bell.json", oracle::projector(oracle::bell()));
  EXPECT_EQ(run({}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"dance"}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"measure", "--state", bell, "--axes", "zz", "--seed", "1"}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"measure", "--state", bell, "--axes", "zz", "--shots", "0", "--seed", "1"}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"portrait", "--state", (dir_ / "absent.json").string()}).code, cli::kExitInvalid);
  EXPECT_EQ(run({"portrait", "--state", bell, "--axes", "zzz"}).code, cli::kExitInvalid);
  const auto bad = write("bad.json", R"({"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]})");
  const auto r = run({"portrait", "--state", bad});
  EXPECT_EQ(r.code, cli::kExitInvalid);
  EXPECT_EQ(r.err.rfind("qportrait: ", 0), 0u);
  // Numerical failures map to their own exit code.
  EXPECT_FALSE(is_validation_error(Errc::ZeroProbabilityCondition));
  EXPECT_FALSE(is_validation_error(Errc::CoarseProjector));
  EXPECT_TRUE(is_validation_error(Errc::ParseError));
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}
