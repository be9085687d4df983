#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dotcavity/config.hpp"
#include "dotcavity/table.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dotcavity_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  // Runs the binary inside the scratch directory; stdout/stderr land in files.
  int run(const std::string& args, const std::string& env = "") {
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" DOTCAVITY_CLI_PATH "' " +
                            args + " > stdout.txt 2> stderr.txt";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name) << text;
  }
  static std::string strip_timestamp(const std::string& text) {
    std::istringstream in(text);
    std::string line, out;
    while (std::getline(in, line)) {
      if (line.rfind("# timestamp:", 0) == 0) continue;
      out += line + '\n';
    }
    return out;
  }

  fs::path dir_;
};

const char* kRaman =
    "experiment = raman\ntunnel = 25 GHz\ng0 = 870 MHz\nesr_beta = 1 GHz\n"
    "spin_splitting = 0.5 GHz\ngamma_c = 1 ns\ngamma_s = 1 us\nkappa = 1 us\ngamma_d = 1 us\n";

}  // namespace

TEST_F(Cli, PresetWritesCsvAndPlot) {
  ASSERT_EQ(run("preset fig3b --out fig3b.csv --plot"), 0) << read("stderr.txt");
  const std::string csv = read("fig3b.csv");
  EXPECT_NE(csv.find("# timestamp: "), std::string::npos);
  EXPECT_NE(csv.find("pump,n_photons"), std::string::npos);
  EXPECT_NE(csv.find("\nGHz,-,"), std::string::npos);
  EXPECT_NE(read("fig3b.svg").find("</svg>"), std::string::npos);
}

TEST_F(Cli, PresetJsonOutput) {
  ASSERT_EQ(run("preset raman-example --out r.json"), 0) << read("stderr.txt");
  const auto j = nlohmann::json::parse(read("r.json"));
  EXPECT_EQ(j["metadata"]["experiment"], "raman");
  EXPECT_EQ(j["rows"].size(), 1u);
}

TEST_F(Cli, PresetToStdout) {
  ASSERT_EQ(run("preset quasimode-ratio"), 0);
  EXPECT_NE(read("stdout.txt").find("quality,ratio"), std::string::npos);
}

TEST_F(Cli, AllPresetsRun) {
  for (const char* name : {"fig3a", "fig3b", "raman-example", "quasimode-ratio"}) {
    EXPECT_EQ(run(std::string("preset ") + name + " --out o.csv --plot"), 0)
        << name << ": " << read("stderr.txt");
  }
}

TEST_F(Cli, UnknownPresetIsUsageError) {
  EXPECT_EQ(run("preset fig9"), 2);
  EXPECT_NE(read("stderr.txt").find("fig3a"), std::string::npos);
}

TEST_F(Cli, BadArgumentsExitTwo) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, ValidateEchoesCanonicalConfig) {
  write("r.cfg", kRaman);
  ASSERT_EQ(run("validate r.cfg"), 0);
  const std::string echo = read("stdout.txt");
  EXPECT_EQ(dotcavity::parse_config(echo), dotcavity::parse_config(kRaman));
}

TEST_F(Cli, SchemaViolationExitsTwoWithLine) {
  write("bad.cfg", std::string(kRaman) + "colour = blue\n");
  EXPECT_EQ(run("validate bad.cfg"), 2);
  EXPECT_NE(read("stderr.txt").find("line 10"), std::string::npos) << read("stderr.txt");
  EXPECT_EQ(run("run bad.cfg"), 2);
  EXPECT_EQ(run("run missing.cfg"), 2);
}

TEST_F(Cli, PhysicallyInvalidExitsTwo) {
  std::string text = kRaman;
  text.replace(text.find("gamma_d = 1 us"), 14, "gamma_d = 1 ns");
  write("bad.cfg", text);
  EXPECT_EQ(run("run bad.cfg"), 2);
}

TEST_F(Cli, SolverFailureExitsThree) {
  write("q.cfg",
        "experiment = maser-dynamics\ntunnel = 10 GHz\nbias = 20 GHz\ng0 = 100 MHz\n"
        "relaxation = 10 ns\ndephasing = 1 ns\nphoton_loss = 1 us\npump = 5 GHz\n"
        "t_end = 1 us\nsample_interval = 0.1 us\ninitial_alpha = 1e150\n");
  EXPECT_EQ(run("run q.cfg"), 3);
  EXPECT_NE(read("stderr.txt").find("solver error"), std::string::npos);
}

TEST_F(Cli, RunWithOutputBlock) {
  write("r.cfg", std::string(kRaman) + "output.path = r.csv\noutput.plot = svg\n");
  ASSERT_EQ(run("run r.cfg"), 0) << read("stderr.txt");
  EXPECT_TRUE(fs::exists(dir_ / "r.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "r.svg"));
}

TEST_F(Cli, PlotWithoutPathRejected) {
  write("r.cfg", std::string(kRaman) + "output.plot = svg\n");
  EXPECT_EQ(run("run r.cfg"), 2);
}

TEST_F(Cli, DeterministicApartFromTimestamp) {
  // Same output name both times: the path is part of the config echo.
  ASSERT_EQ(run("preset fig3a --out a.csv"), 0);
  const std::string first = read("a.csv");
  ASSERT_EQ(run("preset fig3a --out a.csv", "DOTCAVITY_WORKERS=1"), 0);
  EXPECT_EQ(strip_timestamp(first), strip_timestamp(read("a.csv")));
}

TEST_F(Cli, EchoedConfigReproducesRun) {
  ASSERT_EQ(run("preset fig3b --out a.csv"), 0);
  std::ifstream in(dir_ / "a.csv");
  const dotcavity::ResultTable a = dotcavity::read_csv(in);
  std::string echo;
  for (const auto& [k, v] : a.metadata) {
    if (k == "config") echo = v;
  }
  ASSERT_NE(echo.find("output.path = a.csv"), std::string::npos);
  echo.replace(echo.find("output.path = a.csv"), 19, "output.path = b.csv");
  write("echo.cfg", echo);
  ASSERT_EQ(run("run echo.cfg"), 0) << read("stderr.txt");
  std::ifstream in_b(dir_ / "b.csv");
  const dotcavity::ResultTable b = dotcavity::read_csv(in_b);
  EXPECT_EQ(a.rows, b.rows);
  ASSERT_EQ(a.columns.size(), b.columns.size());
  for (std::size_t i = 0; i < a.columns.size(); ++i) EXPECT_EQ(a.columns[i].name, b.columns[i].name);
}

TEST_F(Cli, BadWorkerCountRejected) {
  EXPECT_EQ(run("preset fig3b", "DOTCAVITY_WORKERS=abc"), 2);
}
