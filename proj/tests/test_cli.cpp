#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "support.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string tmp(const std::string& name) { return std::string(QTST_TEST_TMP) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run qtst_run(const std::string& args) {
  static int counter = 0;
  const std::string stem = tmp("cli_" + std::to_string(counter++));
  const std::string cmd = std::string(QTST_CLI_PATH) + " " + args + " >" + stem + ".out 2>" + stem + ".err";
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(stem + ".out");
  r.err = slurp(stem + ".err");
  return r;
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST(Cli, KiePredictMonotone) {
  const auto r = qtst_run("kie predict --omega0 3000 --omegab 1000 --pair H:D --tmin 275 --tmax 325");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.front(), (std::vector<std::string>{"T_K", "kie", "T0_light_K", "valid"}));
  ASSERT_EQ(rows.size(), 12u);
  double prev = 1e300;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double k = std::stod(rows[i][1]);
    EXPECT_LT(k, prev);
    prev = k;
  }
}

TEST(Cli, KiePredictSamePair) {
  const auto r = qtst_run("kie predict --pair H:H --tmin 280 --tmax 300 --tstep 10");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(rows[i][1], "1");
}

TEST(Cli, KiePredictBelowCrossoverFlagged) {
  const auto r = qtst_run("kie predict --tmin 200 --tmax 240 --tstep 20");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  const auto rows = csv_rows(r.out);
  EXPECT_EQ(rows[1][1], "");
  EXPECT_EQ(rows[1][3], "false");
  EXPECT_EQ(rows[3][3], "true");
}

TEST(Cli, JsonOutput) {
  const auto r = qtst_run("kie predict --tmin 300 --tmax 300 --format json");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("schema"), "qtst/1");
  EXPECT_EQ(j.at("command"), "kie predict");
  EXPECT_NEAR(j.at("rows").at(0).at("kie").get<double>(), 17.047042665710686, 1e-9);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(qtst_run("").code, 2);
  EXPECT_EQ(qtst_run("kie predict --nope 1").code, 2);
  EXPECT_EQ(qtst_run("kie predict --pair X:Y").code, 2);
  EXPECT_EQ(qtst_run("kie predict --tmin abc").code, 2);
  EXPECT_EQ(qtst_run("kie predict --pair T:H").code, 3);
  EXPECT_EQ(qtst_run("wkb --barrier -1").code, 3);
  EXPECT_EQ(qtst_run("kie predict --help").code, 0);
  std::ofstream(tmp("empty.csv")).close();
  EXPECT_EQ(qtst_run("fit --data " + tmp("empty.csv")).code, 2);
  std::ofstream(tmp("cold.csv")) << "T_K,kie\n5,10\n6,9\n7,8\n";
  const auto cold = qtst_run("fit --data " + tmp("cold.csv"));
  EXPECT_EQ(cold.code, 4);
  EXPECT_NE(cold.err.find("fit failed"), std::string::npos);
}

TEST(Cli, ConfigRoundTrip) {
  const auto dump = qtst_run("rate --tmin 260 --tmax 300 --friction drude:500,200 --dump-config");
  ASSERT_EQ(dump.code, 0);
  std::ofstream(tmp("rate.json")) << dump.out;
  const auto a = qtst_run("rate --config " + tmp("rate.json"));
  const auto b = qtst_run("rate --tmin 260 --tmax 300 --friction drude:500,200");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  // Re-dumping the loaded config reproduces it.
  EXPECT_EQ(qtst_run("rate --config " + tmp("rate.json") + " --dump-config").out, dump.out);
  // Flags win over the file.
  const auto c = qtst_run("rate --config " + tmp("rate.json") + " --tmax 260");
  EXPECT_EQ(csv_rows(c.out).size(), 2u);
  std::ofstream(tmp("bad.json")) << R"({"tmin": 260, "bogus": 1})";
  EXPECT_EQ(qtst_run("rate --config " + tmp("bad.json")).code, 2);
  std::ofstream(tmp("broken.json")) << "{";
  EXPECT_EQ(qtst_run("rate --config " + tmp("broken.json")).code, 2);
  EXPECT_EQ(qtst_run("rate --config " + tmp("nonexistent.json")).code, 2);
}

TEST(Cli, DeterministicOutput) {
  const std::string args = "correction --points 7 --friction drude:300,150";
  EXPECT_EQ(qtst_run(args).out, qtst_run(args).out);
}

TEST(Cli, FitWritesResultAndCurve) {
  const std::string out = tmp("fit_mao.json");
  std::remove(tmp("fit_mao_curve.csv").c_str());
  const auto r = qtst_run("fit --data " QTST_DATA_DIR "/fig4_mao.csv --format json --output " + out);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(slurp(out));
  const double w0 = j.at("rows").at(0).at("omega0_cm1").get<double>();
  EXPECT_GE(w0, 1900.0);
  EXPECT_LE(w0, 2300.0);
  EXPECT_TRUE(j.at("summary").contains("covariance"));
  const auto curve = csv_rows(slurp(tmp("fit_mao_curve.csv")));
  EXPECT_EQ(curve.front(), (std::vector<std::string>{"T_K", "kie_model"}));
  EXPECT_EQ(curve.size(), 102u);
}

TEST(Cli, CrossoverSweep) {
  const auto r = qtst_run("crossover --omega-D 30,30000 --points 11");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 23u);
  EXPECT_NEAR(std::stod(rows[1][3]), 228.988452061, 1e-6);
  // Fast bath: strictly decreasing; slow bath: within 10% of the start.
  for (std::size_t i = 13; i < rows.size(); ++i) EXPECT_LT(std::stod(rows[i][3]), std::stod(rows[i - 1][3]));
  EXPECT_GT(std::stod(rows[11][3]) / std::stod(rows[1][3]), 0.9);
}

TEST(Cli, ClassifyTable1) {
  const auto r = qtst_run("classify --dataset table1 --row Methylmalonyl");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][5], "true");
  EXPECT_EQ(rows[1][6], "true");
  EXPECT_EQ(rows[1][7], "true");
  EXPECT_EQ(qtst_run("classify --dataset table1 --row NoSuchEnzyme").code, 2);
  EXPECT_EQ(qtst_run("classify --kie 5").code, 2);
  const auto user = qtst_run("classify --kie 5 --A-ratio 1 --dE 2");
  EXPECT_EQ(csv_rows(user.out)[1][10], "false");
}

TEST(Cli, OtherCommands) {
  EXPECT_EQ(qtst_run("kie arrhenius --pair D:T").code, 0);
  EXPECT_EQ(qtst_run("spectral --friction peaked:40,10,100 --points 5").code, 0);
  EXPECT_EQ(qtst_run("spectral --dipole-change 5 --reorganisation-energy 1000").code, 0);
  EXPECT_EQ(qtst_run("spectral --friction ohmic:1 --points 3 --wmin 1").code, 0);
  EXPECT_EQ(qtst_run("wkb --potential eckart --points 3").code, 0);
  EXPECT_EQ(qtst_run("wkb --potential tabulated").code, 2);
  EXPECT_EQ(qtst_run("rate --friction wobbly:1").code, 2);
  EXPECT_EQ(qtst_run("rate --friction drude:1").code, 2);
  const auto ss = qtst_run("swain-schaad --semiclassical");
  EXPECT_NE(ss.out.find("3.25725"), std::string::npos);
  EXPECT_EQ(qtst_run("swain-schaad --kH 7 --kD 3").code, 2);
  std::ofstream(tmp("rates.csv")) << "T_K,k\n300,2\n350,5\n";
  EXPECT_EQ(qtst_run("arrhenius --data " + tmp("rates.csv")).code, 0);
}

TEST(Cli, GnuplotScript) {
  const auto r = qtst_run("wkb --points 5 --output " + tmp("wkb.csv") + " --gnuplot " + tmp("wkb.gp"));
  ASSERT_EQ(r.code, 0) << r.err;
  const auto gp = slurp(tmp("wkb.gp"));
  EXPECT_NE(gp.find(tmp("wkb.csv")), std::string::npos);
  EXPECT_NE(gp.find("logscale y"), std::string::npos);
  EXPECT_EQ(qtst_run("wkb --gnuplot " + tmp("x.gp")).code, 2);
}

TEST(Cli, HelpShowsUnits) {
  const auto r = qtst_run("rate --help");
  EXPECT_NE(r.out.find("[cm^-1]"), std::string::npos);
  EXPECT_NE(r.out.find("[K]"), std::string::npos);
  EXPECT_NE(r.out.find("[kJ/mol]"), std::string::npos);
}
