#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fpsi/config.hpp"
#include "fpsi/demo.hpp"
#include "fpsi/error.hpp"
#include "fpsi/output.hpp"
#include "fpsi/simulation.hpp"

namespace fs = std::filesystem;
using namespace fpsi;

namespace {

std::string config_error(std::string_view text) {
  try {
    parse_config_string(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config);
    return e.what();
  }
  ADD_FAILURE() << "config accepted: " << text;
  return {};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fpsi-test-" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string l; std::getline(ss, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Config, BenchmarkDefaultsAreUnitParameters) {
  const Config c = parse_config_string("kind = benchmark-case1\n");
  EXPECT_EQ(c.kind, ProblemKind::BenchmarkCase1);
  EXPECT_EQ(c.n, 4);
  for (double v : {c.params.rho_f, c.params.mu_f, c.params.rho_p, c.params.mu_p, c.params.lambda_p,
                   c.params.alpha, c.params.c0, c.params.K, c.params.gamma, c.params.L}) {
    EXPECT_EQ(v, 1.0);
  }
  EXPECT_DOUBLE_EQ(c.params.dt, 0.0125);
  EXPECT_DOUBLE_EQ(parse_config_string("kind = benchmark-case2\nn = 16\n").params.dt, 0.05 / 16);
}

TEST(Config, NegativeStorageNamesKeyAndLine) {
  const std::string msg = config_error("kind = benchmark-case1\n# comment\nC0 = -1\n");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("C0"), std::string::npos) << msg;
}

TEST(Config, DemoDerivesRobinParameter) {
  const Config c = parse_config_string("kind = nsbiot-demo\nK = 1e-3\n");
  EXPECT_DOUBLE_EQ(c.params.L, 1000.0);
  EXPECT_NEAR(c.params.gamma, 1.0 / std::sqrt(1e-3), 1e-12);
  EXPECT_DOUBLE_EQ(c.params.dt, 1e-3);
}

TEST(Config, Rejections) {
  EXPECT_NE(config_error("kind = benchmark-case1\nfoo = 1\n").find("foo"), std::string::npos);
  EXPECT_NE(config_error("kind = benchmark-case1\nn = 4\nn = 8\n").find("line 3"), std::string::npos);
  EXPECT_NE(config_error("n = 4\n").find("kind"), std::string::npos);
  EXPECT_NE(config_error("kind = benchmark-case3\n").find("kind"), std::string::npos);
  EXPECT_NE(config_error("kind = benchmark-case1\nn = four\n").find("n"), std::string::npos);
  EXPECT_NE(config_error("kind = benchmark-case1\ndt = 0.3\nT = 1\n").find("T"), std::string::npos);
  EXPECT_NE(config_error("kind = nsbiot-demo\nobstacle-a = 1.55, 2.0, 0.0, 0.4\n").find("obstacle-a"),
            std::string::npos);
}

TEST(Config, UnreadableFile) {
  try {
    parse_config("/nonexistent/fpsi.cfg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Io);
  }
}

TEST(Config, RoundTrip) {
  for (ProblemKind k : {ProblemKind::BenchmarkCase1, ProblemKind::BenchmarkCase2,
                        ProblemKind::StokesBiotCustom, ProblemKind::NsBiotDemo}) {
    Config c = default_config(k);
    c.params.mu_f = 0.1 + 1e-17 * 3;
    c.params.K = 1.0 / 3.0;
    c.params.L = 3.0;
    c.discretization.corners = CornerPolicy::DirichletPrecedence;
    c.sequential = true;
    c.output_dir = "some dir/out";
    EXPECT_EQ(parse_config_string(serialize(c)), c) << to_string(k);
  }
}

TEST(ConvergenceCsv, FormatsRowsAndRates) {
  ConvergenceTable t;
  t.rows = {{4, {1.34e-2, 1, 1, 1, 1}}, {8, {6.84e-3, 0.5, 0.25, 1, 2}}};
  const auto ls = lines(format_convergence_csv(t));
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], kConvergenceHeader);
  EXPECT_EQ(ls[1], "4,1.34E-02,,1.00E+00,,1.00E+00,,1.00E+00,,1.00E+00,");
  EXPECT_EQ(ls[2].substr(0, ls[2].find(',', 13)), "8,6.84E-03,0.97");
  EXPECT_NE(ls[2].find(",6.84E-03,0.97,5.00E-01,1.00,2.50E-01,2.00,1.00E+00,0.00,2.00E+00,-1.00"),
            std::string::npos)
      << ls[2];
}

TEST(ConvergenceCsv, SingleAndEmptyTables) {
  ConvergenceTable t;
  EXPECT_EQ(lines(format_convergence_csv(t)).size(), 1u);
  t.rows = {{4, {1, 2, 3, 4, 5}}};
  const auto ls = lines(format_convergence_csv(t));
  ASSERT_EQ(ls.size(), 2u);
  EXPECT_EQ(std::count(ls[1].begin(), ls[1].end(), ','), 10);
}

TEST(ConvergenceCsv, ValuesParseBack) {
  ConvergenceTable t;
  t.rows = {{4, {0.1234, 0.5, 0.6, 0.7, 0.8}}, {8, {0.06, 0.25, 0.3, 0.35, 0.4}}};
  const auto ls = lines(format_convergence_csv(t));
  std::stringstream ss(ls[2]);
  std::vector<std::string> cells;
  for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
  ASSERT_EQ(cells.size(), 11u);
  EXPECT_EQ(std::stoi(cells[0]), 8);
  EXPECT_NEAR(std::stod(cells[1]), 0.06, 5e-5);
  EXPECT_NEAR(std::stod(cells[4]), 1.0, 5e-3);
}

TEST(EnergyCsv, HeaderAndRows) {
  EnergyReport r;
  r.step = 2;
  r.time = 0.5;
  r.E = 1.5;
  const auto ls = lines(format_energy_csv({r, r}));
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], kEnergyHeader);
  EXPECT_EQ(ls[1].substr(0, 2), "2,");
}

TEST(Vtk, SingleSquare) {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 1, 1);
  const std::string text =
      format_vtk(m, {{"pressure", 1, {0, 0, 0, 0}}, {"velocity", 3, std::vector<double>(12, 0.0)}}, "unit");
  const auto ls = lines(text);
  EXPECT_EQ(ls[0], "# vtk DataFile Version 2.0");
  EXPECT_NE(text.find("POINTS 4 double"), std::string::npos);
  EXPECT_NE(text.find("CELLS 2 8"), std::string::npos);
  EXPECT_NE(text.find("CELL_TYPES 2\n5\n5\n"), std::string::npos);
  EXPECT_NE(text.find("POINT_DATA 4"), std::string::npos);
  EXPECT_NE(text.find("SCALARS pressure double 1"), std::string::npos);
  EXPECT_NE(text.find("VECTORS velocity double"), std::string::npos);
}

TEST(Vtk, WrongDataLength) {
  const Mesh m = build_rect_mesh({0, 1, 0, 1}, 1, 1);
  EXPECT_THROW(format_vtk(m, {{"p", 1, {0, 0, 0}}}, "bad"), Error);
}

TEST(AtomicWrite, CreatesDirectoriesAndReplaces) {
  const fs::path dir = scratch("atomic");
  const fs::path p = dir / "a" / "b.txt";
  write_file_atomic(p, "one");
  write_file_atomic(p, "two");
  EXPECT_EQ(slurp(p), "two");
  size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir / "a")) ++entries;
  EXPECT_EQ(entries, 1u);
  fs::remove_all(dir);
}

TEST(Channel, MeshesAreValidAndMatch) {
  const ChannelGeometry g;
  const auto [fluid, solid] = channel_meshes(g);
  EXPECT_GT(fluid.min_area(), 0.0);
  EXPECT_GT(solid.min_area(), 0.0);
  const double obstacles = 0.5 * 0.4 + 0.5 * 0.4;
  EXPECT_NEAR(solid.total_area(), obstacles, 1e-12);
  EXPECT_NEAR(fluid.total_area(), g.length * g.height - obstacles, 1e-10);
  const InterfacePairing p = extract_interface(fluid, solid);
  EXPECT_EQ(p.fluid.chains.size(), 2u);
  EXPECT_EQ(p.solid.chains.size(), 2u);
  EXPECT_FALSE(p.matching);
}

TEST(Simulation, ZeroTimeWritesInitialSnapshot) {
  Config c = default_config(ProblemKind::BenchmarkCase1);
  c.params.T = 0.0;
  c.snapshot_every = 5;
  c.output_dir = scratch("zero-time").string();
  const SimulationResult r = run_simulation(c);
  EXPECT_TRUE(r.completed);
  EXPECT_EQ(r.steps, 0);
  ASSERT_EQ(r.energy.size(), 1u);
  size_t vtk = 0;
  for (const auto& f : r.files) vtk += f.extension() == ".vtk";
  EXPECT_EQ(vtk, 2u);
  EXPECT_TRUE(fs::exists(fs::path(c.output_dir) / "energy.csv"));
  fs::remove_all(c.output_dir);
}

TEST(Simulation, AbortedRunIsMarkedPartial) {
  Config c = default_config(ProblemKind::StokesBiotCustom);
  c.n = 2;
  c.params.dt = 0.25;
  c.params.T = 1.0;
  c.output_dir = scratch("abort").string();
  SimulationHooks hooks;
  hooks.on_step = [](const CoupledState& s, const EnergyReport&) {
    if (s.step() == 2) throw Error(ErrorKind::Evaluation, "injected failure");
  };
  const SimulationResult r = run_simulation(c, hooks);
  EXPECT_FALSE(r.completed);
  EXPECT_NE(r.failure.find("injected failure"), std::string::npos) << r.failure;
  EXPECT_TRUE(fs::exists(fs::path(c.output_dir) / "energy.partial.csv"));
  EXPECT_TRUE(fs::exists(fs::path(c.output_dir) / "ABORTED.txt"));
  EXPECT_FALSE(fs::exists(fs::path(c.output_dir) / "energy.csv"));
  fs::remove_all(c.output_dir);
}

TEST(Simulation, ResourceGuardBeforeCompute) {
  Config c = default_config(ProblemKind::BenchmarkCase1);
  c.n = 128;
  c.params.dt = 0.05 / 128;
  try {
    run_simulation(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ResourceGuard);
  }
}

TEST(Simulation, StabilityRunStaysBounded) {
  Config c = default_config(ProblemKind::StokesBiotCustom);
  c.n = 4;
  c.params.dt = 0.1;
  c.params.T = 1.0;
  const SweepRun r = stability_run(c);
  EXPECT_TRUE(r.finite);
  EXPECT_TRUE(r.monotone);
  EXPECT_TRUE(r.passed());
  EXPECT_LE(r.max_E, r.initial_total * (1 + 1e-12));
}
