#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "gammalab/config.hpp"
#include "gammalab/io.hpp"
#include "gammalab/rng.hpp"

using namespace gammalab;

TEST_CASE("format_double round trips") {
  for (double x : {1.0, -0.1, 3.141592653589793, 1e-300, 7.0 / 3.0}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("step function round trip") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 5);
  const SpaceModel x = SpaceModel::lq(3, 4.0);
  const StepFunction f = random_step(g, x, 2, 42);
  std::stringstream ss;
  write_step(ss, f);
  const std::string text = ss.str();
  CHECK(text.rfind("# gamma-step v1; dim=3", 0) == 0);
  CHECK(text.find("weight=dt") != std::string::npos);
  CHECK(text.find("\r") == std::string::npos);
  std::stringstream in(text);
  const StepFunction back = read_step(in);
  CHECK(back.dim() == 3);
  CHECK(back.noise_dim() == 2);
  CHECK(back.target().exponent == 4.0);
  REQUIRE(back.grid().same_knots(f.grid()));
  for (int i = 0; i < g.intervals(); ++i)
    CHECK((back.value(i) - f.value(i)).norm() == 0.0);
}

TEST_CASE("complex step values survive") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 2);
  const SpaceModel x = SpaceModel::hilbert(1);
  std::vector<CMatrix> vals(2);
  vals[0] = CMatrix::Constant(1, 1, Complex(1.5, -0.25));
  vals[1] = CMatrix::Constant(1, 1, Complex(0.0, 2.0));
  const StepFunction f(g, x, vals);
  std::stringstream ss;
  write_step(ss, f);
  std::stringstream in(ss.str());
  const StepFunction back = read_step(in);
  CHECK(back.value(0)(0, 0) == Complex(1.5, -0.25));
  CHECK(back.value(1)(0, 0) == Complex(0.0, 2.0));
}

TEST_CASE("operator round trip") {
  Matrix m(2, 2);
  m << 2.0, 0.5, 0.0, 3.0;
  const SectorialOp a(m);
  std::stringstream ss;
  write_op(ss, a);
  CHECK(ss.str().rfind("# sect-op v1; dim=2", 0) == 0);
  std::stringstream in(ss.str());
  const SectorialOp back = read_op(in);
  CHECK((back.matrix() - a.matrix()).norm() == 0.0);
}

TEST_CASE("ensemble round trip") {
  const TimeGrid g = TimeGrid::uniform(0.0, 1.0, 3);
  PathEnsemble e(g, 2, 2);
  for (int w = 0; w < 2; ++w)
    for (int j = 0; j <= 3; ++j) {
      e.at(w, j)[0] = w + 0.125 * j;
      e.at(w, j)[1] = -1.0 * j;
    }
  std::stringstream ss;
  write_ensemble(ss, e);
  CHECK(ss.str().rfind("# ensemble v1; samples=2; dim=2; m=3", 0) == 0);
  std::stringstream in(ss.str());
  const PathEnsemble back = read_ensemble(in);
  for (int w = 0; w < 2; ++w)
    for (int j = 0; j <= 3; ++j)
      CHECK((back.at(w, j) - e.at(w, j)).norm() == 0.0);
}

TEST_CASE("malformed inputs raise IoError") {
  std::stringstream bad1("# wrong-tag v1; dim=2\n");
  CHECK_THROWS_AS(read_step(bad1), IoError);
  std::stringstream bad2("# gamma-step v1; dim=2; q=2; weight=dt\n0 1 1.0\n");
  CHECK_THROWS_AS(read_step(bad2), IoError);
  std::stringstream bad3("# sect-op v1; dim=2\n1 0\n");
  CHECK_THROWS_AS(read_op(bad3), IoError);
}

TEST_CASE("csv layout") {
  ResultRow r;
  r.op = "demo";
  r.dim = 3;
  r.q = 2.0;
  r.theta = 0.5;
  r.seed = 9;
  r.value = 1.0 / 3.0;
  r.bound = 0.5;
  r.margin = 0.5 - 1.0 / 3.0;
  std::stringstream ss;
  write_csv(ss, {r});
  const std::string text = ss.str();
  CHECK(text.rfind("op,dim,q,theta,seed,value,bound,margin\n", 0) == 0);
  CHECK(text.find("demo,3,2,0.5,9,0.33333333333333331,") != std::string::npos);
  CHECK(text.find("\r") == std::string::npos);
}

TEST_CASE("config parsing") {
  const Config c = Config::parse(
      "top = 1\n[run]\nseed = 42\nlist = 1, 2.5, -3\n# comment\nname = ab\n");
  CHECK(c.has("top"));
  CHECK(c.get("run.seed", static_cast<std::uint64_t>(0)) == 42);
  CHECK(c.get("run.name", std::string()) == "ab");
  CHECK(c.get("run.missing", 7.5) == 7.5);
  const auto l = c.get_list("run.list", {});
  REQUIRE(l.size() == 3);
  CHECK(l[1] == 2.5);
}

TEST_CASE("config errors carry line numbers") {
  try {
    Config::parse("a = 1\nbroken line\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(Config::parse("[unterminated\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("a = 1\na = 2\n"), ConfigError);
  const Config c = Config::parse("x = notanumber\n");
  CHECK_THROWS_AS(c.get("x", 1.0), ConfigError);
}

TEST_CASE("config hash is canonical") {
  const Config a = Config::parse("[s]\nk = 1\nj = 2\n");
  const Config b = Config::parse("[s]\nj = 2\nk = 1\n");
  CHECK(a.hash() == b.hash());
  const Config c = Config::parse("[s]\nj = 2\nk = 3\n");
  CHECK(a.hash() != c.hash());
  CHECK(a.hash().size() == 16);
}
