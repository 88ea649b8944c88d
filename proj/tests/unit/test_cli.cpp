#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dsc/cli.hpp"
#include "dsc/table.hpp"

using dsc::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(dsc::format_number(0.5) == "0.5");
  CHECK(dsc::format_number(-3.0) == "-3");
  CHECK(dsc::format_number(0.1) == "0.10000000000000001");
  CHECK(dsc::format_number(1e-20) == "9.9999999999999995e-21");
  CHECK(dsc::format_number(std::nan("")) == "nan");
  CHECK(std::stod(dsc::format_number(M_PI)) == M_PI);
}

TEST_CASE("csv quoting and json records") {
  dsc::OutputTable t({"a,b", "say \"hi\"", "v"});
  t.add_row({1.0, std::string("x,y"), std::nan("")});
  std::ostringstream c, j;
  t.write_csv(c);
  CHECK(c.str() == "\"a,b\",\"say \"\"hi\"\"\",v\n1,\"x,y\",nan\n");
  t.write_json(j);
  const auto parsed = nlohmann::json::parse(j.str());
  REQUIRE(parsed.is_array());
  CHECK(parsed[0]["a,b"] == 1);
  CHECK(parsed[0]["say \"hi\""] == "x,y");
  CHECK(parsed[0]["v"].is_null());
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("kernel dump") {
  const auto r = call({"kernel", "dump", "--family", "shannon", "--delta", "1", "--sigma", "3.2",
                       "--order", "1", "--half-bandwidth", "4"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 10);
  CHECK(rows[0] == std::vector<std::string>{"j", "offset", "weight"});
  CHECK(rows[5][0] == "0");
  CHECK(rows[5][2] == "0");

  const auto cd = call({"kernel", "dump", "--delta", "2", "--half-bandwidth", "1", "--order", "1",
                        "--sigma", dsc::format_number(2.0 / std::sqrt(2.0 * std::log(2.0)))});
  const auto rc = csv(cd.out);
  REQUIRE(rc.size() == 4);
  CHECK(std::abs(std::stod(rc[1][2]) - 0.25) <= 1e-15);
  CHECK(rc[2][2] == "0");
  CHECK(std::abs(std::stod(rc[3][2]) + 0.25) <= 1e-15);

  for (std::string f : {"shannon", "dirichlet", "modified-dirichlet", "lagrange", "poussin"}) {
    const auto u = csv(call({"kernel", "--family", f, "--order", "0", "--half-bandwidth", "3"}).out);
    REQUIRE(u.size() == 8);
    for (std::size_t i = 1; i < u.size(); ++i) CHECK(u[i][2] == (u[i][0] == "0" ? "1" : "0"));
  }
}

TEST_CASE("kernel eval and matrix") {
  const auto e = csv(call({"kernel", "eval", "--from", "0", "--to", "1", "--points", "3"}).out);
  REQUIRE(e.size() == 4);
  CHECK(e[1][1] == "1");
  const auto m = call({"kernel", "matrix", "--nodes", "6", "--order", "2", "--half-bandwidth", "2",
                       "--boundary", "simply-supported", "--format", "json"});
  REQUIRE(m.code == 0);
  const auto j = nlohmann::json::parse(m.out);
  CHECK(j.size() > 6u);
  CHECK(j[0].contains("coeff"));
}

TEST_CASE("zoo") {
  const auto g = csv(call({"zoo", "--kind", "gauss", "--schedule", "0.5,0.1,0.02"}).out);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == std::vector<std::string>{"param", "integral", "abs_error", "min_value", "mass"});
  CHECK(std::stod(g[1][2]) > std::stod(g[2][2]));
  CHECK(std::stod(g[2][2]) > std::stod(g[3][2]));
  const auto im = csv(call({"zoo", "--kind", "impulse", "--test-fn", "one", "--schedule", "10,100"}).out);
  for (std::size_t i = 1; i < im.size(); ++i) CHECK(std::stod(im[i][2]) == 0.0);
  const auto d = csv(call({"zoo", "--kind", "dirichlet", "--schedule", "6"}).out);
  CHECK(std::stod(d[1][3]) < 0.0);
  CHECK(call({"zoo", "--kind", "poisson", "--schedule", "1.5"}).code == 1);
}

TEST_CASE("waveguide") {
  const auto r = call({"waveguide", "--n", "24", "--m", "24", "--sigma-over-delta", "3.2", "--modes", "10"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 11);
  CHECK(rows[0][1] == "eigenvalue[1/m^2]");
  CHECK(std::abs(std::stod(rows[1][1]) - 0.02) <= 1e-8);
}

TEST_CASE("poisson") {
  const auto r = call({"poisson", "--laplace-only"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 1 + 32 * 32 + 1);
  CHECK(rows[0] == std::vector<std::string>{"x[m]", "y[m]", "potential[V]", "is_probe"});
  CHECK(rows.back()[3] == "1");
  CHECK(std::abs(std::stod(rows.back()[2]) - 2.5) <= 1e-3);
  CHECK(call({"poisson", "--laplace-only", "--patch", "0.1,0.2,0.1,0.2,1e-7,1"}).code == 1);
}

TEST_CASE("wave") {
  const auto r = call({"wave", "--n", "24", "--m", "24", "--t-end", "10", "--report-every", "1"});
  REQUIRE(r.code == 0);
  const auto rows = csv(r.out);
  REQUIRE(rows.size() == 12);
  CHECK(rows[1][0] == "0");
  CHECK(rows[1][1] == "0");
  const auto d = call({"wave", "--dims", "1", "--n", "8", "--dt", "5", "--t-end", "100", "--report-every", "50"});
  CHECK(d.code == 4);
  CHECK(d.err.find("diverged") != std::string::npos);
}

TEST_CASE("exit codes and usage") {
  CHECK(call({}).code == 1);
  CHECK(call({"bogus"}).code == 1);
  CHECK(call({"kernel", "--order", "7"}).code == 1);
  CHECK(call({"kernel", "--format", "xml"}).code == 1);
  CHECK(call({"waveguide", "--shape", "l"}).code == 1);
  CHECK(call({"kernel", "--help"}).code == 0);
}

TEST_CASE("geometry exit code") {
  // The E's arms are too thin to hold a node on this grid.
  const auto r = call({"waveguide", "--shape", "e", "--n", "4", "--modes", "1"});
  CHECK(r.code == 3);
  CHECK(r.err.find("interior") != std::string::npos);
}

TEST_CASE("config files and determinism") {
  const std::string path = "dsc_cli_test.cfg";
  {
    std::ofstream f(path);
    f << "# central difference\nhalf-bandwidth = 1\norder = 1\nsigma-over-delta = 0.8493218002880191\n";
  }
  const auto a = call({"kernel", "--config", path});
  const auto b = call({"kernel", "--half-bandwidth", "1", "--order", "1", "--sigma-over-delta",
                       "0.8493218002880191"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  // Flags win over the file.
  const auto c = call({"kernel", "--config", path, "--order", "2"});
  CHECK(c.out != a.out);
  {
    std::ofstream f(path);
    f << "unknown-key = 3\n";
  }
  CHECK(call({"kernel", "--config", path}).code == 1);
  std::remove(path.c_str());
  CHECK(call({"kernel", "--config", "missing.cfg"}).code == 1);

  const auto w1 = call({"waveguide", "--n", "12", "--modes", "5", "--format", "json"});
  const auto w2 = call({"waveguide", "--n", "12", "--modes", "5", "--format", "json"});
  CHECK(w1.out == w2.out);
}

TEST_CASE("output file") {
  const std::string path = "dsc_cli_test.csv";
  const auto r = call({"kernel", "--output", path});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::string first;
  std::getline(f, first);
  CHECK(first == "j,offset,weight");
  std::remove(path.c_str());
}
