#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

// End-to-end runs of the ces_solver binary (path injected by the build).

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string base = "cli_capture_" + std::to_string(counter++);
  const std::string out_path = base + ".out", err_path = base + ".err";
  const std::string cmd = (env_prefix.empty() ? "" : env_prefix + " ") +
                          std::string(CES_SOLVER_BIN) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return r;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Csv parse_csv(const std::string& text) {
  Csv csv;
  std::istringstream is(text);
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    if (first) {
      while (std::getline(ls, cell, ',')) csv.header.push_back(cell);
      first = false;
    } else {
      std::vector<double> row;
      while (std::getline(ls, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
      csv.rows.push_back(std::move(row));
    }
  }
  return csv;
}

std::size_t column(const Csv& csv, const std::string& name) {
  for (std::size_t i = 0; i < csv.header.size(); ++i) {
    if (csv.header[i] == name) return i;
  }
  throw std::runtime_error("column not found: " + name);
}

}  // namespace

TEST_CASE("potential: m = 2 reproduces the double crossing", "[cli]") {
  const auto r = run("potential --m 2 --grid 0.05:6:200");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.header ==
          std::vector<std::string>{"x", "W", "V_plus", "V_minus", "hulthen_ref"});
  REQUIRE(csv.rows.size() == 200);
  const auto vm = column(csv, "V_minus");
  int sign_changes = 0;
  for (std::size_t i = 1; i < csv.rows.size(); ++i) {
    if ((csv.rows[i - 1][vm] < 0.0) != (csv.rows[i][vm] < 0.0)) ++sign_changes;
  }
  CHECK(sign_changes == 2);
  // Landmarks arrive as a JSON meta header on stderr in csv mode.
  CHECK(r.err.find("landmarks") != std::string::npos);
  const auto vp = column(csv, "V_plus");
  for (const auto& row : csv.rows) CHECK(row[vp] > 0.0);
}

TEST_CASE("potential: m = 1/2 keeps V- strictly negative", "[cli]") {
  const auto r = run("potential --m 0.5 --grid 0.1:8:100");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  const auto vm = column(csv, "V_minus");
  for (const auto& row : csv.rows) CHECK(row[vm] < 0.0);
}

TEST_CASE("potential: non-positive x range is a usage error", "[cli]") {
  const auto r = run("potential --m 1 --grid -1:1:10");
  CHECK(r.exit_code == 2);
  CHECK(!r.err.empty());
}

TEST_CASE("solve: residual column stays within the oracle bound", "[cli]") {
  const auto r = run(
      "solve --m 1 --omega 1 --branch I --sign plus --var z --grid 0.05:0.95:100");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 100);
  const auto res = column(csv, "residual");
  for (const auto& row : csv.rows) CHECK(row[res] < 1e-8);
}

TEST_CASE("solve: x and v tabulation variables", "[cli]") {
  const auto rx = run("solve --m 1 --omega 1 --branch I --sign minus --var x "
                      "--grid 0.5:6:40");
  REQUIRE(rx.exit_code == 0);
  const auto cx = parse_csv(rx.out);
  CHECK(cx.header[0] == "x");
  const auto resx = column(cx, "residual");
  for (const auto& row : cx.rows) CHECK(row[resx] < 1e-8);

  const auto rv = run("solve --m 2 --omega 0.5 --branch II --sign plus --var v "
                      "--grid 0.05:0.95:40");
  REQUIRE(rv.exit_code == 0);
  const auto cv = parse_csv(rv.out);
  CHECK(cv.header[0] == "v");
  const auto resv = column(cv, "residual");
  for (const auto& row : cv.rows) CHECK(row[resv] < 1e-8);
}

TEST_CASE("solve: omega = 0 redirects to zero-energy", "[cli]") {
  const auto r = run("solve --m 1 --omega 0 --branch I --sign plus");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("zero-energy") != std::string::npos);
}

TEST_CASE("solve: branch II reports the Wronskian against branch I", "[cli]") {
  const auto r = run("solve --m 1 --omega 1 --branch II --sign plus --var z "
                     "--grid 0.05:0.95:50 --format json");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["meta"].contains("wronskian_vs_branch_I"));
  REQUIRE(doc["meta"].contains("wronskian_closed"));
  const auto wn = doc["meta"]["wronskian_vs_branch_I"];
  const auto wc = doc["meta"]["wronskian_closed"];
  CHECK(std::abs(wn[0].get<double>() - wc[0].get<double>()) < 1e-8);
  CHECK(std::abs(wn[1].get<double>() - wc[1].get<double>()) < 1e-8);
  // (w=1, m=1): closed form is 1 + 4i.
  CHECK(std::abs(wc[0].get<double>() - 1.0) < 1e-12);
  CHECK(std::abs(wc[1].get<double>() - 4.0) < 1e-12);
}

TEST_CASE("scatter: unitarity and unwrapped phase continuity", "[cli]") {
  const auto r = run("scatter --m 1 --grid 0.25:4:40");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 40);
  const auto up = column(csv, "unitarity_error_plus");
  const auto um = column(csv, "unitarity_error_minus");
  const auto pp = column(csv, "phase_plus");
  const auto pe = column(csv, "pole_error");
  for (const auto& row : csv.rows) {
    CHECK(row[up] < 1e-10);
    CHECK(row[um] < 1e-8);
    CHECK(row[pe] == 0.0);
  }
  for (std::size_t i = 1; i < csv.rows.size(); ++i) {
    CHECK(std::abs(csv.rows[i][pp] - csv.rows[i - 1][pp]) < 1.0);
  }
}

TEST_CASE("zero-energy: identity column and reciprocal pair", "[cli]") {
  const auto r = run("zero-energy --m 1 --grid 0.5:6:30");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  const auto err = column(csv, "hyp_consistency_error");
  const auto mre = column(csv, "psi_minus.re");
  const auto mim = column(csv, "psi_minus.im");
  const auto pre = column(csv, "psi_plus.re");
  const auto pim = column(csv, "psi_plus.im");
  for (const auto& row : csv.rows) {
    CHECK(row[err] < 1e-10);
    const std::complex<double> pm{row[mre], row[mim]}, pp{row[pre], row[pim]};
    CHECK(std::abs(pm * pp - 1.0) < 1e-12);
  }
}

TEST_CASE("json and csv carry identical numeric content", "[cli]") {
  const auto rc = run("potential --m 2 --grid 0.5:3:7");
  const auto rj = run("potential --m 2 --grid 0.5:3:7 --format json");
  REQUIRE(rc.exit_code == 0);
  REQUIRE(rj.exit_code == 0);
  const auto csv = parse_csv(rc.out);
  const auto doc = nlohmann::json::parse(rj.out);
  REQUIRE(doc["rows"].size() == csv.rows.size());
  for (std::size_t i = 0; i < csv.rows.size(); ++i) {
    for (std::size_t j = 0; j < csv.header.size(); ++j) {
      CHECK(doc["rows"][i][j].get<double>() == csv.rows[i][j]);
    }
  }
  CHECK(doc["meta"]["landmarks"].contains("s_plus"));
}

TEST_CASE("verify: healthy library exits 0, injected fault exits 1", "[cli]") {
  const auto ok = run("verify --m-list 1 --omega-list 1");
  INFO(ok.err);
  CHECK(ok.exit_code == 0);
  const auto csv = parse_csv(ok.out);
  const auto passed = column(csv, "passed");
  CHECK(csv.rows.size() > 20);
  for (const auto& row : csv.rows) CHECK(row[passed] == 1.0);

  const auto bad = run("verify --m-list 1 --omega-list 1 --inject-fault");
  CHECK(bad.exit_code == 1);
}

TEST_CASE("verify: loose strictness widens tolerances", "[cli]") {
  const auto r = run("verify --m-list 1 --omega-list 1 --strictness loose --format json");
  CHECK(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["tol_scale"].get<double>() == 100.0);
}

TEST_CASE("usage errors exit 2", "[cli]") {
  CHECK(run("potential").exit_code == 2);           // missing --m
  CHECK(run("potential --m 0 --grid 0.1:1:5").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);          // unknown subcommand
  CHECK(run("solve --m 1 --omega 1 --grid 1:2:oops").exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("scatter row at omega = 1 matches the library amplitude", "[cli]") {
  const auto r = run("scatter --m 1 --grid 0.5:1.5:3");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 3);
  const auto& mid = csv.rows[1];  // omega = 1
  CHECK(std::abs(mid[column(csv, "omega")] - 1.0) < 1e-12);
  CHECK(std::abs(mid[column(csv, "S_plus.re")] - (-0.628263515609)) < 1e-9);
  CHECK(std::abs(mid[column(csv, "S_plus.im")] - (-0.778000613723)) < 1e-9);
  CHECK(std::abs(mid[column(csv, "S_minus.re")] - 0.934376659876) < 1e-9);
  CHECK(std::abs(mid[column(csv, "S_minus.im")] - 0.356286762986) < 1e-9);
}

TEST_CASE("log grids space points geometrically", "[cli]") {
  const auto r = run("potential --m 1 --grid 0.01:100:5 --log");
  REQUIRE(r.exit_code == 0);
  const auto csv = parse_csv(r.out);
  REQUIRE(csv.rows.size() == 5);
  const auto x = column(csv, "x");
  for (std::size_t i = 1; i < 5; ++i) {
    CHECK(std::abs(csv.rows[i][x] / csv.rows[i - 1][x] - 10.0) < 1e-9);
  }
}

TEST_CASE("CES_SOLVER_TOL scales the verification tolerances", "[cli]") {
  const auto r = run("verify --m-list 1 --omega-list 1 --format json",
                     "CES_SOLVER_TOL=50");
  REQUIRE(r.exit_code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["meta"]["tol_scale"].get<double>() == 50.0);
  const auto bad = run("verify --m-list 1 --omega-list 1", "CES_SOLVER_TOL=bogus");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("out flag writes the table to a file", "[cli]") {
  const std::string path = "cli_out_table.csv";
  const auto r = run("potential --m 1 --grid 0.5:2:5 --out " + path);
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  const auto csv = parse_csv(slurp(path));
  CHECK(csv.rows.size() == 5);
  std::remove(path.c_str());
}
