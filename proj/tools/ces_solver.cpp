// ces_solver: tabulate the exponential-type partner potentials, their exact
// solutions and scattering data, and run the verification suite.
//
// Subcommands: potential, solve, scatter, zero-energy, verify.
// Exit status: 0 success, 1 verification failure, 2 usage/evaluation error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ces/oracle.hpp"
#include "ces/potentials.hpp"
#include "ces/scattering.hpp"
#include "ces/solutions.hpp"
#include "ces/table.hpp"
#include "ces/types.hpp"
#include "ces/verify.hpp"

namespace {

using ces::Complex;

struct GridArg {
  double start = 0.0;
  double end = 0.0;
  int count = 0;
  bool log_spacing = false;

  ces::oracle::GridSpec spec() const {
    return {start, end, count,
            log_spacing ? ces::oracle::Spacing::log : ces::oracle::Spacing::uniform};
  }
};

GridArg parse_grid(const std::string& text) {
  GridArg g;
  char trailing = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.start, &g.end, &g.count,
                  &trailing) != 3) {
    throw ces::ParameterError("grid must have the form start:end:count, got '" +
                              text + "'");
  }
  return g;
}

struct OutputArgs {
  std::string format = "csv";
  std::string out_path;  // empty = stdout
};

void add_output_flags(CLI::App* cmd, OutputArgs& out) {
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", out.out_path, "Write to PATH instead of stdout");
}

void emit_table(const ces::table::Table& t, const OutputArgs& out) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.out_path.empty()) {
    file.open(out.out_path);
    if (!file) throw ces::ParameterError("cannot open output file " + out.out_path);
    os = &file;
  }
  if (out.format == "json") {
    ces::table::write_json(*os, t);
  } else {
    // CSV stays pure RFC-4180 on the data stream; the meta header goes to
    // stderr so downstream parsers see only the header row and numeric rows.
    if (!t.meta.empty()) std::cerr << "# " << t.meta.dump() << '\n';
    ces::table::write_csv(*os, t);
  }
}

ces::Sign parse_sign(const std::string& s) {
  return s == "plus" ? ces::Sign::plus : ces::Sign::minus;
}

ces::Branch parse_branch(const std::string& b) {
  return b == "I" ? ces::Branch::I : ces::Branch::II;
}

// ---------------------------------------------------------------------------

int cmd_potential(double m, const GridArg& grid, const OutputArgs& out) {
  const auto g = grid.spec();
  if (!(g.start > 0.0)) throw ces::ParameterError("potential: grid requires x > 0");
  ces::table::Table t;
  t.set_columns({"x", "W", "V_plus", "V_minus", "hulthen_ref"});
  const ces::potentials::PotentialSpec plus{m, ces::Sign::plus};
  const ces::potentials::PotentialSpec minus{m, ces::Sign::minus};
  for (const double x : ces::oracle::grid_points(g)) {
    t.add_row({x, ces::potentials::superpotential(x, m),
               ces::potentials::potential(x, plus),
               ces::potentials::potential(x, minus),
               ces::potentials::hulthen(x, m * m)});
  }
  t.meta["command"] = "potential";
  t.meta["m"] = m;
  t.meta["hulthen_Q"] = m * m;
  if (m > 0.0) {
    const auto lm = ces::potentials::landmarks(m);
    if (lm.zero_crossings) {
      t.meta["landmarks"]["s_minus"] = lm.zero_crossings->first;
      t.meta["landmarks"]["s_plus"] = lm.zero_crossings->second;
    }
    if (lm.critical_points) {
      t.meta["landmarks"]["s2"] = lm.critical_points->first;
      t.meta["landmarks"]["s1"] = lm.critical_points->second;
    }
  }
  emit_table(t, out);
  return 0;
}

int cmd_solve(double m, double omega, const std::string& branch_str,
              const std::string& sign_str, const std::string& var,
              const GridArg& grid, const OutputArgs& out) {
  if (omega == 0.0) {
    throw ces::ParameterError(
        "solve: omega = 0 is the zero-energy sector; use the `zero-energy` command");
  }
  const auto branch = parse_branch(branch_str);
  const auto sign = parse_sign(sign_str);
  const auto p = ces::solutions::make_params(omega, m);
  const ces::potentials::PotentialSpec spec{m, sign};
  const auto g = grid.spec();
  if (var == "x") {
    if (!(g.start > 0.0)) throw ces::ParameterError("solve: x grid requires x > 0");
  } else {
    if (!(g.start > 0.0 && g.end < 1.0)) {
      throw ces::ParameterError("solve: " + var + " grid must lie inside (0, 1)");
    }
  }

  // Everything is sampled through the z representation of the same solution,
  // so the residual column is always the z-equation residual.
  auto z_sample = [&](double z) {
    if (var == "v") {
      auto s = ces::solutions::solution_v_sample_cm(branch, sign, 1.0 - z, z, p);
      return ces::SolutionSample{ces::Coordinate::z, z, s.value, -s.derivative};
    }
    return ces::solutions::solution_z_sample(branch, sign, z, p);
  };

  ces::table::Table t;
  t.set_columns({var, "Z.re", "Z.im", "Z.abs", "residual"});
  for (const double c : ces::oracle::grid_points(g)) {
    double z;
    if (var == "x") {
      z = std::exp(-c);
    } else if (var == "z") {
      z = c;
    } else {
      z = 1.0 - c;
    }
    const auto s = z_sample(z);
    const double res = ces::oracle::ode_residual_z_point(z_sample, spec, omega, z);
    t.add_row({c, s.value.real(), s.value.imag(), std::abs(s.value), res});
  }

  t.meta["command"] = "solve";
  t.meta["m"] = m;
  t.meta["omega"] = omega;
  t.meta["branch"] = branch_str;
  t.meta["sign"] = sign_str;
  t.meta["var"] = var;
  if (branch == ces::Branch::II) {
    // Wronskian against branch I at a representative interior point.
    const double cmid = ces::oracle::grid_points(g)[g.points / 2];
    const double xmid = var == "x"   ? cmid
                        : var == "z" ? -std::log(cmid)
                                     : -std::log1p(-cmid);
    const auto si = ces::solutions::solution_x_sample(ces::Branch::I, sign, xmid, p);
    const auto sii = ces::solutions::solution_x_sample(ces::Branch::II, sign, xmid, p);
    const Complex wn = ces::oracle::wronskian_numeric(si, sii);
    const Complex wc = ces::solutions::wronskian_closed(sign, p);
    t.meta["wronskian_vs_branch_I"] = {wn.real(), wn.imag()};
    t.meta["wronskian_closed"] = {wc.real(), wc.imag()};
  }
  emit_table(t, out);
  return 0;
}

int cmd_scatter(double m, const GridArg& grid, const OutputArgs& out) {
  const auto g = grid.spec();
  if (!(g.start > 0.0)) throw ces::ParameterError("scatter: omega sweep requires omega > 0");
  if (!(m > 0.0)) throw ces::ParameterError("scatter: requires m > 0");
  ces::table::Table t;
  t.set_columns({"omega", "S_plus.re", "S_plus.im", "phase_plus", "S_minus.re",
                 "S_minus.im", "phase_minus", "unitarity_error_plus",
                 "unitarity_error_minus", "pole_error"});
  // Phases are unwrapped along the sweep so the column is continuous.
  bool have_prev = false;
  double prev_plus = 0.0, prev_minus = 0.0;
  for (const double omega : ces::oracle::grid_points(g)) {
    try {
      const auto sp = ces::scattering::scattering_amplitude_plus(omega, m);
      const auto sm = ces::scattering::scattering_amplitude_minus(omega, m);
      double ph_p = sp.phase_shift;
      double ph_m = sm.phase_shift;
      if (have_prev) {
        const double two_pi = 2.0 * ces::special::kPi;
        ph_p += two_pi * std::round((prev_plus - ph_p) / two_pi);
        ph_m += two_pi * std::round((prev_minus - ph_m) / two_pi);
      }
      prev_plus = ph_p;
      prev_minus = ph_m;
      have_prev = true;
      t.add_row({omega, sp.amplitude.real(), sp.amplitude.imag(), ph_p,
                 sm.amplitude.real(), sm.amplitude.imag(), ph_m,
                 sp.modulus_error, sm.modulus_error, 0.0});
    } catch (const ces::PoleError& e) {
      std::cerr << "scatter: omega = " << omega << ": " << e.what() << '\n';
      t.add_row({omega, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0});
    }
  }
  t.meta["command"] = "scatter";
  t.meta["m"] = m;
  emit_table(t, out);
  return 0;
}

int cmd_zero_energy(double m, const GridArg& grid, const OutputArgs& out) {
  const auto g = grid.spec();
  if (!(g.start > 0.0)) throw ces::ParameterError("zero-energy: grid requires x > 0");
  using ces::solutions::ZeroEnergyWhich;
  ces::table::Table t;
  t.set_columns({"x", "psi_minus.re", "psi_minus.im", "psi_plus.re", "psi_plus.im",
                 "hyp_consistency_error"});
  for (const double x : ces::oracle::grid_points(g)) {
    const Complex pm = ces::solutions::zero_energy_state(x, m, ZeroEnergyWhich::psi_minus);
    const Complex pp = ces::solutions::zero_energy_state(x, m, ZeroEnergyWhich::psi_plus);
    const double z = std::exp(-x);
    double err = 0.0;
    for (const auto which : {ZeroEnergyWhich::psi_minus, ZeroEnergyWhich::psi_plus}) {
      const Complex closed = which == ZeroEnergyWhich::psi_minus ? pm : pp;
      const Complex hyp = ces::solutions::zero_energy_hypergeometric(z, m, which);
      err = std::max(err, std::abs(hyp - closed) / std::abs(closed));
    }
    t.add_row({x, pm.real(), pm.imag(), pp.real(), pp.imag(), err});
  }
  t.meta["command"] = "zero-energy";
  t.meta["m"] = m;
  emit_table(t, out);
  return 0;
}

int cmd_verify(const std::vector<double>& m_list, const std::vector<double>& omega_list,
               const std::string& strictness, bool inject_fault,
               const OutputArgs& out) {
  ces::verify::VerifyOptions opt;
  if (!m_list.empty()) opt.m_list = m_list;
  if (!omega_list.empty()) opt.omega_list = omega_list;
  if (strictness == "loose") opt.tol_scale = 100.0;
  if (const char* env = std::getenv("CES_SOLVER_TOL")) {
    char* end = nullptr;
    const double scale = std::strtod(env, &end);
    if (end == env || !(scale > 0.0)) {
      throw ces::ParameterError("CES_SOLVER_TOL must be a positive number");
    }
    opt.tol_scale *= scale;
  }
  opt.inject_fault = inject_fault;

  const auto reports = ces::verify::run_all_checks(opt);

  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!out.out_path.empty()) {
    file.open(out.out_path);
    if (!file) throw ces::ParameterError("cannot open output file " + out.out_path);
    os = &file;
  }
  int failed = 0;
  if (out.format == "json") {
    nlohmann::json doc;
    doc["meta"] = {{"command", "verify"},
                   {"tol_scale", opt.tol_scale},
                   {"m_list", opt.m_list},
                   {"omega_list", opt.omega_list}};
    doc["rows"] = nlohmann::json::array();
    for (const auto& r : reports) {
      doc["rows"].push_back({{"name", r.name},
                             {"max_residual", r.max_residual},
                             {"tolerance", r.tolerance},
                             {"passed", r.passed},
                             {"samples", r.samples}});
      failed += r.passed ? 0 : 1;
    }
    *os << doc.dump(2) << '\n';
  } else {
    *os << "name,max_residual,tolerance,passed,samples\n";
    for (const auto& r : reports) {
      *os << r.name << ',' << ces::table::format_double(r.max_residual) << ','
          << ces::table::format_double(r.tolerance) << ',' << (r.passed ? 1 : 0)
          << ',' << r.samples << '\n';
      failed += r.passed ? 0 : 1;
    }
  }
  std::cerr << (reports.size() - failed) << "/" << reports.size()
            << " checks passed\n";
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential-type partner potentials on the half line: exact "
               "solutions, scattering amplitudes, and their verification suite"};
  app.require_subcommand(1);

  // potential
  auto* pot = app.add_subcommand("potential", "Tabulate W, V+, V- and the Hulthen reference");
  double pot_m = 1.0;
  std::string pot_grid = "0.1:6:200";
  OutputArgs pot_out;
  pot->add_option("--m", pot_m, "Coupling m (nonzero)")->required();
  pot->add_option("--grid", pot_grid, "x grid start:end:count")->capture_default_str();
  bool pot_log = false;
  pot->add_flag("--log", pot_log, "Logarithmic grid spacing");
  add_output_flags(pot, pot_out);

  // solve
  auto* sol = app.add_subcommand("solve", "Tabulate one exact solution with its local ODE residual");
  double sol_m = 1.0, sol_omega = 1.0;
  std::string sol_branch = "I", sol_sign = "plus", sol_var = "z";
  std::string sol_grid;
  bool sol_log = false;
  OutputArgs sol_out;
  sol->add_option("--m", sol_m, "Coupling m (nonzero)")->required();
  sol->add_option("--omega", sol_omega, "Wave number omega > 0 (energy = omega^2)")->required();
  sol->add_option("--branch", sol_branch, "Fundamental solution")->check(CLI::IsMember({"I", "II"}));
  sol->add_option("--sign", sol_sign, "Partner branch")->check(CLI::IsMember({"plus", "minus"}));
  sol->add_option("--var", sol_var, "Tabulation variable")->check(CLI::IsMember({"x", "z", "v"}));
  sol->add_option("--grid", sol_grid, "Grid start:end:count (default per --var)");
  sol->add_flag("--log", sol_log, "Logarithmic grid spacing");
  add_output_flags(sol, sol_out);

  // scatter
  auto* sca = app.add_subcommand("scatter", "Scattering amplitudes S+ and S- over an omega sweep");
  double sca_m = 1.0;
  std::string sca_grid = "0.25:4:100";
  bool sca_log = false;
  OutputArgs sca_out;
  sca->add_option("--m", sca_m, "Coupling m > 0")->required();
  sca->add_option("--grid", sca_grid, "omega sweep start:end:count")->capture_default_str();
  sca->add_flag("--log", sca_log, "Logarithmic sweep spacing");
  add_output_flags(sca, sca_out);

  // zero-energy
  auto* zer = app.add_subcommand("zero-energy", "Zero-energy states psi0-+ and their hypergeometric identity");
  double zer_m = 1.0;
  std::string zer_grid = "0.1:8:100";
  bool zer_log = false;
  OutputArgs zer_out;
  zer->add_option("--m", zer_m, "Coupling m (nonzero)")->required();
  zer->add_option("--grid", zer_grid, "x grid start:end:count")->capture_default_str();
  zer->add_flag("--log", zer_log, "Logarithmic grid spacing");
  add_output_flags(zer, zer_out);

  // verify
  auto* ver = app.add_subcommand("verify", "Run the full oracle suite; exit 0 iff every check passes");
  std::vector<double> ver_m, ver_omega;
  std::string ver_strict = "normal";
  bool ver_fault = false;
  OutputArgs ver_out;
  ver->add_option("--m-list", ver_m, "Couplings to sweep (default 0.5 1 2)");
  ver->add_option("--omega-list", ver_omega, "Wave numbers to sweep (default 0.5 1 2)");
  ver->add_option("--strictness", ver_strict, "normal, or loose (tolerances x100)")
      ->check(CLI::IsMember({"normal", "loose"}));
  ver->add_flag("--inject-fault", ver_fault,
                "Testing hook: perturb c1 by 1e-3 so the residual checks must fail")
      ->group("");  // hidden
  add_output_flags(ver, ver_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pot) {
      auto g = parse_grid(pot_grid);
      g.log_spacing = pot_log;
      return cmd_potential(pot_m, g, pot_out);
    }
    if (*sol) {
      if (sol_grid.empty()) sol_grid = sol_var == "x" ? "0.5:10:100" : "0.05:0.95:100";
      auto g = parse_grid(sol_grid);
      g.log_spacing = sol_log;
      return cmd_solve(sol_m, sol_omega, sol_branch, sol_sign, sol_var, g, sol_out);
    }
    if (*sca) {
      auto g = parse_grid(sca_grid);
      g.log_spacing = sca_log;
      return cmd_scatter(sca_m, g, sca_out);
    }
    if (*zer) {
      auto g = parse_grid(zer_grid);
      g.log_spacing = zer_log;
      return cmd_zero_energy(zer_m, g, zer_out);
    }
    if (*ver) {
      return cmd_verify(ver_m, ver_omega, ver_strict, ver_fault, ver_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
