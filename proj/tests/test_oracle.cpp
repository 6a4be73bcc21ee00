#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ces/oracle.hpp"
#include "ces/scattering.hpp"
#include "ces/solutions.hpp"
#include "ces/verify.hpp"

using namespace ces;
using namespace ces::oracle;
using Catch::Matchers::WithinAbs;

TEST_CASE("grid construction") {
  CHECK_THROWS_AS(GridSpec(1.0, 0.5, 10), ParameterError);
  CHECK_THROWS_AS(GridSpec(0.0, 1.0, 2), ParameterError);
  CHECK_THROWS_AS(GridSpec(0.0, 1.0, 10, Spacing::log), ParameterError);
  const auto lin = grid_points({0.0, 1.0, 5});
  REQUIRE(lin.size() == 5);
  CHECK(lin.front() == 0.0);
  CHECK(lin.back() == 1.0);
  CHECK_THAT(lin[2], WithinAbs(0.5, 1e-15));
  const auto lg = grid_points({0.01, 100.0, 5, Spacing::log});
  CHECK_THAT(lg[1] / lg[0], WithinAbs(10.0, 1e-10));
  CHECK(lg.back() == 100.0);
}

TEST_CASE("wronskian_numeric basics") {
  const SolutionSample f{Coordinate::x, 1.0, {2.0, 1.0}, {0.5, -0.25}};
  CHECK(wronskian_numeric(f, f) == Complex{0.0, 0.0});
  SolutionSample g = f;
  g.coord = 2.0;
  CHECK_THROWS_AS(wronskian_numeric(f, g), ParameterError);
  g = f;
  g.coord_tag = Coordinate::z;
  CHECK_THROWS_AS(wronskian_numeric(f, g), ParameterError);
}

TEST_CASE("ode_residual_z accepts the exact solution and rejects junk") {
  const auto p = solutions::make_params(1.0, 1.0);
  const GridSpec grid{0.05, 0.95, 60};
  const auto good = ode_residual_z(
      [&](double z) { return solutions::solution_z_sample(Branch::I, Sign::plus, z, p); },
      {1.0, Sign::plus}, 1.0, grid);
  INFO("exact-solution residual " << good.max_residual);
  CHECK(good.passed);

  // Constant 1 is not a solution: O(1) residual, report fails.
  const auto junk = ode_residual_z(
      [](double z) {
        return SolutionSample{Coordinate::z, z, {1.0, 0.0}, {0.0, 0.0}};
      },
      {1.0, Sign::plus}, 1.0, grid);
  CHECK_FALSE(junk.passed);
  CHECK(junk.max_residual > 0.1);
}

TEST_CASE("negative control: 1% coupling perturbation is detected") {
  // Solution built for m = 1.01 checked against the m = 1 potential.
  const auto p = solutions::make_params(1.0, 1.01);
  const GridSpec grid{0.05, 0.95, 60};
  const auto rep = ode_residual_z(
      [&](double z) { return solutions::solution_z_sample(Branch::I, Sign::plus, z, p); },
      {1.0, Sign::plus}, 1.0, grid);
  CHECK_FALSE(rep.passed);
  CHECK(rep.max_residual > 1e-4);
}

TEST_CASE("ode_residual_z grid collar") {
  const auto p = solutions::make_params(1.0, 1.0);
  auto fn = [&](double z) { return solutions::solution_z_sample(Branch::I, Sign::plus, z, p); };
  CHECK_THROWS_AS(ode_residual_z(fn, {1.0, Sign::plus}, 1.0, GridSpec{1e-4, 0.5, 10}),
                  ParameterError);
  CHECK_THROWS_AS(ode_residual_z(fn, {1.0, Sign::plus}, 1.0, GridSpec{0.1, 0.9999, 10}),
                  ParameterError);
}

TEST_CASE("free propagation over a zero potential") {
  // Test hook: V forced to zero; e^{i w x} must propagate with 1e-9 phase
  // accuracy over a length-10 span.
  const double omega = 1.0;
  const Complex e0 = std::exp(Complex{0.0, omega});
  const SolutionSample ic{Coordinate::x, 1.0, e0, Complex{0.0, omega} * e0};
  const auto out = integrate_schrodinger([](double) { return 0.0; }, omega, ic,
                                         {1.0, 11.0, 11});
  const Complex want = std::exp(Complex{0.0, omega * 11.0});
  CHECK(std::abs(out.back().value - want) < 1e-9);
}

TEST_CASE("uniqueness oracle: seeded exact solution propagates onto itself") {
  const auto rep = verify::check_integrate_vs_exact({});
  INFO(rep.name << " residual " << rep.max_residual);
  CHECK(rep.passed);
}

TEST_CASE("integrator order is at least 4") {
  const auto rep = verify::check_integrator_order({});
  INFO("16/ratio = " << rep.max_residual);
  CHECK(rep.passed);
}

TEST_CASE("integrate_radial guards") {
  const auto p = solutions::make_params(1.0, 1.0);
  const auto ic = solutions::solution_x_sample(Branch::I, Sign::plus, 2.0, p);
  CHECK_THROWS_AS(
      integrate_radial({1.0, Sign::plus}, 1.0, ic, GridSpec{1e-4, 5.0, 10}),
      ParameterError);
  CHECK_THROWS_AS(
      integrate_radial({1.0, Sign::plus}, 1.0, ic, GridSpec{3.0, 5.0, 10}),
      ParameterError);  // x0 = 2 outside the grid
  SolutionSample bad = ic;
  bad.coord_tag = Coordinate::z;
  CHECK_THROWS_AS(
      integrate_radial({1.0, Sign::plus}, 1.0, bad, GridSpec{1.0, 5.0, 10}),
      ParameterError);
}

TEST_CASE("appendix consistency check") {
  const GridSpec grid{0.5, 5.0, 24};
  for (const auto& [omega, m] : {std::pair{1.0, 1.0}, {2.0, 0.5}}) {
    for (int seed = 1; seed <= 5; ++seed) {
      AppendixOptions opt;
      opt.seed = 1000u * seed;
      const auto rep = appendix_check(omega, m, grid, opt);
      INFO("w=" << omega << " m=" << m << " seed=" << seed << " residual "
                << rep.max_residual);
      CHECK(rep.passed);
      CHECK(rep.max_residual < 1e-7);
    }
  }
}

TEST_CASE("appendix degenerate seed") {
  const GridSpec grid{0.5, 5.0, 12};
  const auto rep = appendix_check_from(1.0, 1.0, grid, {0.0, 0.0}, {0.0, 0.0});
  CHECK(rep.name == "appendix_check[degenerate]");
  CHECK(rep.max_residual == 0.0);
  CHECK(rep.passed);
}

TEST_CASE("appendix grid validation") {
  // Spacing must exceed 4x the fd step for disjoint stencil clusters.
  CHECK_THROWS_AS(appendix_check(1.0, 1.0, GridSpec{0.5, 0.6, 50}), ParameterError);
  CHECK_THROWS_AS(appendix_check(1.0, 1.0, GridSpec{1e-4, 5.0, 10}), ParameterError);
}

TEST_CASE("end-to-end: integrate the physical solution and fit the amplitude") {
  const auto rep = verify::check_integrate_fit_end_to_end({});
  INFO(rep.name << " residual " << rep.max_residual);
  CHECK(rep.passed);
}

TEST_CASE("fd derivative helper") {
  auto f = [](double t) { return std::exp(Complex{0.0, 2.0} * t); };
  const Complex d = fd_derivative5_richardson(f, 1.0, 1e-3);
  CHECK(std::abs(d - Complex{0.0, 2.0} * f(1.0)) < 1e-12);
}
