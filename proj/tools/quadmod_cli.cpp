#include <complex>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "quadmod/envelope.hpp"
#include "quadmod/quadmod.hpp"

namespace {

using Real = double;
using C = std::complex<double>;

int cmd_extmod(const std::string& a3_text, const std::string& a4_text, double n, int wp) {
  const C a3 = quadmod::parse_complex(a3_text);
  const C a4 = quadmod::parse_complex(a4_text);
  quadmod::SolverOptions<Real> opts;
  opts.n = n;
  opts.wp = wp;
  const auto rep = quadmod::exterior_modulus(quadmod::QuadSpec<Real>{a3, a4}, opts);

  quadmod::ResultEnvelope env;
  env.command = "extmod";
  env.inputs["a3_re"] = a3.real();
  env.inputs["a3_im"] = a3.imag();
  env.inputs["a4_re"] = a4.real();
  env.inputs["a4_im"] = a4.imag();
  env.inputs["n"] = n;
  env.inputs["wp"] = wp;
  env.outputs["M"] = rep.M;
  env.outputs["alpha"] = rep.angles.alpha;
  env.outputs["beta"] = rep.angles.beta;
  env.outputs["gamma"] = rep.angles.gamma;
  env.outputs["delta"] = rep.angles.delta;
  env.outputs["t"] = rep.t;
  env.outputs["z0_re"] = rep.z0.real();
  env.outputs["z0_im"] = rep.z0.imag();
  env.outputs["r"] = rep.r;
  env.outputs["l1"] = rep.l1;
  env.outputs["l2"] = rep.l2;
  env.outputs["l3"] = rep.l3;
  env.outputs["l4"] = rep.l4;
  env.diagnostics["residual"] = rep.residual;
  env.diagnostics["iterations"] = rep.iterations;
  env.diagnostics["closure_defect"] = rep.closure_defect;
  env.diagnostics["quad_error"] = rep.quad_error;
  std::cout << env.dump();
  return 0;
}

int cmd_trapezoid(const std::string& mode, double alpha, double c, int wp) {
  const auto spec = quadmod::make_trapezoid(alpha, c);
  quadmod::ResultEnvelope env;
  env.command = "trapezoid " + mode;
  env.inputs["alpha"] = alpha;
  env.inputs["c"] = c;
  env.inputs["d"] = spec.d;
  env.inputs["wp"] = wp;
  env.diagnostics["rectangle_route"] = quadmod::is_rectangle(spec);
  if (mode == "interior") {
    const Real lambda = quadmod::is_rectangle(spec) ? quadmod::interior_lambda_rectangle(spec.c)
                                                    : quadmod::interior_lambda(spec, wp);
    env.outputs["lambda"] = lambda;
    env.outputs["mod_interior"] = 2 * quadmod::ellip_K(lambda) /
                                  quadmod::ellip_K(quadmod::comp_modulus(lambda));
  } else if (mode == "exterior") {
    const Real k = quadmod::is_rectangle(spec) ? quadmod::exterior_k_rectangle(spec.c)
                                               : quadmod::exterior_k(spec, wp);
    env.outputs["k"] = k;
    env.outputs["a"] = quadmod::exterior_a_of_k(spec.alpha, k);
    env.outputs["mod_exterior"] = 2 * quadmod::ellip_K(k) /
                                  quadmod::ellip_K(quadmod::comp_modulus(k));
  } else {
    const auto rep = quadmod::bounds_report(spec, wp);
    env.outputs["lambda"] = rep.lambda;
    env.outputs["k"] = rep.k;
    env.outputs["mod_interior"] = rep.mod_interior;
    env.outputs["mod_exterior"] = rep.mod_exterior;
    env.outputs["ml_natural"] = rep.ml_natural;
    env.outputs["ml_shifted"] = rep.ml_shifted;
    env.outputs["ml_enhanced"] = rep.ml_enhanced;
    env.outputs["qr_lower"] = rep.qr_lower;
    env.outputs["qr_upper"] = rep.qr_upper;
    if (!(rep.qr_lower <= rep.qr_upper)) {
      throw quadmod::solver_failure("bounds: lower bound exceeds upper bound");
    }
  }
  std::cout << env.dump();
  return 0;
}

int cmd_validate(int table, bool extended, int wp) {
  if (table < 1 || table > 3) throw quadmod::invalid_input("validate: table must be 1, 2 or 3");
  const auto id = table == 1   ? quadmod::TableId::table1
                  : table == 2 ? quadmod::TableId::table2
                               : quadmod::TableId::table3;
  quadmod::RunTableOptions opts;
  opts.extended = extended;
  opts.wp = wp;
  const auto rows = quadmod::run_table<Real>(id, opts);
  quadmod::write_table_csv(std::cout, rows);
  int failures = 0;
  for (const auto& r : rows) {
    if (!r.pass) {
      ++failures;
      std::cerr << "validate: row " << r.id << " off by " << r.abs_err << " (tol " << r.tol
                << (r.relative ? " rel" : " abs") << ")\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

int cmd_grid(const std::string& a3_text, const std::string& a4_text, double re0, double re1,
             double im0, double im1, int n_re, int n_im, const std::string& out_path, double n,
             int wp) {
  const C a3 = quadmod::parse_complex(a3_text);
  const C a4 = quadmod::parse_complex(a4_text);
  quadmod::SolverOptions<Real> opts;
  opts.n = n;
  opts.wp = wp;
  const auto rep = quadmod::exterior_modulus(quadmod::QuadSpec<Real>{a3, a4}, opts);
  const auto samples = quadmod::grid_image(rep.angles, rep.t, rep.z0,
                                           quadmod::GridSpec<Real>{re0, re1, im0, im1, n_re, n_im});
  std::ofstream out(out_path);
  if (!out) throw quadmod::invalid_input("grid: cannot open output path " + out_path);
  quadmod::write_grid_csv(out, samples);
  if (!out.good()) throw quadmod::invalid_input("grid: write failed for " + out_path);

  quadmod::ResultEnvelope env;
  env.command = "grid";
  env.inputs["a3_re"] = a3.real();
  env.inputs["a3_im"] = a3.imag();
  env.inputs["a4_re"] = a4.real();
  env.inputs["a4_im"] = a4.imag();
  env.inputs["out"] = out_path;
  env.outputs["rows"] = static_cast<int>(samples.size());
  int skipped = 0;
  for (const auto& s : samples) skipped += s.skipped ? 1 : 0;
  env.outputs["skipped"] = skipped;
  env.diagnostics["t"] = rep.t;
  env.diagnostics["residual"] = rep.residual;
  env.diagnostics["iterations"] = rep.iterations;
  std::cout << env.dump();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conformal moduli of polygonal quadrilaterals and trapezoid reflection bounds"};
  app.require_subcommand(1);

  std::string a3_text, a4_text, out_path;
  double n = 2.0;
  int wp = 12;
  int table = 0;
  bool extended = false;
  double alpha = 0.25, c = 1.0;
  double re0 = 0, re1 = 2, im0 = 0, im1 = 2;
  int n_re = 10, n_im = 10;

  auto* extmod = app.add_subcommand("extmod", "Exterior modulus of the quadrilateral 1,0,A3,A4");
  extmod->add_option("--a3", a3_text, "vertex A3 as x+yi")->required();
  extmod->add_option("--a4", a4_text, "vertex A4 as x+yi")->required();
  extmod->add_option("--n", n, "bracket exponent, upper bracket 10^n");
  extmod->add_option("--wp", wp, "quadrature tolerance exponent");

  auto* trap = app.add_subcommand("trapezoid", "Isosceles trapezoid moduli and reflection bounds");
  trap->require_subcommand(1);
  std::string trap_mode;
  for (const char* mode : {"interior", "exterior", "bounds"}) {
    auto* sub = trap->add_subcommand(mode);
    sub->add_option("--alpha", alpha, "acute angle is pi*alpha, 0 < alpha <= 1/2")->required();
    sub->add_option("--c", c, "half top base")->required();
    sub->add_option("--wp", wp, "quadrature tolerance exponent");
    sub->callback([&trap_mode, mode]() { trap_mode = mode; });
  }

  auto* validate = app.add_subcommand("validate", "Recompute a golden table");
  validate->add_option("--table", table, "table number 1, 2 or 3")->required();
  validate->add_flag("--extended", extended, "include the large-H rows of table 2");
  validate->add_option("--wp", wp, "quadrature tolerance exponent");

  auto* grid = app.add_subcommand("grid", "Image of a half-plane mesh under the exterior map");
  grid->add_option("--a3", a3_text, "vertex A3 as x+yi")->required();
  grid->add_option("--a4", a4_text, "vertex A4 as x+yi")->required();
  grid->add_option("--re0", re0, "mesh lower real bound");
  grid->add_option("--re1", re1, "mesh upper real bound");
  grid->add_option("--im0", im0, "mesh lower imaginary bound");
  grid->add_option("--im1", im1, "mesh upper imaginary bound");
  grid->add_option("--nre", n_re, "mesh count along the real axis");
  grid->add_option("--nim", n_im, "mesh count along the imaginary axis");
  grid->add_option("--out", out_path, "output CSV path")->required();
  grid->add_option("--n", n, "bracket exponent");
  grid->add_option("--wp", wp, "quadrature tolerance exponent");

  try {
    app.parse(argc, argv);
    if (extmod->parsed()) return cmd_extmod(a3_text, a4_text, n, wp);
    if (trap->parsed()) return cmd_trapezoid(trap_mode, alpha, c, wp);
    if (validate->parsed()) return cmd_validate(table, extended, wp);
    if (grid->parsed()) return cmd_grid(a3_text, a4_text, re0, re1, im0, im1, n_re, n_im,
                                        out_path, n, wp);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  } catch (const quadmod::invalid_input& e) {
    std::cerr << "error (invalid input): " << e.what() << "\n";
    return 2;
  } catch (const quadmod::solver_failure& e) {
    std::cerr << "error (solver): " << e.what() << "\n";
    return 3;
  }
  return 0;
}
