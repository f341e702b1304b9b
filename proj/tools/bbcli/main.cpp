#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

void add_triangle_options(CLI::App* cmd, bbcli::TriangleArgs& tri) {
  cmd->add_option("--t", tri.t, "Normalized form: P = (0, t), Q = (0, -t)")->delimiter(',');
  cmd->add_option("--r", tri.r, "Normalized form: R = (r, 0)")->delimiter(',');
  cmd->add_option("--vertices", tri.vertices, "x1,y1,x2,y2,x3,y3")->delimiter(',')->allow_extra_args(false);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bar-billiard rotation numbers in the Klein disk"};
  app.require_subcommand(1);

  bbcli::RhoArgs rho;
  auto* c_rho = app.add_subcommand("rho", "Classify the rotation number of one triangle (JSON)");
  add_triangle_options(c_rho, rho.tri);
  c_rho->add_option("--iters", rho.iters, "Lift iterations for the estimate");
  c_rho->add_option("--qmax", rho.qmax, "Largest denominator tried");

  bbcli::SweepArgs sweep;
  std::vector<double> t_range, r_range;
  std::vector<int> grid;
  std::string r_mode = "relative";
  auto* c_sweep = app.add_subcommand("sweep", "Grid sweep over the normalized (t, r) family (CSV)");
  c_sweep->add_option("--t", t_range, "t range lo,hi")->delimiter(',')->expected(2);
  c_sweep->add_option("--r", r_range, "r range lo,hi (see --r-mode)")->delimiter(',')->expected(2);
  c_sweep->add_option("--grid", grid, "Steps along t and r: N or NT,NR")->delimiter(',')->expected(1, 2);
  c_sweep->add_option("--r-mode", r_mode, "absolute or relative")->check(CLI::IsMember({"absolute", "relative"}));
  c_sweep->add_option("--iters", sweep.spec.iters, "Lift iterations per cell");
  c_sweep->add_option("--qmax", sweep.spec.q_max, "Largest denominator tried");
  c_sweep->add_option("--seed", sweep.spec.seed, "Jitter seed; 0 keeps the regular grid");
  c_sweep->add_option("--jobs", sweep.jobs, "Worker threads");
  c_sweep->add_option("--out", sweep.out, "CSV output path")->required();

  bbcli::TauArgs tau;
  auto* c_tau = app.add_subcommand("tau", "Count tau_n roots for a segment and a point (JSON)");
  add_triangle_options(c_tau, tau.tri);
  c_tau->add_option("--n", tau.n, "Half the number of segment-map iterations");

  bbcli::RenderArgs render;
  auto* c_render = app.add_subcommand("render", "Draw a triangle, its trajectory and pentagram (SVG)");
  add_triangle_options(c_render, render.tri);
  c_render->add_option("--n", render.steps, "Trajectory steps (0 to 10000)");
  c_render->add_option("--iters", render.iters, "Lift iterations for the classification");
  c_render->add_option("--qmax", render.qmax, "Largest denominator tried");
  c_render->add_option("--out", render.out, "SVG output path (default: standard output)");

  bbcli::VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "Check every threshold prediction that applies to a triangle");
  add_triangle_options(c_verify, verify.tri);
  c_verify->add_option("--iters", verify.iters, "Lift iterations for the estimate");
  c_verify->add_option("--qmax", verify.qmax, "Largest denominator tried");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return bbcli::report_error(std::cout, "InvalidInput", e.what(), bbcli::kInvalidInput);
  }

  if (*c_rho) return bbcli::cmd_rho(rho, std::cout);
  if (*c_tau) return bbcli::cmd_tau(tau, std::cout);
  if (*c_render) return bbcli::cmd_render(render, std::cout);
  if (*c_verify) return bbcli::cmd_verify(verify, std::cout);

  auto& s = sweep.spec;
  if (!t_range.empty()) std::tie(s.t_lo, s.t_hi) = std::pair{t_range[0], t_range[1]};
  if (!r_range.empty()) std::tie(s.r_lo, s.r_hi) = std::pair{r_range[0], r_range[1]};
  if (grid.size() == 1) s.t_steps = s.r_steps = grid[0];
  if (grid.size() == 2) std::tie(s.t_steps, s.r_steps) = std::pair{grid[0], grid[1]};
  s.r_mode = r_mode == "absolute" ? bbcli::RMode::Absolute : bbcli::RMode::Relative;
  return bbcli::cmd_sweep(sweep, std::cout);
}
