#pragma once

// bbcli subcommands as plain functions writing to a stream and returning the
// process exit code, so tests can drive them without spawning processes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <barbill/pentagram.hpp>

namespace bbcli {

enum Exit : int { kOk = 0, kInvalidInput = 2, kIoFailure = 3, kInternal = 4 };

/// Bad command-line input that is not a geometry error.
struct InputError {
  std::string message;
};

/// Either --vertices x1,y1,x2,y2,x3,y3 or the normalized --t/--r pair
/// P = (0, t), Q = (0, -t), R = (r, 0).
struct TriangleArgs {
  std::vector<double> t;
  std::vector<double> r;
  std::vector<double> vertices;
};

struct RhoArgs {
  TriangleArgs tri;
  long iters = 100'000;
  int qmax = 64;
};

enum class RMode { Absolute, Relative };

struct SweepSpec {
  double t_lo = 0.85, t_hi = 0.95;
  int t_steps = 20;
  RMode r_mode = RMode::Relative;
  /// Absolute: r itself. Relative: f with delta = Delta'_2 + f (Delta'_1/2 - Delta'_2).
  double r_lo = 0.0, r_hi = 1.0;
  int r_steps = 20;
  long iters = 100'000;
  int q_max = 64;
  std::uint64_t seed = 0;  // 0: regular grid, otherwise per-cell jitter
};

struct SweepArgs {
  SweepSpec spec;
  int jobs = 1;
  std::string out;
};

struct TauArgs {
  TriangleArgs tri;  // vertices: P1, P2, P; or t, r: P1 = (0, t), P2 = (0, -t), P = (r, 0)
  int n = 2;
};

struct RenderArgs {
  TriangleArgs tri;
  int steps = 5;
  long iters = 100'000;
  int qmax = 64;
  std::string out;  // empty: standard output
};

struct VerifyArgs {
  TriangleArgs tri;
  long iters = 100'000;
  int qmax = 64;
};

struct ReportRow {
  double t = 0.0;
  std::optional<double> r;
  double d_pq = 0.0;
  double delta = 0.0;
  double delta2 = 0.0;
  double half_delta1 = 0.0;
  bool cond48 = false;  // some labeling has delta between Delta'_2 and Delta'_1 / 2
  bool cond53 = false;  // Delta'_2 > delta on every labeling
  double rho_estimate = 0.0;
  int rho_p = 0;  // 0/0 unless a fraction was certified
  int rho_q = 0;
  std::string certificate_kind;  // sign_change | tangency | comparison | uncertified
  bool consistent = false;
};

/// Fixed 12-significant-digit rendering, "." separator, locale-independent.
std::string format_number(double x);
std::string csv_header();
std::string to_csv(const ReportRow& row);

barbill::Triangle resolve_triangle(const TriangleArgs& args);
ReportRow make_row(double t, std::optional<double> r, const barbill::ConjectureResult& res);

/// Cells in t-major, r-minor order.
struct SweepCell {
  double t;
  double r;
};
std::vector<SweepCell> sweep_cells(const SweepSpec& spec);
std::vector<ReportRow> run_sweep(const SweepSpec& spec, int jobs);

std::string render_svg(const barbill::Triangle& tri, int steps, const barbill::ClassifyOptions& opts);

int cmd_rho(const RhoArgs& args, std::ostream& out);
int cmd_sweep(const SweepArgs& args, std::ostream& out);
int cmd_tau(const TauArgs& args, std::ostream& out);
int cmd_render(const RenderArgs& args, std::ostream& out);
int cmd_verify(const VerifyArgs& args, std::ostream& out);

/// Prints {"error": code, "message": text} and returns the exit code.
int report_error(std::ostream& out, const std::string& code, const std::string& message, int exit_code);

}  // namespace bbcli
