#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <thread>

#include <fmt/format.h>

#include "json.hpp"

namespace bbcli {

using barbill::DiskPoint;
using barbill::Error;
using barbill::Triangle;
using json = nlohmann::ordered_json;

namespace {

struct IoError {
  std::string message;
};

/// Numbers go through the same 12-digit rendering as the CSV so that JSON,
/// CSV and SVG agree byte for byte across runs.
json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

template <class Body>
int guarded(std::ostream& out, Body&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    return report_error(out, "InvalidInput", e.message, kInvalidInput);
  } catch (const IoError& e) {
    return report_error(out, "IOError", e.message, kIoFailure);
  } catch (const Error& e) {
    const int code = barbill::is_internal(e.code()) ? kInternal : kInvalidInput;
    return report_error(out, std::string(barbill::to_string(e.code())), e.what(), code);
  }
}

barbill::ClassifyOptions classify_options(long iters, int qmax) {
  if (iters < 1000) throw InputError{"--iters must be at least 1000"};
  if (qmax < 2 || qmax > 64) throw InputError{"--qmax must lie in [2, 64]"};
  barbill::ClassifyOptions o;
  o.iters = iters;
  o.q_max = qmax;
  return o;
}

std::string certificate_kind(const barbill::ConjectureResult& res) {
  if (res.verdict == barbill::Verdict::Uncertified) return "uncertified";
  if (res.rotation.certificate) return std::string(barbill::to_string(res.rotation.certificate->kind));
  return "comparison";
}

json labeling_json(const barbill::LabelingReport& l) {
  return {{"labels", l.labels},
          {"d_prime", num(l.d_prime)},
          {"delta", num(l.delta)},
          {"delta1", num(l.delta1)},
          {"delta2", num(l.delta2)},
          {"half_delta1", num(l.half_delta1)},
          {"onethird", l.onethird},
          {"sandwich", barbill::to_string(l.sandwich)},
          {"strict_below_delta2", l.strict_below_delta2},
          {"isosceles", l.isosceles},
          {"iso_log3", l.iso_log3},
          {"iso_log9", l.iso_log9}};
}

json rotation_json(const barbill::RotationResult& rot) {
  json j = {{"estimate", num(rot.estimate)}, {"n_iters", rot.n_iters}, {"error_bound", num(rot.error_bound)}};
  if (rot.certificate) {
    const auto& c = *rot.certificate;
    j["certificate"] = {{"p", c.p},
                        {"q", c.q},
                        {"witness_x", num(c.witness_x)},
                        {"residual", num(c.residual)},
                        {"kind", barbill::to_string(c.kind)}};
  } else {
    j["certificate"] = nullptr;
  }
  if (rot.comparison) {
    const auto& c = *rot.comparison;
    j["comparison"] = {{"p", c.p}, {"q", c.q}, {"relation", barbill::to_string(c.relation)}, {"margin", num(c.margin)}};
  } else {
    j["comparison"] = nullptr;
  }
  return j;
}

json row_json(const ReportRow& row) {
  return {{"t", num(row.t)},
          {"r", row.r ? num(*row.r) : json(nullptr)},
          {"d_pq", num(row.d_pq)},
          {"delta", num(row.delta)},
          {"delta2", num(row.delta2)},
          {"half_delta1", num(row.half_delta1)},
          {"cond48", row.cond48},
          {"cond53", row.cond53},
          {"rho_estimate", num(row.rho_estimate)},
          {"rho_p", row.rho_p},
          {"rho_q", row.rho_q},
          {"certificate_kind", row.certificate_kind},
          {"consistent", row.consistent}};
}

json point_json(barbill::Vec2 v) { return json::array({num(v.x), num(v.y)}); }

/// Normalized coordinates: the isometry taking P, Q to (0, t), (0, -t).
struct Normalized {
  double t;
  barbill::Vec2 r;
};

Normalized normalize(const Triangle& tri) {
  const auto& p = tri[tri.stored_index(0)];
  const auto& q = tri[tri.stored_index(1)];
  const auto& r = tri[tri.stored_index(2)];
  const auto n = barbill::normalize_pair(p, q);
  return {n.t, n.iso.apply(r).vec()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError{"cannot open " + path + " for writing"};
  f << text;
  f.flush();
  if (!f) throw IoError{"failed writing " + path};
}

double jitter_unit(std::uint64_t seed, std::uint64_t cell, std::uint64_t axis) {
  std::mt19937_64 eng(seed ^ (0x9E3779B97F4A7C15ULL * (2 * cell + axis + 1)));
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;  // [0, 1)
}

}  // namespace

// ---------------------------------------------------------------------------

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";  // folds -0
  return fmt::format("{:.12g}", x);
}

std::string csv_header() {
  return "t,r,d_pq,delta,delta2,half_delta1,cond48,cond53,rho_estimate,rho_p,rho_q,certificate_kind,consistent";
}

std::string to_csv(const ReportRow& row) {
  auto b = [](bool v) { return v ? "true" : "false"; };
  return fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}", format_number(row.t),
                     row.r ? format_number(*row.r) : std::string(), format_number(row.d_pq),
                     format_number(row.delta), format_number(row.delta2), format_number(row.half_delta1),
                     b(row.cond48), b(row.cond53), format_number(row.rho_estimate), row.rho_p, row.rho_q,
                     row.certificate_kind, b(row.consistent));
}

int report_error(std::ostream& out, const std::string& code, const std::string& message, int exit_code) {
  out << json{{"error", code}, {"message", message}}.dump() << '\n';
  return exit_code;
}

Triangle resolve_triangle(const TriangleArgs& a) {
  if (!a.vertices.empty()) {
    if (!a.t.empty() || !a.r.empty()) throw InputError{"give either --vertices or --t/--r, not both"};
    if (a.vertices.size() != 6) throw InputError{"--vertices takes six numbers x1,y1,x2,y2,x3,y3"};
    const auto& v = a.vertices;
    return Triangle(DiskPoint(v[0], v[1]), DiskPoint(v[2], v[3]), DiskPoint(v[4], v[5]));
  }
  if (a.t.size() != 1 || a.r.size() != 1) throw InputError{"need --vertices, or single values for --t and --r"};
  const double t = a.t[0];
  if (!(t > 0.0 && t < 1.0)) throw InputError{"--t must lie in (0, 1)"};
  return Triangle(DiskPoint(0.0, t), DiskPoint(0.0, -t), DiskPoint(a.r[0], 0.0));
}

ReportRow make_row(double t, std::optional<double> r, const barbill::ConjectureResult& res) {
  const auto& l = res.report.labelings[0];
  ReportRow row;
  row.t = t;
  row.r = r;
  row.d_pq = l.d_prime;
  row.delta = l.delta;
  row.delta2 = l.delta2;
  row.half_delta1 = l.half_delta1;
  row.cond48 = res.report.sandwich_any;
  row.cond53 = res.report.below_delta2_all;
  row.rho_estimate = res.rotation.estimate;
  if (res.rotation.certificate) {
    row.rho_p = res.rotation.certificate->p;
    row.rho_q = res.rotation.certificate->q;
  }
  row.certificate_kind = certificate_kind(res);
  row.consistent = res.consistent;
  return row;
}

// ---------------------------------------------------------------------------

std::vector<SweepCell> sweep_cells(const SweepSpec& s) {
  if (!(s.t_lo > 0.0 && s.t_lo <= s.t_hi && s.t_hi < 1.0)) throw InputError{"t range must satisfy 0 < lo <= hi < 1"};
  if (s.t_steps < 1 || s.r_steps < 1) throw InputError{"grid steps must be at least 1"};
  if (!(s.r_lo <= s.r_hi)) throw InputError{"r range must satisfy lo <= hi"};
  if (s.r_mode == RMode::Absolute && !(s.r_lo > -1.0 && s.r_hi < 1.0)) {
    throw InputError{"absolute r range must lie in (-1, 1)"};
  }

  auto axis = [](double lo, double hi, int steps, int i, double jitter) {
    if (steps == 1) return lo;
    const double h = (hi - lo) / (steps - 1);
    return std::clamp(lo + h * (i + jitter), lo, hi);
  };
  std::vector<SweepCell> cells;
  cells.reserve(static_cast<std::size_t>(s.t_steps) * static_cast<std::size_t>(s.r_steps));
  for (int i = 0; i < s.t_steps; ++i) {
    for (int j = 0; j < s.r_steps; ++j) {
      const auto cell = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(s.r_steps) + static_cast<std::uint64_t>(j);
      const double jt = s.seed ? jitter_unit(s.seed, cell, 0) - 0.5 : 0.0;
      const double jr = s.seed ? jitter_unit(s.seed, cell, 1) - 0.5 : 0.0;
      const double t = axis(s.t_lo, s.t_hi, s.t_steps, i, jt);
      double r = axis(s.r_lo, s.r_hi, s.r_steps, j, jr);
      if (s.r_mode == RMode::Relative) {
        const double d = barbill::hyp_distance(DiskPoint(0.0, t), DiskPoint(0.0, -t));
        const double d2 = barbill::delta_n(d, 2);
        const double h = 0.5 * barbill::delta_n(d, 1);
        r = -std::tanh(d2 + r * (h - d2));
      }
      cells.push_back({t, r});
    }
  }
  return cells;
}

std::vector<ReportRow> run_sweep(const SweepSpec& spec, int jobs) {
  const auto cells = sweep_cells(spec);
  const auto opts = classify_options(spec.iters, spec.q_max);
  std::vector<ReportRow> rows(cells.size());
  std::vector<std::exception_ptr> errors(cells.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      try {
        const auto& c = cells[k];
        const Triangle tri(DiskPoint(0.0, c.t), DiskPoint(0.0, -c.t), DiskPoint(c.r, 0.0));
        rows[k] = make_row(c.t, c.r, barbill::conjecture_check(tri, opts));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  {
    std::vector<std::jthread> pool;
    for (int i = 1; i < n; ++i) pool.emplace_back(worker);
    worker();
  }
  // Report the first failing cell in grid order, independent of scheduling.
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

// ---------------------------------------------------------------------------

int cmd_rho(const RhoArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    const Triangle tri = resolve_triangle(args.tri);
    const auto res = barbill::conjecture_check(tri, classify_options(args.iters, args.qmax));
    const Normalized nz = normalize(tri);
    const bool tr_form = args.tri.vertices.empty();
    const ReportRow row = make_row(tr_form ? args.tri.t[0] : nz.t,
                                   tr_form ? std::optional<double>(args.tri.r[0]) : std::nullopt, res);

    json j = row_json(row);
    json verts = json::array();
    for (int k = 0; k < 3; ++k) verts.push_back(point_json(tri[tri.stored_index(k)].vec()));
    j["vertices"] = verts;
    j["normalized"] = {{"t", num(nz.t)}, {"r", point_json(nz.r)}};
    json labelings = json::array();
    for (const auto& l : res.report.labelings) labelings.push_back(labeling_json(l));
    j["labelings"] = labelings;
    j["onethird_any"] = res.report.onethird_any;
    j["sandwich_any"] = res.report.sandwich_any;
    j["sandwich_labeling"] = res.report.sandwich_labeling;
    j["below_delta2_all"] = res.report.below_delta2_all;
    j["iso_above"] = res.report.iso_above;
    j["iso_below"] = res.report.iso_below;
    j["rotation"] = rotation_json(res.rotation);
    j["verdict"] = barbill::to_string(res.verdict);
    if (res.verdict == barbill::Verdict::Equals) {
      const auto set = barbill::detect_period5(barbill::TangentMap(barbill::ConvexBody::triangle(tri)));
      json orbits = json::array();
      for (const auto& pent : set.orbits) {
        json pts = json::array();
        for (const auto& p : pent.points) pts.push_back(num(p.turns()));
        orbits.push_back(pts);
      }
      j["orbits"] = orbits;
    }
    out << j.dump(2) << '\n';
    return int{kOk};
  });
}

int cmd_sweep(const SweepArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    if (args.out.empty()) throw InputError{"sweep needs --out"};
    if (args.jobs < 1) throw InputError{"--jobs must be at least 1"};
    const auto rows = run_sweep(args.spec, args.jobs);
    std::string text = csv_header() + "\n";
    int consistent = 0, inconsistent = 0, uncertified = 0;
    for (const auto& row : rows) {
      text += to_csv(row) + "\n";
      if (row.certificate_kind == "uncertified") {
        ++uncertified;
      } else if (row.consistent) {
        ++consistent;
      } else {
        ++inconsistent;
      }
    }
    write_file(args.out, text);
    out << fmt::format("rows={} consistent={} inconsistent={} uncertified={}\n", rows.size(), consistent,
                       inconsistent, uncertified);
    return int{kOk};
  });
}

int cmd_tau(const TauArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    if (args.n < 1) throw InputError{"--n must be at least 1"};
    std::array<DiskPoint, 3> pts{DiskPoint(0.0, 0.5), DiskPoint(0.0, -0.5), DiskPoint(0.0, 0.0)};
    const auto& a = args.tri;
    if (!a.vertices.empty()) {
      if (a.vertices.size() != 6) throw InputError{"--vertices takes P1, P2 and P as six numbers"};
      pts = {DiskPoint(a.vertices[0], a.vertices[1]), DiskPoint(a.vertices[2], a.vertices[3]),
             DiskPoint(a.vertices[4], a.vertices[5])};
    } else {
      if (a.t.size() != 1 || a.r.size() != 1) throw InputError{"need --vertices, or single values for --t and --r"};
      pts = {DiskPoint(0.0, a.t[0]), DiskPoint(0.0, -a.t[0]), DiskPoint(a.r[0], 0.0)};
    }
    const auto res = barbill::tau_n(pts[0], pts[1], pts[2], args.n);
    json roots = json::array();
    for (const auto& w : res.roots) roots.push_back(num(w.turns()));
    out << json{{"n", res.n}, {"count", res.count}, {"roots", roots}}.dump(2) << '\n';
    return int{kOk};
  });
}

int cmd_render(const RenderArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    if (args.steps < 0 || args.steps > 10'000) throw InputError{"--n must lie in [0, 10000]"};
    const Triangle tri = resolve_triangle(args.tri);
    const std::string svg = render_svg(tri, args.steps, classify_options(args.iters, args.qmax));
    if (args.out.empty()) {
      out << svg;
    } else {
      write_file(args.out, svg);
    }
    return int{kOk};
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  return guarded(out, [&] {
    using barbill::Verdict;
    const Triangle tri = resolve_triangle(args.tri);
    const auto res = barbill::conjecture_check(tri, classify_options(args.iters, args.qmax));
    const auto& rep = res.report;
    const auto& rot = res.rotation;
    const bool one_third = rot.certificate && rot.certificate->p == 1 && rot.certificate->q == 3;

    json checks = json::array();
    bool failed = false;
    auto check = [&](const char* name, bool applies, bool holds, bool decidable = true) {
      const char* status = !applies ? "skip" : !decidable ? "uncertified" : holds ? "pass" : "fail";
      failed = failed || (applies && decidable && !holds);
      checks.push_back({{"name", name}, {"status", status}});
    };
    const bool decided = res.verdict != Verdict::Uncertified;
    check("onethird", rep.onethird_any, one_third);
    check("above_onethird", !rep.onethird_any, !one_third && rot.estimate > 1.0 / 3.0 - rot.error_bound);
    check("upper_bound", true, rot.estimate <= 0.5 + rot.error_bound);
    check("twofifths_sandwich", rep.sandwich_any, res.verdict == Verdict::Equals, decided);
    check("all_below_delta2_above", rep.below_delta2_all, res.verdict == Verdict::Above, decided);
    check("isosceles_above", rep.iso_above, res.verdict == Verdict::Above, decided);
    check("isosceles_below", rep.iso_below, res.verdict == Verdict::Below, decided);
    if (res.verdict == Verdict::Equals) {
      const barbill::TangentMap map(barbill::ConvexBody::triangle(tri));
      const auto set = barbill::detect_period5(map);
      bool ok = !set.orbits.empty() && set.orbits.size() <= 6;
      for (const auto& p : set.orbits) ok = ok && barbill::sorted_shift_ok(map, p);
      check("period5_orbits", true, ok);
    } else {
      check("period5_orbits", false, true);
    }
    out << json{{"verdict", barbill::to_string(res.verdict)}, {"consistent", res.consistent}, {"checks", checks},
                {"all_hold", !failed}}
               .dump(2)
        << '\n';
    return failed ? int{kInternal} : int{kOk};
  });
}

}  // namespace bbcli
