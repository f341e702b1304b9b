#include <string>

#include <fmt/format.h>

#include "commands.hpp"

namespace bbcli {

namespace {

std::string pt(barbill::Vec2 v) { return format_number(v.x) + "," + format_number(v.y); }

std::string line(barbill::Vec2 a, barbill::Vec2 b, const char* cls) {
  return fmt::format("<line class=\"{}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>\n", cls, format_number(a.x),
                     format_number(a.y), format_number(b.x), format_number(b.y));
}

}  // namespace

std::string render_svg(const barbill::Triangle& tri, int steps, const barbill::ClassifyOptions& opts) {
  using namespace barbill;
  const TangentMap map(ConvexBody::triangle(tri));

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.1 -1.1 2.2 2.2\" width=\"640\" height=\"640\">\n";
  s += "<style>"
       ".traj{stroke:#3366cc;stroke-width:0.003;opacity:0.7}"
       ".star{stroke:#cc2222;stroke-width:0.006}"
       ".bp{fill:#222}"
       "</style>\n";
  // SVG's y axis points down; flip so the picture matches the disk coordinates.
  s += "<g transform=\"scale(1,-1)\">\n";
  s += "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"black\" stroke-width=\"0.005\"/>\n";
  s += "<polygon points=\"" + pt(tri[0].vec()) + " " + pt(tri[1].vec()) + " " + pt(tri[2].vec()) +
       "\" fill=\"#dddddd\" stroke=\"black\" stroke-width=\"0.004\"/>\n";

  if (steps > 0) {
    const auto orbit = map.orbit(IdealPoint::from_turns(0.0), steps);
    s += "<g class=\"trajectory\">\n";
    for (std::size_t k = 0; k + 1 < orbit.size(); ++k) s += line(orbit[k].vec(), orbit[k + 1].vec(), "traj");
    s += "</g>\n";

    s += "<g class=\"breakpoints\">\n";
    for (const auto& b : map.breakpoints()) {
      s += fmt::format("<circle class=\"bp\" cx=\"{}\" cy=\"{}\" r=\"0.015\"/>\n", format_number(b.u.vec().x),
                       format_number(b.u.vec().y));
    }
    s += "</g>\n";

    const RotationResult rho = classify_rho(map, opts);
    if (rho.certificate && rho.certificate->p == 2 && rho.certificate->q == 5) {
      const OrbitSet set = detect_period5(map);
      if (!set.orbits.empty()) {
        s += "<g class=\"pentagram\">\n";
        for (const auto& e : set.orbits.front().edges) s += line(e.a.vec(), e.b.vec(), "star");
        s += "</g>\n";
      }
    }
  }
  s += "</g>\n</svg>\n";
  return s;
}

}  // namespace bbcli
