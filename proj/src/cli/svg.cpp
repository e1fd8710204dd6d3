#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "frogsim/cli.hpp"

namespace frogsim::cli {
namespace {

constexpr double kPlot = 600.0;
constexpr double kMargin = 50.0;

std::string px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

double snap(double x) { return std::round(x * 1e4) / 1e4; }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

// Cell edges: midpoints between neighbours, clipped to the outer grid points.
std::vector<double> edges_of(const std::vector<double>& v) {
  std::vector<double> e{v.front()};
  for (std::size_t i = 1; i < v.size(); ++i) e.push_back(0.5 * (v[i - 1] + v[i]));
  e.push_back(v.back());
  return e;
}

struct Axis {
  double lo, hi;
  double map(double x) const {
    const double span = hi > lo ? hi - lo : 1.0;
    return (x - lo) / span * kPlot;
  }
};

}  // namespace

std::string class_fill(Region cls) {
  switch (cls) {
    case Region::TransientBranching: return "#bfbfbf";
    case Region::TransientAllAwake: return "#d9d9d9";
    case Region::CertifiedRecurrent: return "#3366cc";
    case Region::Unknown: return "#ffffff";
  }
  return "#ffffff";
}

std::string render_phase_svg(const std::vector<SweepRow>& rows,
                             const std::vector<Certificate>& certificates) {
  if (rows.empty()) throw std::invalid_argument("no rows to plot");
  std::set<double> ps, qs;
  std::map<std::pair<double, double>, Region> cells;
  for (const auto& r : rows) {
    ps.insert(r.p);
    qs.insert(r.q);
    if (!cells.emplace(std::pair{r.p, r.q}, r.cls).second) {
      throw std::invalid_argument("duplicate grid cell");
    }
  }
  if (cells.size() != ps.size() * qs.size()) {
    throw std::invalid_argument("rows do not form a complete grid");
  }
  const std::vector<double> pv(ps.begin(), ps.end());
  const std::vector<double> qv(qs.begin(), qs.end());
  const auto pe = edges_of(pv);
  const auto qe = edges_of(qv);
  const Axis ax{pv.front(), pv.back()};
  const Axis ay{qv.front(), qv.back()};
  auto to_x = [&](double p) { return kMargin + ax.map(p); };
  auto to_y = [&](double q) { return kMargin + kPlot - ay.map(q); };

  std::ostringstream os;
  const double size = kPlot + 2 * kMargin;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(size + 160)
     << "\" height=\"" << px(size) << "\" viewBox=\"0 0 " << px(size + 160) << ' '
     << px(size) << "\">\n";
  os << "<title>(p, q) phase diagram, d = " << rows.front().d << "</title>\n";
  os << "<g id=\"cells\" shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < pv.size(); ++i) {
    for (std::size_t j = 0; j < qv.size(); ++j) {
      const Region cls = cells.at({pv[i], qv[j]});
      // Edges snapped to the printed grid so neighbouring cells tile exactly.
      const double x0 = snap(to_x(pe[i])), x1 = snap(to_x(pe[i + 1]));
      const double y0 = snap(to_y(qe[j + 1])), y1 = snap(to_y(qe[j]));
      // A single distinct value on an axis fills the whole span.
      const double w = pv.size() == 1 ? kPlot : x1 - x0;
      const double h = qv.size() == 1 ? kPlot : y1 - y0;
      os << "<rect x=\"" << px(pv.size() == 1 ? kMargin : x0) << "\" y=\""
         << px(qv.size() == 1 ? kMargin : y0) << "\" width=\"" << px(w)
         << "\" height=\"" << px(h) << "\" fill=\"" << class_fill(cls) << "\"/>\n";
    }
  }
  os << "</g>\n";

  os << "<g id=\"certificates\" fill=\"none\" stroke=\"#1f3f99\" stroke-width=\"2\">\n";
  for (const auto& c : certificates) {
    const double p0 = std::max(c.p_interval.lo, ax.lo), p1 = std::min(c.p_interval.hi, ax.hi);
    const double q0 = std::max(c.q_interval.lo, ay.lo), q1 = std::min(c.q_interval.hi, ay.hi);
    if (p0 > p1 || q0 > q1) continue;
    os << "<rect x=\"" << px(to_x(p0)) << "\" y=\"" << px(to_y(q1)) << "\" width=\""
       << px(std::max(to_x(p1) - to_x(p0), 1.0)) << "\" height=\""
       << px(std::max(to_y(q0) - to_y(q1), 1.0)) << "\"/>\n";
  }
  os << "</g>\n";

  os << "<g id=\"axes\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect x=\"" << px(kMargin) << "\" y=\"" << px(kMargin) << "\" width=\"" << px(kPlot)
     << "\" height=\"" << px(kPlot) << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << px(kMargin) << "\" y=\"" << px(kMargin + kPlot + 16) << "\">"
     << format_number(ax.lo) << "</text>\n";
  os << "<text x=\"" << px(kMargin + kPlot) << "\" y=\"" << px(kMargin + kPlot + 16)
     << "\" text-anchor=\"end\">" << format_number(ax.hi) << "</text>\n";
  os << "<text x=\"" << px(kMargin + kPlot / 2) << "\" y=\"" << px(kMargin + kPlot + 34)
     << "\" text-anchor=\"middle\">p</text>\n";
  os << "<text x=\"" << px(kMargin - 6) << "\" y=\"" << px(kMargin + kPlot)
     << "\" text-anchor=\"end\">" << format_number(ay.lo) << "</text>\n";
  os << "<text x=\"" << px(kMargin - 6) << "\" y=\"" << px(kMargin + 10)
     << "\" text-anchor=\"end\">" << format_number(ay.hi) << "</text>\n";
  os << "<text x=\"" << px(kMargin - 30) << "\" y=\"" << px(kMargin + kPlot / 2)
     << "\" text-anchor=\"middle\">q</text>\n";
  os << "</g>\n";

  os << "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n";
  double ly = kMargin;
  for (auto cls : {Region::TransientBranching, Region::TransientAllAwake,
                   Region::CertifiedRecurrent, Region::Unknown}) {
    os << "<rect x=\"" << px(size) << "\" y=\"" << px(ly) << "\" width=\"14\" height=\"14\" fill=\""
       << class_fill(cls) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << px(size + 20) << "\" y=\"" << px(ly + 12) << "\">"
       << escape(to_string(cls)) << "</text>\n";
    ly += 22;
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace frogsim::cli
