#include "hpack/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

namespace hpack {

namespace {

const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f", "#edc948",
                                "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac", "#86bcb6", "#d37295"};
constexpr int kHatches = 4;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

class SolutionPainter {
 public:
  SolutionPainter(const Instance& instance, const Solution& solution) : instance_(instance), solution_(solution) {
    int i = 0;
    for (const auto& id : topological_order(instance)) color_[id] = kPalette[i++ % std::size(kPalette)];
  }

  void block(std::ostringstream& out, const std::string& id, int depth) {
    const Block& b = instance_.block(id);
    const BlockLayout& layout = solution_.layouts.at(id);
    const std::string indent(2 * depth + 2, ' ');
    out << indent << "<rect class=\"block\" data-block=\"" << escape(id) << "\" x=\"0\" y=\"0\" width=\""
        << layout.w << "\" height=\"" << layout.h << "\" fill=\"none\" stroke=\"#222\" stroke-width=\"0.5\"/>\n";
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < layout.placements.size(); ++i) {
      const Placement& p = layout.placements[i];
      const Length y = layout.h - p.y - p.h;
      const auto occ = std::find_if(b.occs.begin(), b.occs.end(), [&](const auto& o) { return o.id == p.id; });
      if (occ == b.occs.end()) {
        out << indent << "<rect class=\"rect\" data-id=\"" << escape(p.id) << "\" x=\"" << p.x << "\" y=\"" << y
            << "\" width=\"" << p.w << "\" height=\"" << p.h << "\" fill=\"" << color_[id]
            << "\" stroke=\"#222\" stroke-width=\"0.2\"/>\n";
        continue;
      }
      const int k = seen[occ->child]++;
      out << indent << "<g class=\"occurrence\" data-id=\"" << escape(p.id) << "\" data-child=\"" << escape(occ->child)
          << "\" transform=\"translate(" << p.x << "," << y << ")\">\n";
      out << indent << "  <rect x=\"0\" y=\"0\" width=\"" << p.w << "\" height=\"" << p.h << "\" fill=\""
          << color_[occ->child] << "\" fill-opacity=\"0.25\"/>\n";
      out << indent << "  <rect x=\"0\" y=\"0\" width=\"" << p.w << "\" height=\"" << p.h
          << "\" fill=\"url(#hatch" << k % kHatches << ")\"/>\n";
      block(out, occ->child, depth + 1);
      out << indent << "</g>\n";
    }
  }

 private:
  const Instance& instance_;
  const Solution& solution_;
  std::map<std::string, std::string> color_;
};

}  // namespace

std::string render_solution_svg(const Instance& instance, const Solution& solution, double scale) {
  const BlockLayout& top = solution.layouts.at(instance.top);
  if (scale <= 0.0) scale = 800.0 / static_cast<double>(std::max<Length>({top.w, top.h, 1}));
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(top.w * scale + 2) << "\" height=\""
      << num(top.h * scale + 2) << "\">\n";
  out << "  <defs>\n";
  const char* const paths[kHatches] = {"M0,4 L4,0", "M0,0 L4,4", "M0,2 L4,2", "M2,0 L2,4"};
  for (int k = 0; k < kHatches; ++k) {
    out << "    <pattern id=\"hatch" << k << "\" width=\"4\" height=\"4\" patternUnits=\"userSpaceOnUse\">"
        << "<path d=\"" << paths[k] << "\" stroke=\"#000\" stroke-opacity=\"0.35\" stroke-width=\"0.4\"/></pattern>\n";
  }
  out << "  </defs>\n";
  out << "  <g class=\"solution\" transform=\"translate(1,1) scale(" << num(scale) << ")\">\n";
  SolutionPainter(instance, solution).block(out, instance.top, 1);
  out << "  </g>\n</svg>\n";
  return out.str();
}

std::string render_frontier_svg(const Json& trace, const std::string& block) {
  std::vector<Json> snaps;
  for (const auto& s : trace.at("frontiers")) {
    if (s.at("block").get<std::string>() == block) snaps.push_back(s);
  }
  if (snaps.empty()) throw Error("trace has no frontier snapshot for block '" + block + "'");
  const Json& last = snaps.back();
  const double area = last.at("area_lb").get<double>();
  const double w_min = last.at("w_min").get<double>();
  const double w_max = last.at("w_max").get<double>();
  const double w_excl = last.at("w_excl").get<double>();
  double h_top = area / w_min;
  for (const auto& st : last.at("steps")) h_top = std::max(h_top, st[1].get<double>());
  for (const auto& s : snaps) {
    for (const char* key : {"plan", "act", "left"}) {
      if (!s.at(key).is_null()) h_top = std::max(h_top, s.at(key)[1].get<double>());
    }
  }
  const double w_hi = w_max * 1.05;
  h_top *= 1.1;

  const double size = 600, pad = 40;
  auto X = [&](double w) { return pad + w / w_hi * size; };
  auto Y = [&](double h) { return pad + size - h / h_top * size; };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(size + 2 * pad) << "\" height=\""
      << num(size + 2 * pad) << "\">\n";
  out << "  <rect x=\"" << num(pad) << "\" y=\"" << num(pad) << "\" width=\"" << num(size) << "\" height=\""
      << num(size) << "\" fill=\"#ddd\"/>\n";
  // Potentially feasible region: above max(hyperbola, staircase), within the admissible widths.
  std::ostringstream region;
  const double w_lo = std::max(w_min, w_excl + 1);
  region << num(X(w_lo)) << "," << num(Y(h_top));
  for (double w = w_lo; w <= w_max; w += std::max(1.0, (w_max - w_lo) / 400)) {
    double h = std::ceil(area / w);
    for (const auto& st : last.at("steps")) {
      if (w <= st[0].get<double>()) h = std::max(h, st[1].get<double>());
    }
    region << " " << num(X(w)) << "," << num(Y(std::min(h, h_top)));
  }
  region << " " << num(X(w_max)) << "," << num(Y(h_top));
  out << "  <polygon class=\"region\" points=\"" << region.str() << "\" fill=\"#fff\"/>\n";
  std::ostringstream hyper;
  for (double w = std::max(1.0, area / h_top); w <= w_hi; w += std::max(0.25, w_hi / 400)) {
    hyper << num(X(w)) << "," << num(Y(area / w)) << " ";
  }
  out << "  <polyline class=\"hyperbola\" points=\"" << hyper.str() << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (const auto& st : last.at("steps")) {
    const double w = st[0].get<double>(), h = st[1].get<double>();
    out << "  <path class=\"step\" d=\"M" << num(X(0)) << "," << num(Y(h)) << " H" << num(X(w)) << " V"
        << num(Y(0)) << "\" fill=\"none\" stroke=\"#c00\"/>\n";
  }
  if (w_excl > 0) {
    out << "  <line class=\"min-width\" x1=\"" << num(X(w_excl)) << "\" y1=\"" << num(Y(0)) << "\" x2=\""
        << num(X(w_excl)) << "\" y2=\"" << num(Y(h_top)) << "\" stroke=\"#00c\"/>\n";
  }
  auto marker = [&](const Json& d, const char* cls, const char* color) {
    if (d.is_null()) return;
    out << "  <circle class=\"" << cls << "\" cx=\"" << num(X(d[0].get<double>())) << "\" cy=\""
        << num(Y(d[1].get<double>())) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
  };
  for (const auto& s : snaps) {
    marker(s.at("plan"), "plan", "#d00");
    marker(s.at("act"), "act", "#080");
    marker(s.at("left"), "left", "#06c");
    if (!s.at("right_w").is_null() && !s.at("left").is_null()) {
      marker(Json::array({s.at("right_w"), s.at("left")[1]}), "right", "#a0a");
    }
  }
  out << "  <text x=\"" << num(pad) << "\" y=\"" << num(pad - 10) << "\" font-size=\"14\">" << escape(block)
      << ": W (horizontal) vs H (vertical)</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace hpack
