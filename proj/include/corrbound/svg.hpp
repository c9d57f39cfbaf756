#pragma once

// Deterministic SVG heat maps of sweep records over the (K, C) plane.
//
// Output is plain text with a fixed 800x600 viewBox, a fixed 64-step
// colour table interpolated from five viridis anchors, and no timestamps
// or environment-dependent content: identical records give identical
// bytes, which is what makes golden-file testing of plots possible.
// Cells with nan values are drawn grey.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "corrbound/errors.hpp"
#include "corrbound/sweep.hpp"

namespace corrbound::svg {

namespace detail {

struct Rgb {
  double r, g, b;
};

// Five-anchor viridis approximation, quantized to 64 steps.
inline std::string palette_hex(int bin) {
  static const Rgb anchors[5] = {{68, 1, 84},
                                 {59, 82, 139},
                                 {33, 145, 140},
                                 {94, 201, 98},
                                 {253, 231, 37}};
  const double t = std::clamp(bin, 0, 63) / 63.0;
  const double pos = t * 4.0;
  const int seg = std::min(static_cast<int>(pos), 3);
  const double frac = pos - seg;
  auto mix = [&](double a, double b) { return a + (b - a) * frac; };
  const int r = static_cast<int>(std::lround(mix(anchors[seg].r, anchors[seg + 1].r)));
  const int g = static_cast<int>(std::lround(mix(anchors[seg].g, anchors[seg + 1].g)));
  const int b = static_cast<int>(std::lround(mix(anchors[seg].b, anchors[seg + 1].b)));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

inline double quantity_of(const sweep::SweepRecord& r, const std::string& q) {
  if (q == "bound") return r.bound;
  if (q == "mutual_info") return r.mutual_info;
  if (q == "s") return r.s;
  if (q == "ln_z") return r.ln_z;
  if (q == "ln_z_mf") return r.ln_z_mf;
  throw std::invalid_argument("unknown plot quantity '" + q + "'");
}

}  // namespace detail

// Heat map of one record field over the grid the records came from.
// Records must tile a complete K x C rectangle (any order); otherwise
// NonRectangularGrid.
inline std::string render_heatmap(const std::vector<sweep::SweepRecord>& records,
                                  const std::string& quantity) {
  if (records.empty()) throw NonRectangularGrid("no records to plot");

  std::set<double> kset, cset;
  std::map<std::pair<double, double>, double> cells;
  for (const auto& r : records) {
    kset.insert(r.k);
    cset.insert(r.c);
    if (!cells.emplace(std::make_pair(r.k, r.c), detail::quantity_of(r, quantity))
             .second) {
      throw NonRectangularGrid("duplicate grid point in records");
    }
  }
  const std::vector<double> ks(kset.begin(), kset.end());
  const std::vector<double> cs(cset.begin(), cset.end());
  if (records.size() != ks.size() * cs.size()) {
    throw NonRectangularGrid("records do not tile a complete K x C grid");
  }

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& [key, v] : cells) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const bool any_finite = lo <= hi;
  const double span = hi - lo;

  auto bin_of = [&](double v) {
    if (!any_finite || !(span > 0.0)) return 0;
    return std::clamp(static_cast<int>((v - lo) / span * 64.0), 0, 63);
  };

  // Fixed frame: plot area 80..680 x 40..540, colour bar at x = 700.
  const double px0 = 80, px1 = 680, py0 = 40, py1 = 540;
  const double cw = (px1 - px0) / static_cast<double>(ks.size());
  const double ch = (py1 - py0) / static_cast<double>(cs.size());
  auto f = sweep::detail::fmt;

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"#ffffff\"/>\n";
  out += "<text x=\"380\" y=\"24\" font-family=\"monospace\" font-size=\"16\" "
         "text-anchor=\"middle\">" + quantity + "</text>\n";

  for (std::size_t ki = 0; ki < ks.size(); ++ki) {
    for (std::size_t ci = 0; ci < cs.size(); ++ci) {
      const double v = cells.at({ks[ki], cs[ci]});
      const std::string fill =
          std::isfinite(v) ? detail::palette_hex(bin_of(v)) : "#808080";
      const double x = px0 + cw * static_cast<double>(ki);
      const double y = py1 - ch * static_cast<double>(ci + 1);  // C grows upward
      out += "<rect x=\"" + f(x) + "\" y=\"" + f(y) + "\" width=\"" + f(cw) +
             "\" height=\"" + f(ch) + "\" fill=\"" + fill + "\"/>\n";
    }
  }

  // Colour bar, low at the bottom.
  const double bar_h = (py1 - py0) / 64.0;
  for (int i = 0; i < 64; ++i) {
    const double y = py1 - bar_h * (i + 1);
    out += "<rect x=\"700\" y=\"" + f(y) + "\" width=\"24\" height=\"" + f(bar_h) +
           "\" fill=\"" + detail::palette_hex(i) + "\"/>\n";
  }
  const std::string lo_txt = any_finite ? f(lo) : "nan";
  const std::string hi_txt = any_finite ? f(hi) : "nan";
  out += "<text x=\"730\" y=\"" + f(py1) +
         "\" font-family=\"monospace\" font-size=\"12\">" + lo_txt + "</text>\n";
  out += "<text x=\"730\" y=\"" + f(py0 + 12) +
         "\" font-family=\"monospace\" font-size=\"12\">" + hi_txt + "</text>\n";

  // Axes: K rightward, C upward.
  out += "<text x=\"380\" y=\"580\" font-family=\"monospace\" font-size=\"14\" "
         "text-anchor=\"middle\">K</text>\n";
  out += "<text x=\"30\" y=\"290\" font-family=\"monospace\" font-size=\"14\">C</text>\n";
  out += "<text x=\"" + f(px0) + "\" y=\"560\" font-family=\"monospace\" "
         "font-size=\"12\">" + f(ks.front()) + "</text>\n";
  out += "<text x=\"" + f(px1) + "\" y=\"560\" font-family=\"monospace\" "
         "font-size=\"12\" text-anchor=\"end\">" + f(ks.back()) + "</text>\n";
  out += "<text x=\"72\" y=\"" + f(py1) + "\" font-family=\"monospace\" "
         "font-size=\"12\" text-anchor=\"end\">" + f(cs.front()) + "</text>\n";
  out += "<text x=\"72\" y=\"" + f(py0 + 12) + "\" font-family=\"monospace\" "
         "font-size=\"12\" text-anchor=\"end\">" + f(cs.back()) + "</text>\n";
  out += "</svg>\n";
  return out;
}

inline void emit_plot(const std::vector<sweep::SweepRecord>& records,
                      const std::string& quantity, const std::string& path) {
  const std::string body = render_heatmap(records, quantity);
  std::ofstream fs(path, std::ios::binary);
  if (!fs) throw Error("cannot open '" + path + "' for writing");
  fs << body;
  if (!fs) throw Error("write failed for '" + path + "'");
}

}  // namespace corrbound::svg
