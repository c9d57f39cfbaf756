#pragma once

// Config-driven (K, C) grid sweeps with deterministic CSV output.
//
// Config format: INI-style `key = value` lines under [model], [sweep],
// [output]. '#' or ';' start a comment. [model] takes either dimensionless
// (K, C) or physical (J, B, T) with k_B = 1; giving both is allowed only
// when they agree. [sweep] ranges override the single point from [model].
//
// CSV schema is fixed:
//   model,mode,K,C,s,ln_z,ln_z_mf,bound,per_spin,mutual_info,mf_valid,trivial
// one row per grid point, K-major, LF newlines, shortest round-trip float
// formatting, literal `nan` for unavailable fields. A row whose evaluation
// throws becomes nan + mf_valid=false; the sweep itself never aborts.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "corrbound/bound_core.hpp"
#include "corrbound/couplings.hpp"
#include "corrbound/errors.hpp"
#include "corrbound/heisenberg2.hpp"
#include "corrbound/tfim.hpp"

namespace corrbound::sweep {

enum class Model { Heisenberg2, Tfim, ClassicalIsing };

inline const char* to_string(Model m) {
  switch (m) {
    case Model::Heisenberg2: return "heisenberg2";
    case Model::Tfim: return "tfim";
    case Model::ClassicalIsing: return "classical_ising";
  }
  return "?";
}

struct Range {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;
};

struct SweepConfig {
  Model model = Model::Tfim;
  AverageMode mode = AverageMode::PaperFaithful;
  Range k_range;
  Range c_range;
  std::set<std::string> quantities;  // subset of {bound, mutual_info, s, validity, sandwich}
  std::string output_path = "sweep.csv";
  bool plot = false;
  std::string plot_path = "sweep.svg";
  std::string plot_quantity = "bound";
};

struct SweepRecord {
  Model model = Model::Tfim;
  AverageMode mode = AverageMode::PaperFaithful;
  double k = 0.0;
  double c = 0.0;
  double s = std::numeric_limits<double>::quiet_NaN();
  double ln_z = std::numeric_limits<double>::quiet_NaN();
  double ln_z_mf = std::numeric_limits<double>::quiet_NaN();
  double bound = std::numeric_limits<double>::quiet_NaN();
  bool per_spin = false;
  double mutual_info = std::numeric_limits<double>::quiet_NaN();
  bool mf_valid = false;
  bool trivial = false;
};

namespace detail {

// Shortest decimal that round-trips; the reason CSV bytes are reproducible.
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

inline std::string trim(std::string_view sv) {
  std::size_t a = 0, b = sv.size();
  while (a < b && std::isspace(static_cast<unsigned char>(sv[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(sv[b - 1]))) --b;
  return std::string(sv.substr(a, b - a));
}

inline double parse_double(const std::string& v, int line) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError("expected a number, got '" + v + "'", line);
  }
  return out;
}

inline int parse_int(const std::string& v, int line) {
  int out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size()) {
    throw ParseError("expected an integer, got '" + v + "'", line);
  }
  return out;
}

inline bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError("expected true/false, got '" + v + "'", line);
}

}  // namespace detail

inline SweepConfig parse_config(const std::string& text) {
  SweepConfig cfg;
  std::optional<double> k, c, j, b, t;
  bool mode_given = false;
  bool quantities_given = false;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError("unterminated section header", line_no);
      section = detail::trim(std::string_view(line).substr(1, line.size() - 2));
      if (section != "model" && section != "sweep" && section != "output") {
        throw ParseError("unknown section [" + section + "]", line_no);
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", line_no);
    }
    if (section.empty()) {
      throw ParseError("key before any section header", line_no);
    }
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string val = detail::trim(std::string_view(line).substr(eq + 1));
    if (val.empty()) throw ParseError("empty value for '" + key + "'", line_no);

    if (section == "model") {
      if (key == "model") {
        if (val == "heisenberg2") cfg.model = Model::Heisenberg2;
        else if (val == "tfim") cfg.model = Model::Tfim;
        else if (val == "classical_ising") cfg.model = Model::ClassicalIsing;
        else throw ParseError("unknown model '" + val + "'", line_no);
      } else if (key == "mode") {
        if (val == "paper_faithful") cfg.mode = AverageMode::PaperFaithful;
        else if (val == "exact") cfg.mode = AverageMode::Exact;
        else if (val == "self_consistent") cfg.mode = AverageMode::SelfConsistent;
        else throw ParseError("unknown mode '" + val + "'", line_no);
        mode_given = true;
      } else if (key == "K") k = detail::parse_double(val, line_no);
      else if (key == "C") c = detail::parse_double(val, line_no);
      else if (key == "J") j = detail::parse_double(val, line_no);
      else if (key == "B") b = detail::parse_double(val, line_no);
      else if (key == "T") t = detail::parse_double(val, line_no);
      else throw ParseError("unknown key '" + key + "' in [model]", line_no);
    } else if (section == "sweep") {
      if (key == "k_min") cfg.k_range.min = detail::parse_double(val, line_no);
      else if (key == "k_max") cfg.k_range.max = detail::parse_double(val, line_no);
      else if (key == "k_steps") cfg.k_range.steps = detail::parse_int(val, line_no);
      else if (key == "c_min") cfg.c_range.min = detail::parse_double(val, line_no);
      else if (key == "c_max") cfg.c_range.max = detail::parse_double(val, line_no);
      else if (key == "c_steps") cfg.c_range.steps = detail::parse_int(val, line_no);
      else throw ParseError("unknown key '" + key + "' in [sweep]", line_no);
    } else {  // output
      if (key == "path") cfg.output_path = val;
      else if (key == "plot") cfg.plot = detail::parse_bool(val, line_no);
      else if (key == "plot_path") cfg.plot_path = val;
      else if (key == "plot_quantity") cfg.plot_quantity = val;
      else if (key == "quantities") {
        quantities_given = true;
        std::istringstream qs(val);
        std::string tok;
        while (std::getline(qs, tok, ',')) {
          tok = detail::trim(tok);
          if (tok.empty()) continue;
          if (tok != "bound" && tok != "mutual_info" && tok != "s" &&
              tok != "validity" && tok != "sandwich") {
            throw ParseError("unknown quantity '" + tok + "'", line_no);
          }
          cfg.quantities.insert(tok);
        }
      } else {
        throw ParseError("unknown key '" + key + "' in [output]", line_no);
      }
    }
  }

  // Physical inputs reduce to (K, C) = (J/2T, B/T); disagreement with an
  // explicit (K, C) beyond 1e-9 relative is an error, not a preference.
  if (j || b || t) {
    if (!(j && b && t)) {
      throw ParseError("physical input needs all of J, B, T", line_no);
    }
    if (*t <= 0.0) throw ParseError("T must be > 0", line_no);
    const double k_phys = *j / (2.0 * *t);
    const double c_phys = *b / *t;
    auto differ = [](double x, double y) {
      return std::fabs(x - y) > 1e-9 * std::max({1.0, std::fabs(x), std::fabs(y)});
    };
    if ((k && differ(*k, k_phys)) || (c && differ(*c, c_phys))) {
      throw ConversionError("(K, C) and (J, B, T) disagree");
    }
    k = k_phys;
    c = c_phys;
  }
  if (k) cfg.k_range = Range{*k, *k, 1};
  if (c) cfg.c_range = Range{*c, *c, 1};

  if (cfg.k_range.steps < 1 || cfg.c_range.steps < 1) {
    throw ParseError("steps must be >= 1", 0);
  }
  if (cfg.k_range.min > cfg.k_range.max || cfg.c_range.min > cfg.c_range.max) {
    throw ParseError("range min exceeds max", 0);
  }
  if (!mode_given) {
    cfg.mode = cfg.model == Model::Heisenberg2 ? AverageMode::Exact
                                               : AverageMode::PaperFaithful;
  }
  if (!quantities_given) {
    cfg.quantities = {"bound", "s", "validity"};
    if (cfg.model == Model::Heisenberg2) cfg.quantities.insert("mutual_info");
  }
  if (cfg.quantities.count("mutual_info") && cfg.model != Model::Heisenberg2) {
    throw ParseError("mutual_info is exact only for heisenberg2", 0);
  }
  return cfg;
}

inline std::vector<double> grid_axis(const Range& r) {
  std::vector<double> xs;
  xs.reserve(static_cast<std::size_t>(r.steps));
  if (r.steps == 1) {
    xs.push_back(r.min);
    return xs;
  }
  for (int i = 0; i < r.steps; ++i) {
    xs.push_back(r.min + (r.max - r.min) * i / (r.steps - 1));
  }
  return xs;
}

namespace detail {

inline void eval_point(const SweepConfig& cfg, SweepRecord& rec) {
  const Couplings p{rec.k, rec.c};
  const bool want_bound = cfg.quantities.count("bound") != 0;
  const bool want_s = want_bound || cfg.quantities.count("s") != 0 ||
                      cfg.quantities.count("validity") != 0;

  switch (cfg.model) {
    case Model::ClassicalIsing: {
      if (!want_s) return;
      const MeanFieldSolution sol = classical_ising_mf_solve(p);
      rec.s = sol.principal;
      rec.mf_valid = sol.converged;
      rec.per_spin = true;
      return;
    }
    case Model::Heisenberg2: {
      if (want_s || want_bound) {
        const BoundReport r = heisenberg2::bound(p, cfg.mode);
        rec.s = r.s;
        rec.mf_valid = r.mf_valid;
        rec.trivial = r.trivial;
        rec.per_spin = false;
        if (want_bound) {
          rec.ln_z = r.ln_z;
          rec.ln_z_mf = r.ln_z_mf;
          rec.bound = r.bound;
        }
      }
      if (cfg.quantities.count("mutual_info")) {
        rec.mutual_info = heisenberg2::mutual_information(p);
      }
      if (cfg.quantities.count("sandwich")) {
        const Sandwich sw =
            bogoliubov_sandwich(heisenberg2::model(), p,
                                heisenberg2::sz_mean(p, AverageMode::Exact));
        if (!(sw.lower <= sw.middle + 1e-9 && sw.middle <= sw.upper + 1e-9)) {
          rec.mf_valid = false;
        }
      }
      return;
    }
    case Model::Tfim: {
      if (!want_s && !want_bound) return;
      if (want_bound) {
        const BoundReport r = tfim::bound_per_spin(p, cfg.mode);
        rec.s = r.s;
        rec.ln_z = r.ln_z;
        rec.ln_z_mf = r.ln_z_mf;
        rec.bound = r.bound;
        rec.mf_valid = r.mf_valid;
        rec.trivial = r.trivial;
        rec.per_spin = true;
      } else {
        const MeanFieldSolution sol = tfim::solve_s(p);
        rec.s = sol.principal;
        rec.mf_valid = sol.converged && !sol.out_of_range_detected;
        rec.per_spin = true;
      }
      return;
    }
  }
}

}  // namespace detail

inline std::string csv_header() {
  return "model,mode,K,C,s,ln_z,ln_z_mf,bound,per_spin,mutual_info,mf_valid,trivial";
}

inline std::string to_csv_row(const SweepRecord& r) {
  std::string out;
  out += to_string(r.model);
  out += ',';
  out += corrbound::to_string(r.mode);
  out += ',';
  out += detail::fmt(r.k);
  out += ',';
  out += detail::fmt(r.c);
  out += ',';
  out += detail::fmt(r.s);
  out += ',';
  out += detail::fmt(r.ln_z);
  out += ',';
  out += detail::fmt(r.ln_z_mf);
  out += ',';
  out += detail::fmt(r.bound);
  out += ',';
  out += r.per_spin ? "true" : "false";
  out += ',';
  out += detail::fmt(r.mutual_info);
  out += ',';
  out += r.mf_valid ? "true" : "false";
  out += ',';
  out += r.trivial ? "true" : "false";
  return out;
}

// K-major grid evaluation. Failures become nan rows: regime maps need to
// show where the method breaks, so per-point errors are data.
inline std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  std::vector<SweepRecord> records;
  const std::vector<double> ks = grid_axis(cfg.k_range);
  const std::vector<double> cs = grid_axis(cfg.c_range);
  records.reserve(ks.size() * cs.size());
  for (double kv : ks) {
    for (double cv : cs) {
      SweepRecord rec;
      rec.model = cfg.model;
      rec.mode = cfg.mode;
      rec.k = kv;
      rec.c = cv;
      try {
        detail::eval_point(cfg, rec);
      } catch (const std::exception&) {
        rec.s = std::numeric_limits<double>::quiet_NaN();
        rec.ln_z = std::numeric_limits<double>::quiet_NaN();
        rec.ln_z_mf = std::numeric_limits<double>::quiet_NaN();
        rec.bound = std::numeric_limits<double>::quiet_NaN();
        rec.mutual_info = std::numeric_limits<double>::quiet_NaN();
        rec.mf_valid = false;
      }
      records.push_back(rec);
    }
  }
  return records;
}

inline std::string to_csv(const std::vector<SweepRecord>& records) {
  std::string out = csv_header();
  out += '\n';
  for (const SweepRecord& r : records) {
    out += to_csv_row(r);
    out += '\n';
  }
  return out;
}

inline void write_csv(const std::vector<SweepRecord>& records,
                      const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << to_csv(records);
  if (!f) throw Error("write failed for '" + path + "'");
}

}  // namespace corrbound::sweep
