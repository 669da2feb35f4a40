#pragma once

// JSON and CSV serialization for series, boundary data, regions, Gram systems
// and indicator curves.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "nrtlab/errors.hpp"
#include "nrtlab/geometry.hpp"
#include "nrtlab/harmonic.hpp"
#include "nrtlab/indicator.hpp"

namespace nrtlab {

using json = nlohmann::ordered_json;

/// Malformed serialized input.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

// Non-finite doubles become null; null reads back as +inf.
inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline double read_number(const json& j, const char* what) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw FormatError(std::string(what) + ": expected a number");
  return j.get<double>();
}

template <class J>
const auto& field(const J& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::vector<double> read_array(const json& j, const char* key, std::size_t expected) {
  const json& a = field(j, key);
  if (!a.is_array()) throw FormatError(std::string(key) + ": expected an array");
  if (a.size() != expected)
    throw FormatError(std::string(key) + ": expected " + std::to_string(expected) + " entries, got " +
                      std::to_string(a.size()));
  std::vector<double> out;
  for (const auto& v : a) out.push_back(read_number(v, key));
  return out;
}

inline int read_order(const json& j) {
  const json& n = field(j, "max_order");
  if (!n.is_number_integer() || n.get<int>() < 0) throw FormatError("max_order must be a non-negative integer");
  return n.get<int>();
}

}  // namespace detail

// --- HarmonicSeries: regular arrays hold n = 0..N, singular arrays n = 1..N.

inline json to_json(const HarmonicSeries& s) {
  const int N = s.max_order();
  json rc = json::array(), rs = json::array(), sc = json::array(), ss = json::array();
  for (int n = 0; n <= N; ++n) {
    rc.push_back(s.regular_cos(n));
    rs.push_back(s.regular_sin(n));
    if (n >= 1) {
      sc.push_back(s.singular_cos(n));
      ss.push_back(s.singular_sin(n));
    }
  }
  return json{{"max_order", N},      {"regular_cos", rc},  {"regular_sin", rs},
              {"singular_cos", sc},  {"singular_sin", ss}, {"log_coeff", s.log_coeff()}};
}

inline HarmonicSeries series_from_json(const json& j) {
  const int N = detail::read_order(j);
  const auto n1 = static_cast<std::size_t>(N) + 1;
  const auto rc = detail::read_array(j, "regular_cos", n1);
  const auto rs = detail::read_array(j, "regular_sin", n1);
  const auto sc = detail::read_array(j, "singular_cos", n1 - 1);
  const auto ss = detail::read_array(j, "singular_sin", n1 - 1);
  if (rs[0] != 0.0) throw FormatError("regular_sin[0] must be zero");
  HarmonicSeries s(N);
  for (int n = 0; n <= N; ++n) {
    const auto k = static_cast<std::size_t>(n);
    s.regular_cos(n) = rc[k];
    if (n >= 1) {
      s.regular_sin(n) = rs[k];
      s.singular_cos(n) = sc[k - 1];
      s.singular_sin(n) = ss[k - 1];
    }
  }
  s.log_coeff() = detail::read_number(detail::field(j, "log_coeff"), "log_coeff");
  return s;
}

// --- BoundaryData: cos holds n = 0..N, sin n = 1..N.

inline json to_json(const BoundaryData& g) {
  json c = json::array(), s = json::array();
  for (int n = 0; n <= g.max_order(); ++n) {
    c.push_back(g.cos_coeff(n));
    if (n >= 1) s.push_back(g.sin_coeff(n));
  }
  return json{{"max_order", g.max_order()}, {"cos", c}, {"sin", s}};
}

inline BoundaryData boundary_from_json(const json& j) {
  const int N = detail::read_order(j);
  const auto c = detail::read_array(j, "cos", static_cast<std::size_t>(N) + 1);
  const auto s = detail::read_array(j, "sin", static_cast<std::size_t>(N));
  BoundaryData g(N);
  for (int n = 0; n <= N; ++n) {
    g.cos_coeff(n) = c[static_cast<std::size_t>(n)];
    if (n >= 1) g.sin_coeff(n) = s[static_cast<std::size_t>(n) - 1];
  }
  return g;
}

// --- Regions

inline json to_json(const DiskRegion& d) {
  return json{{"shape", "disk"}, {"center", {d.center().x, d.center().y}}, {"radius", d.radius()}};
}

inline DiskRegion region_from_json(const json& j) {
  const json& shape = detail::field(j, "shape");
  if (!shape.is_string() || shape.get<std::string>() != "disk")
    throw FormatError("only shape \"disk\" is supported");
  const json& c = detail::field(j, "center");
  if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
    throw FormatError("center must be [x, y]");
  const json& r = detail::field(j, "radius");
  if (!r.is_number()) throw FormatError("radius must be a number");
  try {
    return DiskRegion({c[0].get<double>(), c[1].get<double>()}, r.get<double>());
  } catch (const PreconditionError& e) {
    throw FormatError(e.what());
  }
}

// --- Matrices

inline json to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(detail::finite_or_null(v(i)));
  return a;
}

inline json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(to_json(Eigen::VectorXd(m.row(i).transpose())));
  return rows;
}

inline Eigen::VectorXd vector_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = detail::read_number(j[i], "vector");
  return v;
}

inline Eigen::MatrixXd matrix_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Eigen::VectorXd r = vector_from_json(j[static_cast<std::size_t>(i)]);
    if (r.size() != cols) throw FormatError("ragged matrix");
    m.row(i) = r.transpose();
  }
  return m;
}

// --- GramSystem

inline Preconditioning preconditioning_from_string(const std::string& s) {
  for (Preconditioning p : {Preconditioning::None, Preconditioning::RadialPower, Preconditioning::Jacobi})
    if (s == to_string(p)) return p;
  throw FormatError("unknown preconditioning '" + s + "'");
}

inline json to_json(const GramSystem& sys) {
  json regions = json::array();
  for (const auto& d : sys.region) regions.push_back(to_json(d));
  return json{{"order", sys.order},
              {"outer_radius", sys.outer_radius},
              {"eigen_floor", sys.eigen_floor},
              {"preconditioning", to_string(sys.preconditioning)},
              {"region", regions},
              {"Q", to_json(sys.Q)},
              {"b", to_json(sys.b)}};
}

inline GramSystem gram_from_json(const json& j) {
  GramSystem sys;
  sys.order = detail::field(j, "order").get<int>();
  sys.outer_radius = detail::field(j, "outer_radius").get<double>();
  sys.eigen_floor = detail::field(j, "eigen_floor").get<double>();
  sys.preconditioning = preconditioning_from_string(detail::field(j, "preconditioning").get<std::string>());
  for (const auto& r : detail::field(j, "region")) sys.region.push_back(region_from_json(r));
  sys.Q = matrix_from_json(detail::field(j, "Q"));
  sys.b = vector_from_json(detail::field(j, "b"));
  const auto n = basis_size(sys.order);
  if (sys.Q.rows() != n || sys.Q.cols() != n || sys.b.size() != n)
    throw FormatError("Gram system dimensions do not match its order");
  return sys;
}

// --- IndicatorCurve

inline Verdict verdict_from_string(const std::string& s) {
  for (Verdict v : {Verdict::Bounded, Verdict::BlowUp, Verdict::Inconclusive})
    if (s == to_string(v)) return v;
  throw FormatError("unknown verdict '" + s + "'");
}

inline ParameterAxis axis_from_string(const std::string& s) {
  for (ParameterAxis a : {ParameterAxis::TruncationOrder, ParameterAxis::Offset, ParameterAxis::Epsilon})
    if (s == to_string(a)) return a;
  throw FormatError("unknown parameter axis '" + s + "'");
}

inline json to_json(const IndicatorCurve& c) {
  auto arr = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(detail::finite_or_null(x));
    return a;
  };
  json flags = json::array();
  for (bool b : c.unbounded_flags) flags.push_back(b);
  return json{{"axis", to_string(c.axis)},
              {"eps", c.eps},
              {"parameters", arr(c.parameters)},
              {"values", arr(c.values)},
              {"verdict", to_string(c.verdict)},
              {"growth_ratios", arr(c.growth_ratios)},
              {"cond_numbers", arr(c.cond_numbers)},
              {"discarded_shares", arr(c.discarded_shares)},
              {"unbounded_flags", flags}};
}

inline IndicatorCurve curve_from_json(const json& j) {
  auto arr = [&j](const char* key) {
    std::vector<double> out;
    for (const auto& v : detail::field(j, key)) out.push_back(detail::read_number(v, key));
    return out;
  };
  IndicatorCurve c;
  c.axis = axis_from_string(detail::field(j, "axis").get<std::string>());
  c.eps = detail::field(j, "eps").get<double>();
  c.parameters = arr("parameters");
  c.values = arr("values");
  c.verdict = verdict_from_string(detail::field(j, "verdict").get<std::string>());
  c.growth_ratios = arr("growth_ratios");
  c.cond_numbers = arr("cond_numbers");
  c.discarded_shares = arr("discarded_shares");
  for (const auto& b : detail::field(j, "unbounded_flags")) c.unbounded_flags.push_back(b.get<bool>());
  if (c.values.size() != c.parameters.size()) throw FormatError("curve parameters and values differ in length");
  return c;
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

/// Round-trip decimal form of a double.
[[nodiscard]] inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

class CsvTable {
 public:
  CsvTable() = default;
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  [[nodiscard]] const std::vector<std::string>& header() const { return header_; }
  [[nodiscard]] std::size_t rows() const { return rows_.size(); }
  [[nodiscard]] const std::vector<std::string>& row(std::size_t i) const { return rows_.at(i); }

  class RowBuilder {
   public:
    explicit RowBuilder(std::vector<std::string>& cells) : cells_(cells) {}
    RowBuilder& operator<<(double v) {
      cells_.push_back(format_double(v));
      return *this;
    }
    RowBuilder& operator<<(int v) {
      cells_.push_back(std::to_string(v));
      return *this;
    }
    RowBuilder& operator<<(long v) {
      cells_.push_back(std::to_string(v));
      return *this;
    }
    RowBuilder& operator<<(bool v) {
      cells_.push_back(v ? "true" : "false");
      return *this;
    }
    RowBuilder& operator<<(const std::string& v) {
      cells_.push_back(v);
      return *this;
    }
    RowBuilder& operator<<(const char* v) { return *this << std::string(v); }

   private:
    std::vector<std::string>& cells_;
  };

  RowBuilder add_row() {
    rows_.emplace_back();
    return RowBuilder(rows_.back());
  }

  [[nodiscard]] std::string str() const {
    std::ostringstream os;
    write_line(os, header_);
    for (const auto& r : rows_) {
      if (r.size() != header_.size()) throw std::logic_error("CSV row width does not match header");
      write_line(os, r);
    }
    return os.str();
  }

 private:
  static std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
      if (ch == '"') out += '"';
      out += ch;
    }
    return out + '"';
  }
  static void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << quote(cells[i]);
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Sweep export with the columns N_or_t, eps, value, cond_Q, discarded_share, verdict.
[[nodiscard]] inline CsvTable curve_csv(const IndicatorCurve& c) {
  CsvTable t({"N_or_t", "eps", "value", "cond_Q", "discarded_share", "verdict"});
  for (std::size_t i = 0; i < c.values.size(); ++i)
    t.add_row() << c.parameters[i] << c.eps << c.values[i]
                << (i < c.cond_numbers.size() ? c.cond_numbers[i] : std::nan(""))
                << (i < c.discarded_shares.size() ? c.discarded_shares[i] : std::nan(""))
                << to_string(c.verdict);
  return t;
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << content;
  if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace nrtlab
