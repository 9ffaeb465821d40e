#pragma once

// Serialization: body JSON (arcs / sampled), boundary CSV, bound reports and
// optimizer results. Numbers are written with 17 significant digits so every
// double round-trips exactly.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "abconvex/arc_body.hpp"
#include "abconvex/bounds.hpp"
#include "abconvex/errors.hpp"
#include "abconvex/optimizer.hpp"
#include "abconvex/support.hpp"

namespace abconvex {

using Body = std::variant<ArcBody, SampledSupport>;

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";  // JSON readers drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_array(std::ostream& os, std::span<const double> xs) {
  os << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ',';
    os << format_double(xs[i]);
  }
  os << ']';
}

inline double number_field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) throw ParseError(std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

}  // namespace detail

inline std::string to_json(const ArcBody& body) {
  std::ostringstream os;
  os << R"({"kind":"arcs","alpha":)" << format_double(body.alpha()) << R"(,"beta":)" << format_double(body.beta())
     << R"(,"arcs":[)";
  for (std::size_t k = 0; k < body.arcs().size(); ++k) {
    const Arc& a = body.arcs()[k];
    if (k) os << ',';
    os << R"({"center":[)" << format_double(a.center.x) << ',' << format_double(a.center.y) << R"(],"radius":)"
       << format_double(a.radius) << R"(,"t_start":)" << format_double(a.t_start) << R"(,"t_end":)"
       << format_double(a.t_end) << '}';
  }
  os << "]}";
  return os.str();
}

inline std::string to_json(const SampledSupport& p) {
  std::ostringstream os;
  os << R"({"kind":"sampled","grid_size":)" << p.grid_size() << R"(,"samples":)";
  detail::write_array(os, p.samples());
  os << '}';
  return os.str();
}

inline std::string to_json(const Body& body) {
  return std::visit([](const auto& b) { return to_json(b); }, body);
}

inline Body parse_body(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    throw ParseError("body JSON needs a string field 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  try {
    if (kind == "arcs") {
      if (!j.contains("arcs") || !j.at("arcs").is_array()) throw ParseError("missing array field 'arcs'");
      std::vector<Arc> arcs;
      for (const auto& a : j.at("arcs")) {
        if (!a.is_object() || !a.contains("center") || !a.at("center").is_array() || a.at("center").size() != 2) {
          throw ParseError("arc needs 'center': [x, y]");
        }
        const auto& c = a.at("center");
        if (!c[0].is_number() || !c[1].is_number()) throw ParseError("arc center must be numeric");
        arcs.push_back(Arc{{c[0].get<double>(), c[1].get<double>()},
                           detail::number_field(a, "radius"),
                           detail::number_field(a, "t_start"),
                           detail::number_field(a, "t_end")});
      }
      return ArcBody(std::move(arcs), detail::number_field(j, "alpha"), detail::number_field(j, "beta"));
    }
    if (kind == "sampled") {
      if (!j.contains("samples") || !j.at("samples").is_array()) throw ParseError("missing array field 'samples'");
      std::vector<double> s;
      for (const auto& v : j.at("samples")) {
        if (!v.is_number()) throw ParseError("samples must be numeric");
        s.push_back(v.get<double>());
      }
      if (j.contains("grid_size")) {
        const double m = detail::number_field(j, "grid_size");
        if (m != static_cast<double>(s.size())) throw ParseError("grid_size does not match the number of samples");
      }
      return SampledSupport(std::move(s));
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    // Structurally valid JSON describing an invalid body.
    throw ParseError(e.what());
  }
  throw ParseError("unknown body kind '" + kind + "'");
}

inline Body read_body(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_body(ss.str());
}

// Boundary samples "t,x,y" with a header row and LF line endings.
inline std::string boundary_csv(std::span<const double> t, std::span<const Vec2> pts) {
  std::ostringstream os;
  os << "t,x,y\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    os << format_double(t[i]) << ',' << format_double(pts[i].x) << ',' << format_double(pts[i].y) << '\n';
  }
  return os.str();
}

inline std::string boundary_csv(const ArcBody& body, std::size_t m) {
  require_grid_size(m);
  std::vector<double> t(m);
  std::vector<Vec2> pts(m);
  for (std::size_t i = 0; i < m; ++i) {
    t[i] = grid_node(i, m);
    pts[i] = body.point(t[i]);
  }
  return boundary_csv(t, pts);
}

inline std::string boundary_csv(const SampledSupport& p) {
  std::vector<double> t(p.grid_size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = p.node(i);
  const auto pts = boundary_points(p);
  return boundary_csv(t, pts);
}

inline std::string to_json(const BoundReport& r) {
  std::ostringstream os;
  os << R"({"perimeter":)" << format_double(r.perimeter) << R"(,"area":)" << format_double(r.area) << R"(,"rhs":)"
     << format_double(r.rhs) << R"(,"deficit":)" << format_double(r.deficit) << R"(,"ab_convex":)"
     << (r.ab_convex ? "true" : "false") << R"(,"closure_residual":)" << format_double(r.closure_residual)
     << R"(,"rho_min":)" << format_double(r.band_check.rho_min) << R"(,"rho_max":)"
     << format_double(r.band_check.rho_max) << R"(,"band_tolerance":)" << format_double(r.band_check.tolerance)
     << R"(,"violations":[)";
  for (std::size_t i = 0; i < r.band_check.violations.size(); ++i) {
    if (i) os << ',';
    os << r.band_check.violations[i];
  }
  os << "]}";
  return os.str();
}

struct ResultSummary {
  double rhs = 0.0;
  double egg_rotation = 0.0;
  double egg_distance = 0.0;
};

inline std::string to_json(const OptimizerResult& r, const ResultSummary& s) {
  const BandParams& band = r.control.band();
  std::ostringstream os;
  os << R"({"alpha":)" << format_double(band.alpha()) << R"(,"beta":)" << format_double(band.beta())
     << R"(,"perimeter":)" << format_double(band.perimeter()) << R"(,"seed":)" << r.seed << R"(,"converged":)"
     << (r.converged ? "true" : "false") << R"(,"iterations":)" << r.iterations << R"(,"area":)"
     << format_double(r.area) << R"(,"rhs":)" << format_double(s.rhs) << R"(,"gap":)"
     << format_double(r.area - s.rhs) << R"(,"stationarity":)" << format_double(r.stationarity)
     << R"(,"threshold_gamma":)" << format_double(r.threshold_gamma) << R"(,"threshold_agreement":)"
     << format_double(r.threshold_agreement) << R"(,"bang_fraction":)" << format_double(r.bang_fraction)
     << R"(,"switch_count":)" << r.switch_count << R"(,"sharpened":)" << (r.sharpened ? "true" : "false")
     << R"(,"egg_rotation":)" << format_double(s.egg_rotation) << R"(,"egg_distance":)"
     << format_double(s.egg_distance) << R"(,"grid_size":)" << r.control.size() << R"(,"control":)";
  detail::write_array(os, r.control.values());
  os << R"(,"support":)";
  detail::write_array(os, r.support.samples());
  os << '}';
  return os.str();
}

inline std::string trace_csv(const OptimizerResult& r) {
  std::ostringstream os;
  os << "iter,area,residual\n";
  for (const auto& row : r.trace) {
    os << row.iteration << ',' << format_double(row.area) << ',' << format_double(row.residual) << '\n';
  }
  return os.str();
}

// Writes to a sibling temporary and renames it into place, so readers never
// see a partial file. Throws std::ios_base::failure on I/O errors.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::ios_base::failure("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw std::ios_base::failure("cannot rename into " + path.string());
  }
}

}  // namespace abconvex
