#pragma once

#include <json.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "classical.hpp"
#include "core.hpp"
#include "orbifold.hpp"
#include "oscillator.hpp"
#include "polarizations.hpp"
#include "sections.hpp"

namespace bundleqm::io {

using json = nlohmann::json;

/// 17 significant digits, lowercase exponent: lossless and byte-stable.
inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

namespace detail {

inline void dump(const json& j, std::string& out, int indent, int depth) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      // object_t is an ordered std::map, so keys come out sorted
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump(it.value(), out, indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric pairs stay on one line
      const bool flat = j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_number(); });
      out += '[';
      for (std::size_t k = 0; k < j.size(); ++k) {
        if (k) out += flat && indent >= 0 ? ", " : ",";
        if (!flat) newline(depth + 1);
        dump(j[k], out, indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: out += format_double(j.get<double>()); return;
    default: out += j.dump(); return;
  }
}

}  // namespace detail

inline std::string dump_json(const json& j, int indent = 2) {
  std::string out;
  detail::dump(j, out, indent, 0);
  out += '\n';
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::IoError, what + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Spectrum and trajectories.

/// [{E, n, q_l, q_v}] for q_v = +1 then -1, n = 0..n_max.
inline json spectrum_json(int n_max, const OscillatorParams& params) {
  if (n_max < 0) throw Error(ErrorKind::InvalidArgument, "n_max must be non-negative");
  json out = json::array();
  for (int q : {1, -1})
    for (int n = 0; n <= n_max; ++n) {
      const auto lvl = oscillator::energy_level(n, QuantumCharge{q}, params);
      out.push_back({{"E", lvl.E}, {"n", lvl.n}, {"q_l", lvl.q_l}, {"q_v", lvl.q_v}});
    }
  return out;
}

inline std::string trajectory_csv(const std::vector<classical::TrajectorySample>& rows) {
  std::string out = "t,x,p,re_z,im_z\n";
  for (const auto& r : rows) {
    out += format_double(r.t) + ',' + format_double(r.point.x) + ',' + format_double(r.point.p) + ',' +
           format_double(r.z.real()) + ',' + format_double(r.z.imag()) + '\n';
  }
  return out;
}

// ---------------------------------------------------------------------------
// GridSection files. CSV: header x,p,re,im with rows in row-major order.
// Binary: uint64 nx, uint64 np, then x_min, x_max, p_min, p_max and the
// interleaved (re, im) values, all little-endian.

inline std::string section_csv(const GridSection& sec) {
  std::string out = "x,p,re,im\n";
  for (std::size_t i = 0; i < sec.grid.x.n; ++i)
    for (std::size_t j = 0; j < sec.grid.p.n; ++j) {
      const cplx v = sec.at(i, j);
      out += format_double(sec.grid.x.at(i)) + ',' + format_double(sec.grid.p.at(j)) + ',' +
             format_double(v.real()) + ',' + format_double(v.imag()) + '\n';
    }
  return out;
}

namespace detail {

inline void put_u64(std::string& s, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) s += static_cast<char>((v >> (8 * k)) & 0xff);
}

inline void put_f64(std::string& s, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, sizeof v);
  put_u64(s, v);
}

inline std::uint64_t get_u64(const std::string& s, std::size_t at) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[at + k])) << (8 * k);
  return v;
}

inline double get_f64(const std::string& s, std::size_t at) {
  const std::uint64_t v = get_u64(s, at);
  double d;
  std::memcpy(&d, &v, sizeof d);
  return d;
}

}  // namespace detail

inline std::string section_binary(const GridSection& sec) {
  std::string out;
  out.reserve(48 + 16 * sec.values.size());
  detail::put_u64(out, sec.grid.x.n);
  detail::put_u64(out, sec.grid.p.n);
  for (double d : {sec.grid.x.min, sec.grid.x.max, sec.grid.p.min, sec.grid.p.max}) detail::put_f64(out, d);
  for (const cplx& v : sec.values) {
    detail::put_f64(out, v.real());
    detail::put_f64(out, v.imag());
  }
  return out;
}

inline GridSection parse_section_binary(const std::string& bytes, QuantumCharge charge) {
  if (bytes.size() < 48) throw Error(ErrorKind::IoError, "binary section header truncated");
  const std::uint64_t nx = detail::get_u64(bytes, 0);
  const std::uint64_t np = detail::get_u64(bytes, 8);
  if (nx == 0 || np == 0 || nx > (1u << 24) || np > (1u << 24) || bytes.size() != 48 + 16 * nx * np)
    throw Error(ErrorKind::IoError, "binary section size does not match its header");
  GridSection sec{{{detail::get_f64(bytes, 16), detail::get_f64(bytes, 24), nx},
                   {detail::get_f64(bytes, 32), detail::get_f64(bytes, 40), np}},
                  std::vector<cplx>(nx * np),
                  charge};
  for (std::size_t k = 0; k < sec.values.size(); ++k)
    sec.values[k] = {detail::get_f64(bytes, 48 + 16 * k), detail::get_f64(bytes, 56 + 16 * k)};
  sec.validate();
  return sec;
}

inline GridSection parse_section_csv(const std::string& text, QuantumCharge charge) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("x,p,re,im", 0) != 0)
    throw Error(ErrorKind::IoError, "section CSV must start with header x,p,re,im");
  std::vector<std::array<double, 4>> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::array<double, 4> r{};
    std::istringstream ls(line);
    std::string cell;
    for (int c = 0; c < 4; ++c) {
      if (!std::getline(ls, cell, ',')) throw Error(ErrorKind::IoError, "short CSV row: " + line);
      try {
        r[c] = std::stod(cell);
      } catch (const std::exception&) {
        throw Error(ErrorKind::IoError, "bad number in CSV row: " + line);
      }
    }
    rows.push_back(r);
  }
  if (rows.empty()) throw Error(ErrorKind::IoError, "section CSV has no rows");
  std::size_t np = 1;
  while (np < rows.size() && rows[np][0] == rows[0][0]) ++np;
  if (rows.size() % np != 0) throw Error(ErrorKind::IoError, "section CSV is not a full grid");
  const std::size_t nx = rows.size() / np;
  GridSection sec{{{rows.front()[0], rows.back()[0], nx}, {rows.front()[1], rows[np - 1][1], np}},
                  std::vector<cplx>(rows.size()),
                  charge};
  for (std::size_t k = 0; k < rows.size(); ++k) sec.values[k] = {rows[k][2], rows[k][3]};
  sec.validate();
  return sec;
}

inline bool is_binary_path(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".bin") return true;
  if (ext == ".csv") return false;
  throw Error(ErrorKind::IoError, "unknown section format '" + ext + "' (use .csv or .bin)");
}

inline void write_section(const std::filesystem::path& path, const GridSection& sec) {
  sec.validate();
  write_text(path, is_binary_path(path) ? section_binary(sec) : section_csv(sec));
}

inline GridSection read_section(const std::filesystem::path& path,
                                QuantumCharge charge = QuantumCharge::particle()) {
  const bool binary = is_binary_path(path);
  const std::string data = read_text(path);
  return binary ? parse_section_binary(data, charge) : parse_section_csv(data, charge);
}

// ---------------------------------------------------------------------------
// Fock states and loops.

inline json to_json(const polarizations::FockState& s) {
  json coeffs = json::array();
  for (const cplx& c : s.coeffs) coeffs.push_back(json::array({c.real(), c.imag()}));
  return {{"charge", s.charge.q_v}, {"coeffs", coeffs}, {"w", s.w}};
}

inline cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw Error(ErrorKind::IoError, "expected a number or an [re, im] pair");
}

inline polarizations::FockState fock_from_json(const json& j) {
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw Error(ErrorKind::IoError, "Fock state JSON needs a coeffs array");
  polarizations::FockState s;
  s.coeffs.clear();
  for (const json& c : j["coeffs"]) s.coeffs.push_back(complex_from_json(c));
  if (j.contains("charge")) s.charge = QuantumCharge{j["charge"].get<int>()};
  if (j.contains("w")) s.w = j["w"].get<double>();
  require_unit_charge(s.charge);
  s.validate();
  return s;
}

/// Either [[re, im], ...] or {shape, center, radius, samples}; shapes are
/// circle, square (radius = half side, samples per edge) and ellipse
/// (optional `aspect` for the minor axis, default 0.5).
inline orbifold::Loop loop_from_json(const json& j) {
  if (j.is_array()) {
    orbifold::Loop loop;
    for (const json& e : j) loop.push_back(complex_from_json(e));
    return loop;
  }
  if (!j.is_object() || !j.contains("shape")) throw Error(ErrorKind::IoError, "loop JSON needs a shape");
  const std::string shape = j["shape"].get<std::string>();
  const cplx center = j.contains("center") ? complex_from_json(j["center"]) : cplx{};
  const double radius = j.value("radius", 1.0);
  const auto samples = j.value<std::size_t>("samples", 4096);
  if (shape == "circle") return orbifold::circle_loop(center, radius, samples);
  if (shape == "square") return orbifold::square_loop(center, radius, samples);
  if (shape == "ellipse") return orbifold::ellipse_loop(center, radius, j.value("aspect", 0.5) * radius, samples);
  throw Error(ErrorKind::IoError, "unknown loop shape '" + shape + "'");
}

inline json loop_to_json(const orbifold::Loop& loop) {
  json out = json::array();
  for (const cplx& v : loop) out.push_back(json::array({v.real(), v.imag()}));
  return out;
}

// ---------------------------------------------------------------------------
// Husimi images.

/// Grayscale map of [0, max Q] to [0, 255]; top row is the largest Im z'.
inline std::string husimi_pgm(const oscillator::HusimiField& q, bool ascii) {
  const double top = *std::max_element(q.values.begin(), q.values.end());
  const std::size_t w = q.grid.x.n, h = q.grid.p.n;
  auto level = [&](std::size_t i, std::size_t j) {
    const double v = top > 0.0 ? q.at(i, j) / top : 0.0;
    return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
  };
  std::string out = (ascii ? "P2\n" : "P5\n") + std::to_string(w) + ' ' + std::to_string(h) + "\n255\n";
  for (std::size_t r = 0; r < h; ++r) {
    const std::size_t j = h - 1 - r;
    for (std::size_t i = 0; i < w; ++i) {
      if (ascii) {
        out += std::to_string(level(i, j));
        out += i + 1 < w ? ' ' : '\n';
      } else {
        out += static_cast<char>(level(i, j));
      }
    }
  }
  return out;
}

inline std::string husimi_csv(const oscillator::HusimiField& q) {
  std::string out = "re,im,q\n";
  for (std::size_t i = 0; i < q.grid.x.n; ++i)
    for (std::size_t j = 0; j < q.grid.p.n; ++j)
      out += format_double(q.grid.x.at(i)) + ',' + format_double(q.grid.p.at(j)) + ',' +
             format_double(q.at(i, j)) + '\n';
  return out;
}

}  // namespace bundleqm::io
