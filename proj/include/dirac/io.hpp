#pragma once

// JSON matrix encoding [[[re,im],[re,im]],[[re,im],[re,im]]] (row-major) and
// number formatting for CSV output.

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include <json.hpp>

#include "dirac/algebra.hpp"
#include "dirac/extensions.hpp"

namespace dirac {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

inline Json matrix_to_json(const Mat2C& m) {
  return Json::array({Json::array({complex_to_json(m.a11), complex_to_json(m.a12)}),
                      Json::array({complex_to_json(m.a21), complex_to_json(m.a22)})});
}

inline Json pair_to_json(const BoundaryPair& p) {
  return Json{{"C", matrix_to_json(p.C())}, {"D", matrix_to_json(p.D())}, {"mass", p.mass()}};
}

inline Complex complex_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error(ErrorKind::ParseError, "expected [re, im] at " + where);
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Mat2C matrix_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::ParseError, "expected two rows at top level");
  Complex e[2][2];
  for (std::size_t r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) {
      throw Error(ErrorKind::ParseError, "expected two entries in row " + std::to_string(r));
    }
    for (std::size_t c = 0; c < 2; ++c) {
      e[r][c] = complex_from_json(j[r][c], "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return {e[0][0], e[0][1], e[1][0], e[1][1]};
}

inline Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline Mat2C parse_matrix(std::string_view text) { return matrix_from_json(parse_json(text)); }

// Shortest round-trip representation; "inf", "-inf", "nan" otherwise.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace dirac
