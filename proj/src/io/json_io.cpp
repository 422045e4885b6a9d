#include "lieps/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lieps/errors.hpp"

namespace lieps::io {
namespace {

void dump_to(std::string& out, const json& j, int indent, int depth) {
  auto newline = [&](int d) {
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
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(k).dump();
        out += indent < 0 ? ":" : ": ";
        dump_to(out, v, indent, depth + 1);
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
      // Short arrays of scalars stay on one line ([re, im] pairs).
      const bool flat = j.size() <= 4 && std::all_of(j.begin(), j.end(), [](const json& e) {
                          return e.is_primitive();
                        });
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += flat ? ", " : ",";
        if (!flat) newline(depth + 1);
        dump_to(out, j[i], indent, depth + 1);
      }
      if (!flat) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

cplx complex_from_json(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw FormatError(where + ": expected [re, im] or a number, got " + j.dump());
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

CMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw FormatError("matrix: expected an object with n and entries");
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
    throw FormatError("matrix: n must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(j["n"].get<long long>());
  if (!j.contains("entries") || !j["entries"].is_array()) throw FormatError("matrix: entries must be an array");
  const json& e = j["entries"];
  if (e.size() != n * n) {
    throw FormatError("matrix: expected " + std::to_string(n * n) + " entries, got " + std::to_string(e.size()));
  }
  std::vector<cplx> vals(n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    const std::string where =
        "matrix entry (row " + std::to_string(k / n + 1) + ", col " + std::to_string(k % n + 1) + ")";
    vals[k] = complex_from_json(e[k], where);
    if (!std::isfinite(vals[k].real()) || !std::isfinite(vals[k].imag())) throw FormatError(where + ": not finite");
  }
  return CMatrix(n, std::move(vals));
}

json matrix_to_json(const CMatrix& a) {
  json entries = json::array();
  for (const cplx& z : a.data()) entries.push_back(complex_to_json(z));
  json j;
  j["n"] = a.n();
  j["entries"] = std::move(entries);
  return j;
}

std::vector<cplx> complex_list_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("values")) throw FormatError("complex list: object without values");
    arr = &j["values"];
  }
  if (!arr->is_array()) throw FormatError("complex list: expected an array");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    out.push_back(complex_from_json((*arr)[i], "complex list item " + std::to_string(i + 1)));
  }
  return out;
}

json complex_list_to_json(const std::vector<cplx>& v) {
  json arr = json::array();
  for (const cplx& z : v) arr.push_back(complex_to_json(z));
  return arr;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::string dump(const json& j, int indent) {
  std::string out;
  dump_to(out, j, indent, 0);
  return out;
}

void write_grid_csv(std::ostream& os, const pseudo::PseudospecSample& s) {
  os << "re,im,smin,member\n";
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    os << format_double(s.points[i].real()) << ',' << format_double(s.points[i].imag()) << ','
       << format_double(s.smin_values[i]) << ',' << (s.membership[i] ? 1 : 0) << '\n';
  }
}

}  // namespace lieps::io
