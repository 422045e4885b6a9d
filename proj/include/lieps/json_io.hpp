#pragma once

// Matrix and complex-list JSON, a 17-significant-digit JSON writer, and CSV
// output for pseudospectrum grids.
//
// Matrix JSON: {"n": 3, "entries": [[re, im], ...]} with n*n entries in
// row-major order. A bare number is accepted in place of [re, im].

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lieps/cmatrix.hpp"
#include "lieps/pseudo.hpp"

namespace lieps::io {

using json = nlohmann::ordered_json;

/// Throws FormatError naming the offending row/column.
CMatrix matrix_from_json(const json& j);
json matrix_to_json(const CMatrix& a);

json complex_to_json(cplx z);
cplx complex_from_json(const json& j, const std::string& where);

/// Accepts [[re, im], ...] or {"values": [[re, im], ...]}.
std::vector<cplx> complex_list_from_json(const json& j);
json complex_list_to_json(const std::vector<cplx>& v);

/// Throws FormatError when the file is missing or is not valid JSON.
json read_json_file(const std::string& path);

/// Serialises with every double printed by %.17g (non-finite values as null).
std::string dump(const json& j, int indent = 2);

/// Header re,im,smin,member; one line per grid point.
void write_grid_csv(std::ostream& os, const pseudo::PseudospecSample& s);

/// %.17g formatting of a double.
std::string format_double(double v);

}  // namespace lieps::io
