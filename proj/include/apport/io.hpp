#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "apport/cmatrix.hpp"
#include "apport/graphs.hpp"

namespace apport {

/// Shortest-of-17-significant-digits decimal rendering used by every writer.
std::string fmt17(double x);

// Matrix files: a JSON document {"n": <int>, "entries": [[re, im], ...]}
// with n^2 row-major entries. Writers emit 17-significant-digit decimals.
std::string matrix_to_string(const CMatrix& a);
CMatrix matrix_from_string(const std::string& text);
void write_matrix(const std::string& path, const CMatrix& a);
CMatrix read_matrix(const std::string& path);

// Loop-graph files: first line n, then one edge per line as "i j"
// (a loop is written "i i").
std::string graph_to_string(const LoopGraph& g);
LoopGraph graph_from_string(const std::string& text);
void write_graph(const std::string& path, const LoopGraph& g);
LoopGraph read_graph(const std::string& path);

// Function files: first line n, second line n space-separated values.
std::string function_to_string(const ZnFunction& f);
ZnFunction function_from_string(const std::string& text);
void write_function(const std::string& path, const ZnFunction& f);
ZnFunction read_function(const std::string& path);

// Factor files: one factor per line as space-separated integer
// coefficients; '#' starts a comment.
std::string factors_to_string(const std::vector<std::vector<long long>>& rows);
std::vector<std::vector<long long>> factors_from_string(const std::string& text);
void write_factors(const std::string& path, const std::vector<std::vector<long long>>& rows);
std::vector<std::vector<long long>> read_factors(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace apport
