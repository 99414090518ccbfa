#ifndef MTR_IO_HPP
#define MTR_IO_HPP

#include <string>

#include "mtr/matrix.hpp"

namespace mtr {

// Accepts two grammars, chosen by the first nonspace character:
//   rows of integers split by ';'       "0 1; 1 1"
//   nested bracket arrays               "[[0,1],[1,1]]"
// Throws ParseError (1-based line/column) on malformed text, NonSquare
// when the row count differs from the column count.
IntMatrix parse_matrix(const std::string& text);

// Row grammar form, "0 1; 1 1". parse_matrix(emit_matrix(m)) == m.
std::string emit_matrix(const IntMatrix& m);

// Bracket form, "[[0,1],[1,1]]". Also a parse_matrix fixed point.
std::string emit_matrix_nested(const IntMatrix& m);

} // namespace mtr

#endif
