#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "hkz/lattice.hpp"

namespace hkz {

// Text format: first line is the rank n, followed by n lines of n
// whitespace-separated rationals (`p/q` or integers). Blank lines after the
// matrix are ignored.
//
// Malformed text throws kParse with a `line L, column C` location; a
// well-formed but non-symmetric or non-positive-definite matrix throws
// kInvalidInput naming the failing entry or pivot.
GramMatrix ParseGram(std::string_view text);
GramMatrix ReadGramFile(std::string const& path);

// Inverse of ParseGram.
std::string FormatGram(GramMatrix const& g);
std::string FormatMatrix(Matrix<Rat> const& m);
std::string FormatMatrix(Matrix<Integer> const& m);

}  // namespace hkz
