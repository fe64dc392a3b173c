#pragma once

#include <json.hpp>

#include "hkz/lattice.hpp"

namespace hkz {

// {"exact": "p/q", "decimal": "<12 significant digits>"}
nlohmann::json RationalJson(Rat const& value);

nlohmann::json MatrixJson(Matrix<Rat> const& m);
nlohmann::json MatrixJson(Matrix<Integer> const& m);
nlohmann::json VectorJson(IntVector const& v);

}  // namespace hkz
