#include "hkz/json_util.hpp"

namespace hkz {

nlohmann::json RationalJson(Rat const& value) {
  return {{"exact", ToString(value)}, {"decimal", ToDecimal(value)}};
}

nlohmann::json MatrixJson(Matrix<Rat> const& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ToString(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json MatrixJson(Matrix<Integer> const& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ToString(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json VectorJson(IntVector const& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Integer const& x : v) out.push_back(ToString(x));
  return out;
}

}  // namespace hkz
