#pragma once

#include "ringnet/common.hpp"

#include <json.hpp>

namespace ringnet::json_io {

// Matrices are arrays of rows.
inline nlohmann::json to_json(const Eigen::MatrixXd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json to_json(const Eigen::VectorXd& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

inline Eigen::VectorXd vector_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw nlohmann::json::type_error::create(302, "expected an array of numbers", &j);
  Eigen::VectorXd v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Index>(i)] = j[i].get<double>();
  return v;
}

// `cols` fixes the width of an empty matrix.
inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, Index cols = -1) {
  if (!j.is_array()) throw nlohmann::json::type_error::create(302, "expected an array of rows", &j);
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return Eigen::MatrixXd(0, cols < 0 ? 0 : cols);
  const Index width = static_cast<Index>(j[0].size());
  Eigen::MatrixXd m(rows, width);
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != width)
      throw nlohmann::json::type_error::create(302, "ragged matrix", &row);
    for (Index c = 0; c < width; ++c) m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
  }
  return m;
}

}  // namespace ringnet::json_io
