#pragma once

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include <cmath>
#include <stdexcept>
#include <string>

namespace ringnet {

using Eigen::Index;

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using SparseMat = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

using BoolMat = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dimension mismatches and topology invariant violations.
struct StructuralError : Error {
  using Error::Error;
};

struct DegenerateParamsError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct CorruptFileError : Error {
  using Error::Error;
};

struct VersionMismatchError : Error {
  using Error::Error;
};

struct GrowthRefusedError : Error {
  using Error::Error;
};

struct UndefinedContributionError : Error {
  using Error::Error;
};

struct RankDeficientError : Error {
  using Error::Error;
};

inline void require_size(Index got, Index want, const char* what) {
  if (got != want)
    throw StructuralError(std::string(what) + ": expected size " + std::to_string(want) +
                          ", got " + std::to_string(got));
}

template <typename Scalar>
inline Scalar sigmoid(Scalar x) {
  return Scalar(1) / (Scalar(1) + std::exp(-x));
}

}  // namespace ringnet
