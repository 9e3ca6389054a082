#pragma once

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace clusterforge {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or schema-violating input text (JSON files, CSV).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument to a constructor or generator (sizes, weights, alpha).
class InvalidParam : public Error {
 public:
  using Error::Error;
};

/// Graph contains an odd cycle with respect to its nonzero-weight edges.
/// Carries one offending cycle as a certificate, 1-based node indices.
class NotBipartite : public Error {
 public:
  explicit NotBipartite(std::vector<int> cycle_one_based)
      : Error(format_message(cycle_one_based)), cycle_(std::move(cycle_one_based)) {}

  /// Closed odd walk: consecutive entries (and last-to-first) are edges.
  const std::vector<int>& odd_cycle() const { return cycle_; }

 private:
  static std::string format_message(const std::vector<int>& cycle) {
    std::ostringstream os;
    os << "graph is not bipartite; odd cycle:";
    for (int v : cycle) os << ' ' << v;
    return os.str();
  }

  std::vector<int> cycle_;
};

/// Partition object is inconsistent with the graph it is applied to.
class PartitionMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be symmetric is not.
class NotSymmetric : public Error {
 public:
  using Error::Error;
};

/// Matrix is rank-deficient where full rank is required.
class RankDeficient : public Error {
 public:
  using Error::Error;
};

/// Operand dimensions do not agree.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be symmetric positive definite is not.
class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

/// No acceptable pivot rows found during subspace reduction.
class PivotFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace clusterforge
