#pragma once

// Dataset model, linear ranking functions and the scoring primitives every
// algorithm in the library is built on.
//
// Ranking convention: tuple a outranks tuple b under f when f(a) > f(b), or
// when the scores are equal and a has the smaller id. This is a strict total
// order, so every ranking below is deterministic.

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "rrr/error.hpp"

namespace rrr {

using TupleId = std::uint32_t;

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
// Absolute slack for angle comparisons on normalized data.
inline constexpr double kAngleTolerance = 1e-9;

enum class Direction { kHigherPreferred, kLowerPreferred };

struct Tuple {
  TupleId id;
  std::span<const double> values;
};

// Immutable n x d table of attribute values in [0, 1], stored row-major.
// Tuple ids are the row indices 0..n-1.
class Dataset {
 public:
  Dataset() = default;
  // Throws kNonFiniteValue / kValueOutOfRange / kDimensionMismatch.
  Dataset(std::size_t dims, std::vector<double> row_major);

  static Dataset from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return dims_ == 0 ? 0 : values_.size() / dims_; }
  std::size_t dims() const noexcept { return dims_; }
  bool empty() const noexcept { return values_.empty(); }

  std::span<const double> row(TupleId id) const {
    return {values_.data() + static_cast<std::size_t>(id) * dims_, dims_};
  }
  Tuple tuple(TupleId id) const { return {id, row(id)}; }
  double at(TupleId id, std::size_t attr) const {
    return values_[static_cast<std::size_t>(id) * dims_ + attr];
  }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t dims_ = 0;
  std::vector<double> values_;
};

// Non-negative weight vector with at least one positive entry.
class LinearFunction {
 public:
  explicit LinearFunction(std::vector<double> weights);

  std::span<const double> weights() const noexcept { return weights_; }
  std::size_t dims() const noexcept { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }

  LinearFunction scaled(double factor) const;
  LinearFunction normalized() const;

 private:
  std::vector<double> weights_;
};

// d-1 spherical angles, each in [0, pi/2], identifying a ray in the first
// orthant.
struct AngleVector {
  std::vector<double> angles;
};

struct RankedList {
  std::vector<TupleId> order;  // best first
  LinearFunction function;
};

// Min-max normalization of a raw n x d table. Higher-preferred columns map
// v -> (v - min) / (max - min), lower-preferred map v -> (max - v) / (max - min).
Dataset normalize(const std::vector<std::vector<double>>& raw,
                  std::span<const Direction> directions);

double score(std::span<const double> values, const LinearFunction& f);
double score(const Tuple& t, const LinearFunction& f);

inline bool outranks(double score_a, TupleId a, double score_b, TupleId b) noexcept {
  return score_a > score_b || (score_a == score_b && a < b);
}

// All tuple scores under f, indexed by id.
std::vector<double> scores(const Dataset& data, const LinearFunction& f);

RankedList rank_list(const Dataset& data, const LinearFunction& f);

// The k best tuple ids under f, returned in ascending id order.
std::vector<TupleId> top_k(const Dataset& data, const LinearFunction& f, std::size_t k);

// 1 + number of tuples outranking t.
std::size_t rank_of(const Dataset& data, const LinearFunction& f, TupleId t);

LinearFunction angles_to_weights(const AngleVector& angles);
AngleVector weights_to_angles(const LinearFunction& f);

// Angle in the open interval (0, pi/2) at which the two tuples score equally,
// or nullopt when one dominates the other (2D only).
std::optional<double> exchange_angle(const Tuple& ti, const Tuple& tj);

// Weights of the ray at angle theta in the plane: (cos theta, sin theta), with
// the axis angles mapped exactly.
LinearFunction function_at_angle(double theta);

}  // namespace rrr
