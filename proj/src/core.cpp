#include "rrr/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rrr {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConstantAttribute: return "ConstantAttribute";
    case ErrorCode::kNonFiniteValue: return "NonFiniteValue";
    case ErrorCode::kValueOutOfRange: return "ValueOutOfRange";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kKOutOfRange: return "KOutOfRange";
    case ErrorCode::kAngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::kDimensionNot2D: return "DimensionNot2D";
    case ErrorCode::kUncoverableSpace: return "UncoverableSpace";
    case ErrorCode::kEmptySubset: return "EmptySubset";
    case ErrorCode::kLpNumericalFailure: return "LPNumericalFailure";
    case ErrorCode::kEmptyCollection: return "EmptyCollection";
    case ErrorCode::kGroundSetTooLarge: return "GroundSetTooLarge";
    case ErrorCode::kFileNotFound: return "FileNotFound";
    case ErrorCode::kNoUsableRows: return "NoUsableRows";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConstantAttribute:
    case ErrorCode::kNonFiniteValue:
    case ErrorCode::kValueOutOfRange:
    case ErrorCode::kFileNotFound:
    case ErrorCode::kNoUsableRows:
    case ErrorCode::kParseError:
      return ErrorCategory::kInput;
    case ErrorCode::kUncoverableSpace:
    case ErrorCode::kLpNumericalFailure:
      return ErrorCategory::kNumeric;
    default:
      return ErrorCategory::kConfig;
  }
}

Dataset::Dataset(std::size_t dims, std::vector<double> row_major)
    : dims_(dims), values_(std::move(row_major)) {
  if (dims_ == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "dataset dimensionality must be positive");
  }
  if (values_.size() % dims_ != 0) {
    throw Error(ErrorCode::kDimensionMismatch, "value count is not a multiple of d");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    const int row = static_cast<int>(i / dims_);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteValue, "non-finite value in row " + std::to_string(row), row);
    }
    if (v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::kValueOutOfRange,
                  "value outside [0,1] in row " + std::to_string(row), row);
    }
  }
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (const auto& r : rows) {
    if (r.size() != d) throw Error(ErrorCode::kDimensionMismatch, "ragged rows");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return Dataset(d, std::move(flat));
}

LinearFunction::LinearFunction(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw Error(ErrorCode::kDimensionMismatch, "empty weight vector");
  bool any_positive = false;
  for (double w : weights_) {
    if (!std::isfinite(w)) throw Error(ErrorCode::kNonFiniteValue, "non-finite weight");
    if (w < 0.0) throw Error(ErrorCode::kValueOutOfRange, "negative weight");
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) throw Error(ErrorCode::kValueOutOfRange, "all weights are zero");
}

LinearFunction LinearFunction::scaled(double factor) const {
  std::vector<double> w(weights_);
  for (double& x : w) x *= factor;
  return LinearFunction(std::move(w));
}

LinearFunction LinearFunction::normalized() const {
  double norm = 0.0;
  for (double w : weights_) norm += w * w;
  return scaled(1.0 / std::sqrt(norm));
}

Dataset normalize(const std::vector<std::vector<double>>& raw,
                  std::span<const Direction> directions) {
  if (raw.empty()) throw Error(ErrorCode::kNoUsableRows, "no rows to normalize");
  const std::size_t d = directions.size();
  std::vector<double> lo(d, 0.0), hi(d, 0.0);
  for (std::size_t r = 0; r < raw.size(); ++r) {
    if (raw[r].size() != d) {
      throw Error(ErrorCode::kDimensionMismatch, "row width differs from direction count");
    }
    for (std::size_t j = 0; j < d; ++j) {
      const double v = raw[r][j];
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFiniteValue,
                    "non-finite value in row " + std::to_string(r), static_cast<int>(j));
      }
      lo[j] = r == 0 ? v : std::min(lo[j], v);
      hi[j] = r == 0 ? v : std::max(hi[j], v);
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!(hi[j] > lo[j])) {
      throw Error(ErrorCode::kConstantAttribute,
                  "attribute " + std::to_string(j) + " is constant", static_cast<int>(j));
    }
  }
  std::vector<double> flat;
  flat.reserve(raw.size() * d);
  for (const auto& row : raw) {
    for (std::size_t j = 0; j < d; ++j) {
      const double span = hi[j] - lo[j];
      double v = directions[j] == Direction::kHigherPreferred ? (row[j] - lo[j]) / span
                                                              : (hi[j] - row[j]) / span;
      flat.push_back(std::clamp(v, 0.0, 1.0));
    }
  }
  return Dataset(d, std::move(flat));
}

double score(std::span<const double> values, const LinearFunction& f) {
  if (values.size() != f.dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "tuple and function dimensions differ");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += f[i] * values[i];
  return s;
}

double score(const Tuple& t, const LinearFunction& f) { return score(t.values, f); }

std::vector<double> scores(const Dataset& data, const LinearFunction& f) {
  if (data.dims() != f.dims()) {
    throw Error(ErrorCode::kDimensionMismatch, "dataset and function dimensions differ");
  }
  const std::size_t n = data.size();
  const std::size_t d = data.dims();
  const auto w = f.weights();
  const double* v = data.values().data();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += w[j] * v[i * d + j];
    out[i] = s;
  }
  return out;
}

RankedList rank_list(const Dataset& data, const LinearFunction& f) {
  const auto s = scores(data, f);
  std::vector<TupleId> order(data.size());
  std::iota(order.begin(), order.end(), TupleId{0});
  std::sort(order.begin(), order.end(),
            [&](TupleId a, TupleId b) { return outranks(s[a], a, s[b], b); });
  return {std::move(order), f};
}

std::vector<TupleId> top_k(const Dataset& data, const LinearFunction& f, std::size_t k) {
  const std::size_t n = data.size();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kKOutOfRange,
                "k=" + std::to_string(k) + " outside [1," + std::to_string(n) + "]");
  }
  const auto s = scores(data, f);
  std::vector<TupleId> ids(n);
  std::iota(ids.begin(), ids.end(), TupleId{0});
  if (k < n) {
    std::nth_element(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k - 1), ids.end(),
                     [&](TupleId a, TupleId b) { return outranks(s[a], a, s[b], b); });
    ids.resize(k);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

std::size_t rank_of(const Dataset& data, const LinearFunction& f, TupleId t) {
  const auto s = scores(data, f);
  std::size_t better = 0;
  for (TupleId u = 0; u < s.size(); ++u) {
    if (outranks(s[u], u, s[t], t)) ++better;
  }
  return better + 1;
}

namespace {

// Exact at the axis angles so that boundary rays put zero weight on an axis.
double exact_cos(double a) { return a == 0.0 ? 1.0 : (a == kHalfPi ? 0.0 : std::cos(a)); }
double exact_sin(double a) { return a == 0.0 ? 0.0 : (a == kHalfPi ? 1.0 : std::sin(a)); }

}  // namespace

LinearFunction function_at_angle(double theta) {
  return LinearFunction({exact_cos(theta), exact_sin(theta)});
}

LinearFunction angles_to_weights(const AngleVector& a) {
  const std::size_t m = a.angles.size();
  if (m == 0) throw Error(ErrorCode::kDimensionMismatch, "angle vector is empty");
  for (double x : a.angles) {
    if (!(x >= 0.0 && x <= kHalfPi)) {
      throw Error(ErrorCode::kAngleOutOfRange, "angle outside [0, pi/2]");
    }
  }
  std::vector<double> w(m + 1);
  double sin_prod = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    w[i] = sin_prod * exact_cos(a.angles[i]);
    sin_prod *= exact_sin(a.angles[i]);
  }
  w[m] = sin_prod;
  return LinearFunction(std::move(w));
}

AngleVector weights_to_angles(const LinearFunction& f) {
  const auto w = f.weights();
  const std::size_t d = w.size();
  if (d < 2) throw Error(ErrorCode::kDimensionMismatch, "need at least 2 weights");
  AngleVector out;
  out.angles.resize(d - 1);
  // tail[i] = sqrt(sum_{j > i} w_j^2), accumulated from the back.
  double tail_sq = 0.0;
  std::vector<double> tail(d, 0.0);
  for (std::size_t i = d; i-- > 0;) {
    tail[i] = std::sqrt(tail_sq);
    tail_sq += w[i] * w[i];
  }
  for (std::size_t i = 0; i + 1 < d; ++i) out.angles[i] = std::atan2(tail[i], w[i]);
  return out;
}

std::optional<double> exchange_angle(const Tuple& ti, const Tuple& tj) {
  if (ti.values.size() != 2 || tj.values.size() != 2) {
    throw Error(ErrorCode::kDimensionNot2D, "exchange angle is defined for d = 2 only");
  }
  const double d1 = ti.values[0] - tj.values[0];
  const double d2 = ti.values[1] - tj.values[1];
  // Scores meet inside the open quadrant only when the differences have
  // strictly opposite signs.
  if (!((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))) return std::nullopt;
  return std::atan2(std::abs(d1), std::abs(d2));
}

}  // namespace rrr
