#pragma once

// Function-space partitioning: recursively bisect the (d-1)-dimensional box of
// ray angles, round-robin over the angle axes, until the top-k sets of all the
// box's corner functions share a tuple; that tuple represents the box.
//
// Boxes are expanded one level at a time. Corner top-k sets are tie-inclusive
// (every tuple scoring at least the k-th score). A box still unresolved at the
// depth cap, or when the next level would exceed the box budget, takes the
// top-1 of its centroid and is marked as not bound-guaranteed.

#include <cstddef>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "rrr/core.hpp"
#include "rrr/types.hpp"

namespace rrr {

struct HyperRectangle {
  std::vector<std::pair<double, double>> ranges;  // closed angle intervals
  std::size_t level = 0;

  static HyperRectangle root(std::size_t dims);
  // Axis bisected at this level: level mod (d-1).
  std::size_t split_axis() const { return level % ranges.size(); }
  std::pair<HyperRectangle, HyperRectangle> bisect() const;
  AngleVector centroid() const;
};

// All 2^(d-1) endpoint combinations; the first axis varies slowest.
std::vector<AngleVector> corners(const HyperRectangle& box);

struct MdrcNode {
  HyperRectangle box;
  std::optional<TupleId> assigned;  // set on leaves only
  bool bound_guaranteed = true;     // false for depth-capped fallback leaves
  std::unique_ptr<MdrcNode> left;
  std::unique_ptr<MdrcNode> right;

  bool is_leaf() const noexcept { return !left; }
};

struct MdrcOptions {
  // Default 48 * (d - 1).
  std::optional<std::size_t> depth_cap;
  // Total boxes (internal and leaf) the partition may create.
  std::size_t max_boxes = std::size_t{1} << 16;
};

struct MdrcResult {
  Representative representative;
  std::unique_ptr<MdrcNode> tree;
  std::size_t topk_evaluations = 0;  // distinct corner functions evaluated

  // Leaves in left-to-right order.
  std::vector<const MdrcNode*> leaves() const;
};

std::size_t default_depth_cap(std::size_t dims);

// Each level's boxes are evaluated with an OpenMP parallel loop over a shared
// corner cache.
MdrcResult mdrc(const Dataset& data, std::size_t k, const MdrcOptions& options = {});
// Single-threaded reference; produces the identical tree.
MdrcResult mdrc_serial(const Dataset& data, std::size_t k, const MdrcOptions& options = {});

}  // namespace rrr
