#pragma once

#include "typesched/rational.hpp"

#include <array>
#include <cstddef>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace typesched {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct ForestNode {
  std::size_t job = kNone;  // original job for a leaf
  std::array<std::size_t, 2> children{kNone, kNone};
  std::size_t disposed_slot = kNone;
  std::size_t parent = kNone;
  // Convex weights of the two children, per machine and per huge group on
  // which the merged job has a variable. They sum to one.
  std::map<std::size_t, std::array<Rational, 2>> machine_weights;
  std::map<std::size_t, std::array<Rational, 2>> huge_weights;

  bool artificial() const { return job == kNone; }
};

// Records which jobs an artificial job subsumes and which slots it disposed.
// Nodes 0..n-1 are the original jobs; every merge appends one node whose two
// children meet in the slot that the merge disposed.
class SubsumptionForest {
 public:
  SubsumptionForest() = default;
  explicit SubsumptionForest(std::size_t leaves);

  std::size_t merge(std::size_t a, std::size_t b, std::size_t slot,
                    std::map<std::size_t, std::array<Rational, 2>> machine_weights,
                    std::map<std::size_t, std::array<Rational, 2>> huge_weights);

  std::size_t size() const { return nodes_.size(); }
  std::size_t num_leaves() const { return leaves_; }
  const ForestNode& node(std::size_t id) const { return nodes_[id]; }
  bool is_root(std::size_t id) const { return nodes_[id].parent == kNone; }
  std::vector<std::size_t> roots() const;

  std::vector<std::size_t> leaves_of(std::size_t id) const;
  std::vector<std::size_t> slots_of(std::size_t id) const;
  bool contains(std::size_t ancestor, std::size_t id) const;

  // Empty when the structure is a valid merge forest, else a description.
  std::string validate() const;

  // Graphviz text with the arcs (child -> slot) and (slot -> merged job).
  std::string to_dot() const;

 private:
  std::size_t leaves_ = 0;
  std::vector<ForestNode> nodes_;
};

}  // namespace typesched
