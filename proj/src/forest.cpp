#include "typesched/forest.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace typesched {

SubsumptionForest::SubsumptionForest(std::size_t leaves) : leaves_(leaves), nodes_(leaves) {
  for (std::size_t j = 0; j < leaves; ++j) nodes_[j].job = j;
}

std::size_t SubsumptionForest::merge(std::size_t a, std::size_t b, std::size_t slot,
                                     std::map<std::size_t, std::array<Rational, 2>> machine_weights,
                                     std::map<std::size_t, std::array<Rational, 2>> huge_weights) {
  if (a >= nodes_.size() || b >= nodes_.size() || a == b || !is_root(a) || !is_root(b))
    throw std::logic_error("merge needs two distinct roots");
  ForestNode n;
  n.children = {a, b};
  n.disposed_slot = slot;
  n.machine_weights = std::move(machine_weights);
  n.huge_weights = std::move(huge_weights);
  const std::size_t id = nodes_.size();
  nodes_.push_back(std::move(n));
  nodes_[a].parent = id;
  nodes_[b].parent = id;
  return id;
}

std::vector<std::size_t> SubsumptionForest::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (is_root(i)) out.push_back(i);
  return out;
}

std::vector<std::size_t> SubsumptionForest::leaves_of(std::size_t id) const {
  std::vector<std::size_t> out, stack{id};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (!nodes_[v].artificial()) {
      out.push_back(v);
      continue;
    }
    stack.push_back(nodes_[v].children[1]);
    stack.push_back(nodes_[v].children[0]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::size_t> SubsumptionForest::slots_of(std::size_t id) const {
  std::vector<std::size_t> out, stack{id};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    if (!nodes_[v].artificial()) continue;
    out.push_back(nodes_[v].disposed_slot);
    stack.push_back(nodes_[v].children[0]);
    stack.push_back(nodes_[v].children[1]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool SubsumptionForest::contains(std::size_t ancestor, std::size_t id) const {
  for (std::size_t v = id; v != kNone; v = nodes_[v].parent)
    if (v == ancestor) return true;
  return false;
}

std::string SubsumptionForest::validate() const {
  std::set<std::size_t> seen_leaves, seen_slots;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (i < leaves_ && n.artificial()) return "original job " + std::to_string(i) + " is not a leaf";
    if (i >= leaves_ && !n.artificial()) return "node " + std::to_string(i) + " should be artificial";
    if (n.artificial()) {
      for (auto c : n.children)
        if (c >= i || nodes_[c].parent != i) return "bad child link at node " + std::to_string(i);
    }
    if (n.parent != kNone) {
      const auto& p = nodes_[n.parent];
      if (p.children[0] != i && p.children[1] != i) return "bad parent link at node " + std::to_string(i);
    }
    for (const auto* w : {&n.machine_weights, &n.huge_weights})
      for (const auto& [pos, pair] : *w)
        if (sgn(pair[0]) < 0 || sgn(pair[1]) < 0 || pair[0] + pair[1] != 1)
          return "weights of node " + std::to_string(i) + " are not convex";
  }
  for (auto r : roots()) {
    auto leaves = leaves_of(r);
    auto slots = slots_of(r);
    if (leaves.size() != slots.size() + 1) return "tree " + std::to_string(r) + " has |J| != |S| + 1";
    for (auto l : leaves)
      if (!seen_leaves.insert(l).second) return "leaf shared between trees";
    for (auto s : slots)
      if (!seen_slots.insert(s).second) return "slot disposed twice";
  }
  if (seen_leaves.size() != leaves_) return "some leaf is not covered";
  return {};
}

std::string SubsumptionForest::to_dot() const {
  std::ostringstream out;
  out << "digraph subsumption {\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto& n = nodes_[i];
    if (!n.artificial()) {
      out << "  j" << i << " [shape=circle,style=filled,fillcolor=gray];\n";
      continue;
    }
    out << "  a" << i << " [shape=circle];\n";
    out << "  s" << n.disposed_slot << " [shape=box];\n";
    for (auto c : n.children) out << "  " << (nodes_[c].artificial() ? "a" : "j") << c << " -> s" << n.disposed_slot << ";\n";
    out << "  s" << n.disposed_slot << " -> a" << i << ";\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace typesched
