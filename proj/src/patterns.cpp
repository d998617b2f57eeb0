#include "typesched/patterns.hpp"

#include <algorithm>
#include <numeric>

namespace typesched {

std::size_t PatternProfile::total_slots() const {
  std::size_t total = 0;
  for (const auto& type : machines)
    for (const auto& p : type) total += slot_count(p);
  return total;
}

std::map<Pattern, std::size_t> PatternProfile::counts(std::size_t type) const {
  std::map<Pattern, std::size_t> out;
  for (const auto& p : machines[type]) ++out[p];
  return out;
}

std::size_t slot_count(const Pattern& p) { return std::accumulate(p.begin(), p.end(), std::size_t{0}); }

Rational pattern_mass(const PatternSpace& space, const Pattern& p, std::size_t dim) {
  Rational mass(0);
  for (std::size_t c = 0; c < p.size(); ++c)
    if (p[c]) mass += Rational(static_cast<long>(p[c])) * space.classes[c].size[dim];
  return mass;
}

bool pattern_fits(const PatternSpace& space, const Pattern& p) {
  if (p.size() != space.classes.size() || slot_count(p) > space.max_slots) return false;
  for (std::size_t c = 0; c < p.size(); ++c)
    if (p[c] > space.classes[c].available) return false;
  for (std::size_t d = 0; d < space.capacity.size(); ++d)
    if (pattern_mass(space, p, d) > space.capacity[d]) return false;
  return true;
}

bool profile_fits(const std::vector<PatternSpace>& spaces, const PatternProfile& profile) {
  if (profile.machines.size() != spaces.size()) return false;
  for (std::size_t l = 0; l < spaces.size(); ++l) {
    if (profile.machines[l].size() != spaces[l].machines) return false;
    std::vector<std::size_t> used(spaces[l].classes.size(), 0);
    for (const auto& p : profile.machines[l]) {
      if (!pattern_fits(spaces[l], p)) return false;
      for (std::size_t c = 0; c < p.size(); ++c) used[c] += p[c];
    }
    for (std::size_t c = 0; c < used.size(); ++c)
      if (used[c] > spaces[l].classes[c].available) return false;
  }
  return true;
}

std::vector<Pattern> feasible_patterns(const PatternSpace& space) {
  std::vector<Pattern> out;
  const std::size_t k = space.classes.size();
  const std::size_t dims = space.capacity.size();
  Pattern cur(k, 0);
  std::vector<Rational> mass(dims, Rational(0));
  auto rec = [&](auto&& self, std::size_t c, std::size_t slots) -> void {
    if (c == k) {
      out.push_back(cur);
      return;
    }
    self(self, c + 1, slots);
    const auto& cls = space.classes[c];
    std::size_t added = 0;
    while (cur[c] < cls.available && slots + 1 <= space.max_slots) {
      bool fits = true;
      for (std::size_t d = 0; d < dims; ++d) fits = fits && mass[d] + cls.size[d] <= space.capacity[d];
      if (!fits) break;
      for (std::size_t d = 0; d < dims; ++d) mass[d] += cls.size[d];
      ++cur[c];
      ++slots;
      ++added;
      self(self, c + 1, slots);
    }
    for (std::size_t d = 0; d < dims; ++d) mass[d] -= Rational(static_cast<long>(added)) * cls.size[d];
    cur[c] = 0;
  };
  rec(rec, 0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

ProfileEnumerator::ProfileEnumerator(std::vector<PatternSpace> spaces, std::size_t slot_cap,
                                     std::size_t budget)
    : spaces_(std::move(spaces)), slot_cap_(slot_cap), budget_(budget) {
  for (const auto& space : spaces_) {
    auto patterns = feasible_patterns(space);
    std::vector<std::vector<Pattern>> lists;
    std::vector<std::size_t> idx;
    std::vector<std::size_t> used(space.classes.size(), 0);
    std::size_t slots = 0;
    // non-decreasing index sequences = multisets of patterns
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (idx.size() == space.machines) {
        std::vector<Pattern> machines;
        for (auto i : idx) machines.push_back(patterns[i]);
        lists.push_back(std::move(machines));
        return;
      }
      for (std::size_t i = from; i < patterns.size(); ++i) {
        const auto& p = patterns[i];
        bool ok = slots + slot_count(p) <= slot_cap_;
        for (std::size_t c = 0; ok && c < p.size(); ++c) ok = used[c] + p[c] <= space.classes[c].available;
        if (!ok) continue;
        for (std::size_t c = 0; c < p.size(); ++c) used[c] += p[c];
        slots += slot_count(p);
        idx.push_back(i);
        self(self, i);
        idx.pop_back();
        slots -= slot_count(p);
        for (std::size_t c = 0; c < p.size(); ++c) used[c] -= p[c];
      }
    };
    rec(rec, 0);
    per_type_.push_back(std::move(lists));
  }
  choice_.assign(spaces_.size(), 0);
  for (const auto& lists : per_type_)
    if (lists.empty()) done_ = true;
}

bool ProfileEnumerator::advance() {
  // odometer step; false when the product is exhausted
  for (std::size_t l = 0; l < choice_.size(); ++l) {
    if (++choice_[l] < per_type_[l].size()) return true;
    choice_[l] = 0;
  }
  return false;
}

std::optional<PatternProfile> ProfileEnumerator::next() {
  if (done_) return std::nullopt;
  for (;;) {
    if (started_ && !advance()) {
      done_ = true;
      return std::nullopt;
    }
    started_ = true;
    PatternProfile profile;
    for (std::size_t l = 0; l < choice_.size(); ++l) profile.machines.push_back(per_type_[l][choice_[l]]);
    if (profile.total_slots() > slot_cap_) continue;
    if (yielded_ >= budget_) {
      budget_hit_ = true;
      done_ = true;
      return std::nullopt;
    }
    ++yielded_;
    return profile;
  }
}

PatternProfile profile_from_classes(const std::vector<PatternSpace>& spaces,
                                    const std::vector<std::vector<std::vector<std::size_t>>>& machine_classes) {
  PatternProfile profile;
  for (std::size_t l = 0; l < spaces.size(); ++l) {
    std::vector<Pattern> machines;
    for (const auto& classes : machine_classes[l]) {
      if (classes.size() > spaces[l].max_slots)
        throw PatternOverflow("a machine holds more large jobs than a pattern allows");
      Pattern p(spaces[l].classes.size(), 0);
      for (auto c : classes) ++p[c];
      machines.push_back(std::move(p));
    }
    std::sort(machines.begin(), machines.end());
    profile.machines.push_back(std::move(machines));
  }
  return profile;
}

MakespanCatalog build_makespan_catalog(const ScaledInstance& scaled) {
  const Instance& inst = *scaled.base;
  MakespanCatalog cat;
  cat.all = enumerate_large_job_types(scaled);
  cat.job_class.assign(inst.num_jobs(), std::vector<std::optional<std::size_t>>(inst.num_types()));
  const Rational base = 1 / (1 + scaled.eps);
  for (std::size_t l = 0; l < inst.num_types(); ++l) {
    std::vector<std::size_t> classes;
    std::vector<std::size_t> counts;
    for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
      const auto& e = scaled.entry(j, l);
      if (!e.large) continue;
      auto it = std::lower_bound(cat.all.begin(), cat.all.end(), e.exponent);
      if (it == cat.all.end() || *it != e.exponent) continue;  // rounded above 1: fits no slot
      std::size_t global = static_cast<std::size_t>(it - cat.all.begin());
      auto pos = std::find(classes.begin(), classes.end(), global);
      if (pos == classes.end()) {
        classes.push_back(global);
        counts.push_back(0);
        pos = classes.end() - 1;
      }
      ++counts[static_cast<std::size_t>(pos - classes.begin())];
    }
    // keep the local order sorted by global index
    std::vector<std::size_t> order(classes.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return classes[a] < classes[b]; });
    PatternSpace space;
    space.machines = inst.types[l].machine_count;
    space.max_slots = scaled.max_large_per_machine();
    space.capacity.assign(inst.dims, machine_capacity(scaled.eps));
    std::vector<std::size_t> sorted;
    for (auto o : order) {
      sorted.push_back(classes[o]);
      SizeClass sc;
      for (long k : cat.all[classes[o]]) sc.size.push_back(int_power(base, k));
      sc.available = counts[o];
      space.classes.push_back(std::move(sc));
    }
    for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
      const auto& e = scaled.entry(j, l);
      if (!e.large) continue;
      auto it = std::lower_bound(cat.all.begin(), cat.all.end(), e.exponent);
      if (it == cat.all.end() || *it != e.exponent) continue;
      auto global = static_cast<std::size_t>(it - cat.all.begin());
      cat.job_class[j][l] = static_cast<std::size_t>(std::find(sorted.begin(), sorted.end(), global) - sorted.begin());
    }
    cat.type_classes.push_back(std::move(sorted));
    cat.spaces.push_back(std::move(space));
  }
  return cat;
}

PatternProfile profile_from_schedule(const ScaledInstance& scaled, const MakespanCatalog& catalog,
                                     const Schedule& s) {
  const Instance& inst = *scaled.base;
  check_schedule(inst, s);
  std::vector<std::vector<std::vector<std::size_t>>> machine_classes(inst.num_types());
  for (std::size_t l = 0; l < inst.num_types(); ++l) machine_classes[l].resize(inst.types[l].machine_count);
  for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
    auto m = s.assignment[j];
    if (!scaled.is_large(j, m.type)) continue;
    const auto& cls = catalog.job_class[j][m.type];
    if (!cls) throw PatternOverflow("job " + std::to_string(j) + " exceeds the target on its machine");
    machine_classes[m.type][m.index].push_back(*cls);
  }
  return profile_from_classes(catalog.spaces, machine_classes);
}

}  // namespace typesched
