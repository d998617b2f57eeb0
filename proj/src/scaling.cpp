#include "typesched/scaling.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace typesched {

std::size_t ScaledInstance::max_large_per_machine() const {
  return static_cast<std::size_t>(floor_to_long(Rational(static_cast<long>(base->dims)) / eps));
}

Rational int_power(const Rational& base, long k) {
  if (k >= 0) return pow(base, static_cast<unsigned>(k));
  return 1 / pow(base, static_cast<unsigned>(-k));
}

long round_up_exponent(const Rational& value, const Rational& eps) {
  if (sgn(value) <= 0) throw std::invalid_argument("round_up_exponent needs a positive value");
  const Rational base = 1 / (1 + eps);
  // estimate in floating point, then correct exactly
  long k = static_cast<long>(std::floor(std::log(value.get_d()) / std::log(base.get_d())));
  while (int_power(base, k) < value) --k;
  while (int_power(base, k + 1) >= value) ++k;
  return k;
}

ScaledInstance make_scaled_instance(const Instance& inst, const Rational& target, const Rational& eps) {
  if (sgn(target) <= 0) throw std::invalid_argument("target must be positive");
  if (sgn(eps) <= 0 || eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  ScaledInstance out;
  out.base = &inst;
  out.eps = eps;
  out.target = target;
  const Rational floor_value = eps * eps / Rational(static_cast<long>(inst.dims));
  const Rational base = 1 / (1 + eps);
  out.entries.resize(inst.num_jobs());
  for (std::size_t j = 0; j < inst.num_jobs(); ++j) {
    out.entries[j].resize(inst.num_types());
    for (std::size_t l = 0; l < inst.num_types(); ++l) {
      auto& e = out.entries[j][l];
      for (std::size_t d = 0; d < inst.dims; ++d) {
        e.scaled.push_back(inst.cost(j, l, d) / target);
        if (e.scaled.back() >= eps) e.large = true;
      }
      for (std::size_t d = 0; d < inst.dims; ++d) {
        Rational v = e.scaled[d];
        if (e.large && v < floor_value) v = floor_value;
        long k = round_up_exponent(v, eps);
        e.exponent.push_back(k);
        e.rounded.push_back(int_power(base, k));
      }
    }
  }
  return out;
}

std::vector<LargeJobType> enumerate_large_job_types(const ScaledInstance& scaled) {
  std::set<LargeJobType> seen;
  for (const auto& row : scaled.entries)
    for (const auto& e : row) {
      if (!e.large) continue;
      bool fits = true;
      for (long k : e.exponent) fits = fits && k >= 0;
      if (fits) seen.insert(e.exponent);
    }
  return {seen.begin(), seen.end()};
}

std::vector<LargeJobType> all_large_job_types(const Rational& eps, std::size_t dims) {
  const Rational floor_value = eps * eps / Rational(static_cast<long>(dims));
  const Rational base = 1 / (1 + eps);
  long kmax = 0;
  while (int_power(base, kmax + 1) >= floor_value) ++kmax;
  std::vector<LargeJobType> out;
  LargeJobType cur(dims, 0);
  for (;;) {
    out.push_back(cur);
    std::size_t d = 0;
    while (d < dims && cur[d] == kmax) cur[d++] = 0;
    if (d == dims) break;
    ++cur[d];
  }
  return out;
}

Rational machine_capacity(const Rational& eps) { return (1 + eps) * (1 + eps); }

Rational makespan_bound_factor(const Rational& eps, std::size_t dims) {
  return pow(1 + eps, 3) + 3 * Rational(static_cast<long>(dims)) * eps;
}

Rational calibrate_eps(const Rational& eps_user, std::size_t dims) {
  if (sgn(eps_user) <= 0 || eps_user > 1) throw std::invalid_argument("eps_user must lie in (0, 1]");
  Rational eps = eps_user;
  while (makespan_bound_factor(eps, dims) * (1 + eps) > 1 + eps_user) eps /= 2;
  return eps;
}

}  // namespace typesched
