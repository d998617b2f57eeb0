#pragma once

#include "typesched/model.hpp"

#include <vector>

namespace typesched {

// Exponent vector of a rounded size: entry k stands for (1+eps)^(-k).
using LargeJobType = std::vector<long>;

struct ScaledEntry {
  bool large = false;
  std::vector<Rational> scaled;   // c / T, unrounded
  std::vector<long> exponent;     // rounded size is (1+eps)^(-exponent[d])
  std::vector<Rational> rounded;  // the rounded value itself
};

// One decision point of the makespan search: costs divided by T, classified
// and rounded to powers of 1/(1+eps). Large entries are lifted to eps^2/D
// before rounding.
struct ScaledInstance {
  const Instance* base = nullptr;
  Rational eps;
  Rational target;
  std::vector<std::vector<ScaledEntry>> entries;  // [job][type]

  const ScaledEntry& entry(std::size_t job, std::size_t type) const { return entries[job][type]; }
  bool is_large(std::size_t job, std::size_t type) const { return entries[job][type].large; }
  // floor(D / eps): the most large jobs a machine of capacity ~1 can hold
  std::size_t max_large_per_machine() const;
};

// base^k for any integer k.
Rational int_power(const Rational& base, long k);

// Largest k with (1+eps)^(-k) >= value, i.e. the exponent of the least
// power of 1/(1+eps) that is at least value. value > 0.
long round_up_exponent(const Rational& value, const Rational& eps);

ScaledInstance make_scaled_instance(const Instance& inst, const Rational& target, const Rational& eps);

// Sorted list of the exponent vectors realized by large (job, type) pairs
// whose rounded size is at most 1 in every dimension.
std::vector<LargeJobType> enumerate_large_job_types(const ScaledInstance& scaled);

// Every vector on the grid with eps^2/D <= q^d <= 1, realized or not.
std::vector<LargeJobType> all_large_job_types(const Rational& eps, std::size_t dims);

// Capacity of a machine after scaling and rounding: (1+eps)^2.
Rational machine_capacity(const Rational& eps);

// G(eps, D) = (1+eps)^3 + 3*D*eps, the bound a successful decision at T
// guarantees on makespan / T.
Rational makespan_bound_factor(const Rational& eps, std::size_t dims);

// Largest eps_user / 2^k with G(eps, D) * (1+eps) <= 1 + eps_user.
Rational calibrate_eps(const Rational& eps_user, std::size_t dims);

}  // namespace typesched
