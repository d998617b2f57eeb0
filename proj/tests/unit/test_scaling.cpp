#include <doctest.h>

#include "support/instances.hpp"
#include "typesched/scaling.hpp"

using namespace typesched;
using typesched::testing::one_dim;

TEST_CASE("classification and rounding of single costs") {
  // T = 10, costs 3 and 7 give c/T = 0.3 and 0.7
  auto inst = one_dim({1}, {{3}, {7}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  CHECK_FALSE(s.is_large(0, 0));
  CHECK(s.entry(0, 0).rounded[0] == ratio(4, 9));
  CHECK(s.entry(0, 0).scaled[0] == ratio(3, 10));
  CHECK(s.is_large(1, 0));
  CHECK(s.entry(1, 0).rounded[0] == 1);
  CHECK(s.entry(1, 0).exponent[0] == 0);
}

TEST_CASE("large entries are lifted to eps^2/D before rounding") {
  Instance inst;
  inst.dims = 2;
  inst.types = {{1}};
  inst.jobs.push_back(Job{{{Rational(6), Rational(1)}}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  REQUIRE(s.is_large(0, 0));
  // 0.1 < eps^2/D = 1/8 is lifted, then rounded up to (2/3)^5
  CHECK(s.entry(0, 0).rounded[1] == ratio(32, 243));
  CHECK(s.entry(0, 0).rounded[0] == ratio(2, 3));
}

TEST_CASE("boundary value eps is large") {
  auto inst = one_dim({1}, {{5}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  CHECK(s.is_large(0, 0));
  CHECK(s.entry(0, 0).rounded[0] == ratio(2, 3));
}

TEST_CASE("round_up_exponent picks the least power at or above the value") {
  const Rational e = ratio(1, 2);
  CHECK(round_up_exponent(ratio(3, 10), e) == 2);
  CHECK(round_up_exponent(ratio(4, 9), e) == 2);
  CHECK(round_up_exponent(ratio(7, 10), e) == 0);
  CHECK(round_up_exponent(Rational(1), e) == 0);
  CHECK(round_up_exponent(ratio(3, 2), e) == -1);
  CHECK(round_up_exponent(ratio(1, 1000000), ratio(1, 16)) > 0);
  for (long num = 1; num < 200; ++num) {
    Rational v = ratio(num, 97);
    long k = round_up_exponent(v, ratio(1, 8));
    const Rational base = ratio(8, 9);
    CHECK(int_power(base, k) >= v);
    CHECK(int_power(base, k + 1) < v);
  }
}

TEST_CASE("grid of large job types") {
  auto q = all_large_job_types(ratio(1, 2), 1);
  CHECK(q.size() == 4);
  // pattern count without capacity pruning
  std::size_t per_class = 2 + 1;  // floor(D/eps) + 1 multiplicities
  std::size_t kappa = 1;
  for (std::size_t i = 0; i < q.size(); ++i) kappa *= per_class;
  CHECK(kappa == 81);
  // six powers of 2/3 lie in [1/8, 1]
  CHECK(all_large_job_types(ratio(1, 2), 2).size() == 36);
}

TEST_CASE("realized types only") {
  auto inst = one_dim({2}, {{10}, {9}, {8}});
  auto s = make_scaled_instance(inst, Rational(10), ratio(1, 2));
  auto q = enumerate_large_job_types(s);
  REQUIRE(q.size() == 1);
  CHECK(q[0] == LargeJobType{0});
  CHECK(s.max_large_per_machine() == 2);
}

TEST_CASE("bound factor and calibration") {
  CHECK(makespan_bound_factor(ratio(1, 16), 1) == pow(ratio(17, 16), 3) + ratio(3, 16));
  CHECK(machine_capacity(ratio(1, 2)) == ratio(9, 4));
  CHECK(calibrate_eps(ratio(1, 2), 1) == ratio(1, 16));
  // G(1/8, 1) * 9/8 is about 2.02, so the halving grid stops at 1/16
  CHECK(makespan_bound_factor(ratio(1, 8), 1) * ratio(9, 8) > 2);
  CHECK(calibrate_eps(Rational(1), 1) == ratio(1, 16));
  for (std::size_t d = 1; d <= 3; ++d) {
    Rational e = calibrate_eps(ratio(1, 2), d);
    CHECK(makespan_bound_factor(e, d) * (1 + e) <= ratio(3, 2));
    CHECK(makespan_bound_factor(2 * e, d) * (1 + 2 * e) > ratio(3, 2));
  }
  CHECK(makespan_bound_factor(ratio(1, 4), 1) > makespan_bound_factor(ratio(1, 8), 1));
  CHECK(makespan_bound_factor(ratio(1, 8), 2) > makespan_bound_factor(ratio(1, 8), 1));
  CHECK_THROWS(make_scaled_instance(one_dim({1}, {{1}}), Rational(0), ratio(1, 2)));
}
