#include "typesched/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace typesched {

namespace {

struct Atom {
  std::vector<Rational> exact;
  std::vector<double> approx;
  double weight = 0.0;
};

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i].get_d();
  return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<Rational> exact_cost(const std::vector<double>& grad) {
  std::vector<Rational> cost(grad.size());
  for (std::size_t i = 0; i < grad.size(); ++i) cost[i] = from_double(grad[i]);
  return cost;
}

}  // namespace

std::string to_string(ConvexStatus status) {
  switch (status) {
    case ConvexStatus::Converged: return "Converged";
    case ConvexStatus::ToleranceNotReached: return "ToleranceNotReached";
    case ConvexStatus::InfeasibleRegion: return "InfeasibleRegion";
  }
  return "Unknown";
}

ConvexSolveResult solve_convex_over_polytope(const LinearProgram& region,
                                             const ConvexObjective& objective,
                                             const ConvexOptions& options) {
  ConvexSolveResult result;
  VertexOracle oracle(region);
  if (!oracle.feasible()) {
    result.status = ConvexStatus::InfeasibleRegion;
    return result;
  }
  const std::size_t n = region.num_variables();
  std::vector<Atom> active;
  {
    Atom a;
    a.exact = oracle.current().value;
    a.approx = to_doubles(a.exact);
    a.weight = 1.0;
    active.push_back(std::move(a));
  }
  std::vector<double> x = active[0].approx;
  std::vector<double> grad(n), probe(n), d(n);
  double fx = objective.value(x);
  result.objective_history.push_back(fx);

  auto lmo = [&](const std::vector<double>& g) {
    auto r = oracle.minimize(exact_cost(g));
    return r.solution.value;
  };
  auto directional = [&](double gamma) {
    for (std::size_t i = 0; i < n; ++i) probe[i] = x[i] + gamma * d[i];
    objective.gradient(probe, grad);
    return dot(grad, d);
  };

  const double target = options.additive_tol * 0.5;
  std::size_t stalls = 0;
  std::size_t it = 0;
  for (; it < options.max_iterations; ++it) {
    objective.gradient(x, grad);
    const std::vector<double> g = grad;
    std::vector<Rational> s_exact = lmo(g);
    std::vector<double> s = to_doubles(s_exact);
    double gap = 0.0;
    for (std::size_t i = 0; i < n; ++i) gap += g[i] * (x[i] - s[i]);
    result.duality_gap = gap;
    if (gap <= target) break;

    std::size_t away = 0;
    double away_score = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < active.size(); ++k) {
      double score = dot(g, active[k].approx);
      if (score > away_score) {
        away_score = score;
        away = k;
      }
    }
    std::size_t target_atom = active.size();
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (active[k].approx == s && active[k].exact == s_exact) {
        target_atom = k;
        break;
      }
    }

    // Pairwise direction when it descends, plain Frank-Wolfe otherwise.
    bool pairwise = target_atom != away && dot(g, s) < away_score;
    double gamma_max;
    if (pairwise) {
      for (std::size_t i = 0; i < n; ++i) d[i] = s[i] - active[away].approx[i];
      gamma_max = active[away].weight;
    } else {
      for (std::size_t i = 0; i < n; ++i) d[i] = s[i] - x[i];
      gamma_max = 1.0;
    }

    double gamma;
    if (directional(gamma_max) <= 0.0) {
      gamma = gamma_max;
    } else {
      double lo = 0.0, hi = gamma_max;
      for (int k = 0; k < 60; ++k) {
        double mid = 0.5 * (lo + hi);
        if (directional(mid) > 0.0) hi = mid;
        else lo = mid;
      }
      gamma = lo;
    }
    for (std::size_t i = 0; i < n; ++i) probe[i] = x[i] + gamma * d[i];
    double f_new = objective.value(probe);
    if (!(f_new <= fx) || gamma <= 0.0) {
      if (++stalls > 8) break;
      continue;
    }
    stalls = 0;

    if (target_atom == active.size()) {
      Atom a;
      a.exact = std::move(s_exact);
      a.approx = std::move(s);
      active.push_back(std::move(a));
    }
    if (pairwise) {
      active[target_atom].weight += gamma;
      active[away].weight -= gamma;
      if (gamma >= gamma_max) active[away].weight = 0.0;
    } else {
      for (auto& a : active) a.weight *= (1.0 - gamma);
      active[target_atom].weight += gamma;
    }
    std::erase_if(active, [](const Atom& a) { return a.weight <= 0.0; });
    x = probe;
    fx = f_new;
    result.objective_history.push_back(fx);
  }
  result.iterations = it;

  // Quantize the weights to exact rationals summing to one.
  double total = 0.0;
  for (const auto& a : active) total += a.weight;
  std::size_t heaviest = 0;
  for (std::size_t k = 0; k < active.size(); ++k)
    if (active[k].weight > active[heaviest].weight) heaviest = k;
  const double scale = std::ldexp(1.0, 40);
  std::vector<Rational> w(active.size());
  Rational rest(1);
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (k == heaviest) continue;
    w[k] = Rational(mpz_class(std::floor(active[k].weight / total * scale)), mpz_class(1) << 40);
    w[k].canonicalize();
    rest -= w[k];
  }
  w[heaviest] = rest;
  result.x.assign(n, Rational(0));
  for (std::size_t k = 0; k < active.size(); ++k) {
    if (sgn(w[k]) == 0) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (sgn(active[k].exact[i]) != 0) result.x[i] += w[k] * active[k].exact[i];
  }
  result.x_approx = to_doubles(result.x);
  result.objective_value = objective.value(result.x_approx);
  objective.gradient(result.x_approx, grad);
  const std::vector<double> g = grad;
  const auto s = to_doubles(lmo(g));
  double gap = 0.0;
  for (std::size_t i = 0; i < n; ++i) gap += g[i] * (result.x_approx[i] - s[i]);
  result.duality_gap = std::max(gap, 0.0);
  result.status = result.duality_gap <= options.additive_tol ? ConvexStatus::Converged
                                                             : ConvexStatus::ToleranceNotReached;
  return result;
}

}  // namespace typesched
