#pragma once

// Schur polynomials two ways, and the deformed Weyl denominators that relate
// them to ice partition functions.

#include <algorithm>
#include <numeric>
#include <vector>

#include "ice/lattice.hpp"
#include "ice/poly.hpp"
#include "ice/weights.hpp"

namespace ice {

/// sum over permutations of sgn(sigma) prod_j z_j^{(lambda+rho)_{sigma(j)}}.
inline Polynomial alternant(const std::vector<int>& exponents) {
  const std::size_t n = exponents.size();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  PolynomialAccumulator acc(n);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (sigma[a] > sigma[b]) ++inversions;
    Monomial m(2 * n);
    for (std::size_t j = 0; j < n; ++j) m.set(j, static_cast<std::uint32_t>(exponents[sigma[j]]));
    acc.add(Polynomial::monomial(n, m, inversions % 2 ? -1 : 1));
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return acc.take();
}

/// prod_{i<j} (z_i - z_j).
inline Polynomial vandermonde(std::size_t n) {
  VarSpace vs{n};
  Polynomial p = vs.one();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) p *= vs.z(i) - vs.z(j);
  return p;
}

/// Weyl character formula. The sign is pinned by requiring a positive value
/// at z = (1, 2, 4, ...).
inline Polynomial schur_bialternant(const Partition& lambda) {
  const std::size_t n = lambda.n();
  Polynomial s = exact_div(alternant(lambda.shifted()), vandermonde(n));
  Point at{{}, std::vector<GaussianRational>(n, 0)};
  for (std::size_t k = 0; k < n; ++k) at.z.push_back(GaussianRational(1L << k));
  if (!(eval(s, at).real() > 0)) throw IceError("bialternant is not positive at z = (1, 2, 4, ...)");
  return s;
}

/// Sum over non-strict patterns with top row lambda of z^mu.
inline Polynomial schur_pattern_sum(const Partition& lambda) {
  const std::size_t n = lambda.n();
  PolynomialAccumulator acc(n);
  for_each_gt_pattern(lambda.parts(), false, [&](const GTPattern& g) {
    Monomial m(2 * n);
    auto mu = gt_row_sums(g);
    for (std::size_t k = 0; k < n; ++k) m.set(k, static_cast<std::uint32_t>(mu[k]));
    acc.add(Polynomial::monomial(n, m, 1));
  });
  return acc.take();
}

/// The linear factors of the deformed denominator, in (i, j) order.
/// Gamma: t_i z_j + z_i. Delta: t_j z_j + z_i.
inline std::vector<Polynomial> deformed_denominator_factors(IceKind kind, std::size_t n) {
  VarSpace vs{n};
  std::vector<Polynomial> out;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      out.push_back(kind == IceKind::Gamma ? vs.t(i) * vs.z(j) + vs.z(i) : vs.t(j) * vs.z(j) + vs.z(i));
  return out;
}

inline Polynomial deformed_denominator(IceKind kind, std::size_t n) {
  Polynomial p = VarSpace{n}.one();
  for (const auto& f : deformed_denominator_factors(kind, n)) p *= f;
  return p;
}

/// p times the deformed denominator, one binomial at a time (much cheaper
/// than forming the full product first).
inline Polynomial times_deformed_denominator(IceKind kind, const Polynomial& p) {
  return Polynomial::product(p, deformed_denominator_factors(kind, p.rank()));
}

/// prod_{i<j} (z_i + t z_j) with t = t_1.
inline Polynomial tokuyama_denominator(std::size_t n) {
  VarSpace vs{n};
  Polynomial p = vs.one();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) p *= vs.z(i) + vs.t(1) * vs.z(j);
  return p;
}

namespace detail {
inline Polynomial ice_quotient(IceKind kind, const Partition& lambda) {
  Polynomial q = exact_div(partition_function(kind, lambda), deformed_denominator(kind, lambda.n()));
  if (!q.t_free()) throw IceError("ice quotient depends on t");
  if (!(q == schur_bialternant(lambda))) throw IceError("ice quotient differs from the Schur polynomial");
  return q;
}
}  // namespace detail

/// Z(Gamma ice) divided by its deformed denominator; checked t-free and equal to s_lambda.
inline Polynomial s_gamma(const Partition& lambda) { return detail::ice_quotient(IceKind::Gamma, lambda); }
inline Polynomial s_delta(const Partition& lambda) { return detail::ice_quotient(IceKind::Delta, lambda); }

}  // namespace ice
