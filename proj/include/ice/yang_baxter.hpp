#pragma once

// Tensor lifts, the Yang-Baxter commutator and the checks built on it:
// star-triangle relations, projective triangularity, Yang-Baxter systems.

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ice/linalg.hpp"
#include "ice/matrix.hpp"
#include "ice/weights.hpp"

namespace ice {

enum class Slot { s12, s13, s23 };

/// phi acting on two tensor factors of V (x) V (x) V, identity on the third.
inline End3 lift(const End2& phi, Slot slot) {
  End3 out(phi.var_space());
  // Positions (in s1 s2 s3) of the two acted-on factors and the spectator.
  const auto [p, q, o] = slot == Slot::s12   ? std::array<int, 3>{0, 1, 2}
                         : slot == Slot::s13 ? std::array<int, 3>{0, 2, 1}
                                             : std::array<int, 3>{1, 2, 0};
  auto digit = [](std::size_t idx, int pos) { return static_cast<int>((idx >> (2 - pos)) & 1u); };
  for (std::size_t r = 0; r < 8; ++r)
    for (std::size_t c = 0; c < 8; ++c) {
      if (digit(r, o) != digit(c, o)) continue;
      out(r, c) = phi(2 * digit(r, p) + digit(r, q), 2 * digit(c, p) + digit(c, q));
    }
  return out;
}

/// [[phi, psi, chi]] = phi_12 psi_13 chi_23 - chi_23 psi_13 phi_12.
inline End3 yb_commutator(const End2& phi, const End2& psi, const End2& chi) {
  End3 a = lift(phi, Slot::s12), b = lift(psi, Slot::s13), c = lift(chi, Slot::s23);
  return a * b * c - c * b * a;
}

/// The swap P(v (x) w) = w (x) v.
inline End2 swap_matrix(VarSpace vs) {
  End2 p(vs);
  p(0, 0) = p(1, 2) = p(2, 1) = p(3, 3) = vs.one();
  return p;
}

namespace detail {
// R_{lower}^{upper} in index notation: column = input pair, row = output pair.
inline const Polynomial& coeff(const End2& m, int nu, int beta, int theta, int gamma) {
  return m(2 * theta + gamma, 2 * nu + beta);
}
}  // namespace detail

/// Both sides of the star-triangle identity by explicit index summation:
/// first  [(theta,rho,alpha)][(sigma,tau,beta)] = sum_{delta,phi,psi} T_{tau beta}^{psi delta} S_{sigma delta}^{phi alpha} R_{phi psi}^{theta rho}
/// second [(theta,rho,alpha)][(sigma,tau,beta)] = sum_{gamma,mu,nu}  R_{sigma tau}^{nu mu} S_{nu beta}^{theta gamma} T_{mu gamma}^{rho alpha}
/// These are R_12 S_13 T_23 and T_23 S_13 R_12 respectively.
inline std::pair<End3, End3> star_triangle_sides(const End2& r, const End2& s, const End2& t) {
  using detail::coeff;
  VarSpace vs = r.var_space();
  End3 first(vs), second(vs);
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int tau = 0; tau < 2; ++tau)
      for (int beta = 0; beta < 2; ++beta)
        for (int theta = 0; theta < 2; ++theta)
          for (int rho = 0; rho < 2; ++rho)
            for (int alpha = 0; alpha < 2; ++alpha) {
              PolynomialAccumulator lhs(vs.n), rhs(vs.n);
              for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                  for (int w = 0; w < 2; ++w) {
                    // x, y, w play delta, phi, psi on one side and gamma, mu, nu on the other.
                    const auto& t1 = coeff(t, tau, beta, w, x);
                    const auto& s1 = coeff(s, sigma, x, y, alpha);
                    const auto& r1 = coeff(r, y, w, theta, rho);
                    if (!t1.is_zero() && !s1.is_zero() && !r1.is_zero()) lhs.add(t1 * s1 * r1);
                    const auto& r2 = coeff(r, sigma, tau, w, y);
                    const auto& s2 = coeff(s, w, beta, theta, x);
                    const auto& t2 = coeff(t, y, x, rho, alpha);
                    if (!r2.is_zero() && !s2.is_zero() && !t2.is_zero()) rhs.add(r2 * s2 * t2);
                  }
              std::size_t row = 4 * theta + 2 * rho + alpha, col = 4 * sigma + 2 * tau + beta;
              first(row, col) = lhs.take();
              second(row, col) = rhs.take();
            }
  return {first, second};
}

/// Outcome of one named identity check.
struct CheckReport {
  std::string check;
  bool pass = false;
  std::optional<Polynomial> witness;
};

inline nlohmann::json to_json(const CheckReport& r) {
  return {{"check", r.check},
          {"status", r.pass ? "pass" : "fail"},
          {"witness", r.witness ? to_json(*r.witness) : nlohmann::json(nullptr)}};
}

inline CheckReport vanishing_report(std::string name, const End3& residual) {
  CheckReport r{std::move(name), residual.is_zero(), std::nullopt};
  if (!r.pass) r.witness = residual.first_nonzero();
  return r;
}

/// A matrix-valued function of two parameter pairs, e.g. R_XY(z_1,t_1,z_2,t_2).
using End2Family = std::function<End2(const SpectralParams&, const SpectralParams&)>;

inline End2Family r_family(IceKind x, IceKind y) {
  return [x, y](const SpectralParams& p, const SpectralParams& q) { return r_weights(x, y, p, q).matrix(); };
}

/// X^dagger(z1,t1,z2,t2) = P X(z2,t2,z1,t1) P.
inline End2Family ddagger(End2Family f) {
  return [f = std::move(f)](const SpectralParams& p, const SpectralParams& q) {
    End2 swap = swap_matrix(var_space(p.z));
    return swap * f(q, p) * swap;
  };
}

/// X^(z1,t1,z2,t2) = X(z2,t1,z1,t2): spectral parameters exchanged, deformations kept.
inline End2Family hatted(End2Family f) {
  return [f = std::move(f)](const SpectralParams& p, const SpectralParams& q) {
    return f(SpectralParams{q.z, p.t}, SpectralParams{p.z, q.t});
  };
}

/// [[A, B, C]] with A(p1,p2), B(p1,p3), C(p2,p3).
inline End3 family_commutator(const End2Family& a, const End2Family& b, const End2Family& c,
                              const SpectralParams& p1, const SpectralParams& p2,
                              const SpectralParams& p3) {
  return yb_commutator(a(p1, p2), b(p1, p3), c(p2, p3));
}

inline std::string kinds_label(std::initializer_list<IceKind> kinds) {
  std::string s;
  for (auto k : kinds) s += letter(k);
  return s;
}

/// [[R_XY, X(i), Y(j)]] = 0 on rows i=1, j=2.
inline CheckReport check_r_star_triangle(IceKind x, IceKind y) {
  VarSpace vs{2};
  return vanishing_report("star-triangle " + kinds_label({x, y}),
                          yb_commutator(r_weights(x, y, vs, 1, 2).matrix(), ice_weights(x, vs, 1).matrix(),
                                        ice_weights(y, vs, 2).matrix()));
}

/// Both the standard and hatted forms of
/// [[R_XY(1,2), R_XZ(1,3), R_YZ(2,3)]] = 0.
inline std::vector<CheckReport> check_parametrized_ybe(IceKind x, IceKind y, IceKind z) {
  VarSpace vs{3};
  auto p1 = SpectralParams::row(vs, 1), p2 = SpectralParams::row(vs, 2), p3 = SpectralParams::row(vs, 3);
  auto a = r_family(x, y), b = r_family(x, z), c = r_family(y, z);
  std::string label = kinds_label({x, y, z});
  return {vanishing_report("ybe " + label, family_commutator(a, b, c, p1, p2, p3)),
          vanishing_report("ybe-hatted " + label,
                           family_commutator(hatted(a), hatted(b), hatted(c), p1, p2, p3))};
}

/// A ratio of polynomials, kept unreduced.
struct Ratio {
  Polynomial numerator;
  Polynomial denominator;
};

/// Thrown when a product that should be scalar is not.
class NonScalarProduct : public IceError {
 public:
  explicit NonScalarProduct(Polynomial witness)
      : IceError("product is not a scalar matrix"), witness_(std::move(witness)) {}
  const Polynomial& witness() const { return witness_; }

 private:
  Polynomial witness_;
};

struct Triangularity {
  Polynomial product_scalar;  // s with R_XY P R_YX(swapped) P = s I
  Ratio c;                    // c_XY = 1 / s
};

/// R_XY(z_i,t_i,z_j,t_j) P R_YX(z_j,t_j,z_i,t_i) P must be a scalar matrix.
inline Triangularity check_triangularity(IceKind x, IceKind y) {
  VarSpace vs{2};
  End2 swap = swap_matrix(vs);
  End2 product = r_weights(x, y, vs, 1, 2).matrix() * swap * r_weights(y, x, vs, 2, 1).matrix() * swap;
  auto s = product.as_scalar();
  if (!s) {
    // Report an off-diagonal entry, or a diagonal entry differing from (0,0).
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        if (r != c && !product(r, c).is_zero()) throw NonScalarProduct(product(r, c));
        if (r == c && !(product(r, c) == product(0, 0))) throw NonScalarProduct(product(r, c) - product(0, 0));
      }
  }
  return {*s, Ratio{vs.one(), *s}};
}

/// The eight axioms of a parametrized Yang-Baxter system with
/// A = R_XX, C = B^dagger = R_XY, D = R_YY^dagger (optionally all hatted).
inline std::vector<CheckReport> check_yb_system(IceKind x, IceKind y, bool use_hatted) {
  auto maybe_hat = [&](End2Family f) { return use_hatted ? hatted(std::move(f)) : f; };
  End2Family a = maybe_hat(r_family(x, x));
  End2Family c = maybe_hat(r_family(x, y));
  End2Family b = ddagger(c);
  End2Family d = ddagger(maybe_hat(r_family(y, y)));
  End2Family b_dd = ddagger(b), c_dd = ddagger(c);

  VarSpace vs{3};
  auto p1 = SpectralParams::row(vs, 1), p2 = SpectralParams::row(vs, 2), p3 = SpectralParams::row(vs, 3);
  std::string prefix = std::string(use_hatted ? "yb-system-hatted " : "yb-system ") + kinds_label({x, y}) + " ";
  struct Axiom {
    const char* name;
    const End2Family &first, &second, &third;
  };
  const Axiom axioms[] = {
      {"[[A,A,A]]", a, a, a},       {"[[D,D,D]]", d, d, d},         {"[[A,C,C]]", a, c, c},
      {"[[D,B,B]]", d, b, b},       {"[[A,B',B']]", a, b_dd, b_dd}, {"[[D,C',C']]", d, c_dd, c_dd},
      {"[[A,C,B']]", a, c, b_dd},   {"[[D,B,C']]", d, b, c_dd},
  };
  std::vector<CheckReport> out;
  for (const auto& ax : axioms)
    out.push_back(vanishing_report(prefix + ax.name, family_commutator(ax.first, ax.second, ax.third, p1, p2, p3)));
  return out;
}

/// Basis of the R (a1,a2,b1,b2,c1,c2) with [[R, S, T]] = 0, for S, T with
/// constant entries. Each basis vector lists the six weights in that order.
inline std::vector<std::vector<GaussianRational>> commutator_solutions(const VertexWeights& s,
                                                                       const VertexWeights& t) {
  VarSpace vs = s.var_space();
  const End2 sm = s.matrix(), tm = t.matrix();
  ScalarMatrix system(64, std::vector<GaussianRational>(6));
  for (std::size_t k = 0; k < 6; ++k) {
    std::array<Polynomial, 8> unit;
    unit.fill(vs.zero());
    unit[k] = vs.one();
    End3 column = yb_commutator(VertexWeights::from_entries(unit).matrix(), sm, tm);
    for (std::size_t e = 0; e < 64; ++e) {
      auto value = column(e / 8, e % 8).as_constant();
      if (!value) throw PreconditionError("commutator_solutions needs constant weights");
      system[e][k] = *value;
    }
  }
  return nullspace(std::move(system), 6);
}

/// True if some solution of [[R, S, T]] = 0 has c1(R) and c2(R) both nonzero.
inline bool has_admissible_solution(const std::vector<std::vector<GaussianRational>>& basis) {
  // A vector space is not a union of two proper subspaces, so both
  // coordinate functionals nonzero on the space is equivalent.
  bool c1_nonzero = false, c2_nonzero = false;
  for (const auto& v : basis) {
    c1_nonzero |= !v[VertexWeights::C1].is_zero();
    c2_nonzero |= !v[VertexWeights::C2].is_zero();
  }
  return c1_nonzero && c2_nonzero;
}

}  // namespace ice
