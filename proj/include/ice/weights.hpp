#pragma once

// Boltzmann weight systems, the pi-map and the composition law on free-fermionic
// R-matrices.

#include <array>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "ice/matrix.hpp"
#include "ice/poly.hpp"

namespace ice {

/// Type C: d1 = d2 = 0 (six-vertex). Type D: c1 = c2 = 0.
enum class VertexType { C, D };

enum class IceKind { Gamma, Delta };

inline std::string_view name(IceKind k) { return k == IceKind::Gamma ? "gamma" : "delta"; }
inline char letter(IceKind k) { return k == IceKind::Gamma ? 'G' : 'D'; }

inline IceKind parse_ice_kind(std::string_view s) {
  if (s == "gamma" || s == "G" || s == "g") return IceKind::Gamma;
  if (s == "delta" || s == "D" || s == "d") return IceKind::Delta;
  throw PreconditionError("unknown ice kind '" + std::string(s) + "'");
}

/// A spectral/deformation parameter pair (z, t) attached to a strand.
struct SpectralParams {
  Polynomial z;
  Polynomial t;

  static SpectralParams row(VarSpace vs, std::size_t i) { return {vs.z(i), vs.t(i)}; }
};

/// The eight weights a1..d2 of one vertex system, laid out as
///   [[a1, ., ., d1], [., b1, c1, .], [., c2, b2, .], [d2, ., ., a2]].
class VertexWeights {
 public:
  enum Slot : std::size_t { A1, A2, B1, B2, C1, C2, D1, D2 };
  static constexpr std::array<std::string_view, 8> slot_names{"a1", "a2", "b1", "b2",
                                                              "c1", "c2", "d1", "d2"};

  /// Classifies the entries: any nonzero d makes it type D, otherwise type C.
  /// Nonzero c and d together are rejected.
  static VertexWeights from_entries(std::array<Polynomial, 8> w) {
    VarSpace vs = ice::var_space(w[0]);
    for (const auto& p : w)
      if (p.rank() != vs.n) throw VarSpaceMismatch(vs.n, p.rank());
    bool has_c = !w[C1].is_zero() || !w[C2].is_zero();
    bool has_d = !w[D1].is_zero() || !w[D2].is_zero();
    if (has_c && has_d) throw PreconditionError("mixed weights: both c and d entries are nonzero");
    return VertexWeights(std::move(w), has_d ? VertexType::D : VertexType::C);
  }
  static VertexWeights type_c(Polynomial a1, Polynomial a2, Polynomial b1, Polynomial b2,
                              Polynomial c1, Polynomial c2) {
    Polynomial zero = ice::var_space(a1).zero();
    return from_entries({std::move(a1), std::move(a2), std::move(b1), std::move(b2),
                         std::move(c1), std::move(c2), zero, zero});
  }
  static VertexWeights type_d(Polynomial a1, Polynomial a2, Polynomial b1, Polynomial b2,
                              Polynomial d1, Polynomial d2) {
    Polynomial zero = ice::var_space(a1).zero();
    auto w = from_entries({std::move(a1), std::move(a2), std::move(b1), std::move(b2), zero,
                           zero, std::move(d1), std::move(d2)});
    w.type_ = VertexType::D;
    return w;
  }

  VertexType type() const { return type_; }
  VarSpace var_space() const { return ice::var_space(w_[A1]); }
  const Polynomial& operator[](Slot s) const { return w_[s]; }
  const std::array<Polynomial, 8>& entries() const { return w_; }

  const Polynomial& a1() const { return w_[A1]; }
  const Polynomial& a2() const { return w_[A2]; }
  const Polynomial& b1() const { return w_[B1]; }
  const Polynomial& b2() const { return w_[B2]; }
  const Polynomial& c1() const { return w_[C1]; }
  const Polynomial& c2() const { return w_[C2]; }
  const Polynomial& d1() const { return w_[D1]; }
  const Polynomial& d2() const { return w_[D2]; }

  /// The weights as an endomorphism of V (x) V: entry [(theta,gamma)][(nu,beta)].
  End2 matrix() const {
    End2 m(var_space());
    m(0, 0) = a1();
    m(0, 3) = d1();
    m(1, 1) = b1();
    m(1, 2) = c1();
    m(2, 1) = c2();
    m(2, 2) = b2();
    m(3, 0) = d2();
    m(3, 3) = a2();
    return m;
  }

  static VertexWeights from_matrix(const End2& m) {
    static constexpr std::array<std::pair<int, int>, 8> used{
        {{0, 0}, {0, 3}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 0}, {3, 3}}};
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        bool allowed = false;
        for (auto [ur, uc] : used) allowed |= (ur == static_cast<int>(r) && uc == static_cast<int>(c));
        if (!allowed && !m(r, c).is_zero())
          throw PreconditionError("matrix violates the eight-vertex zero pattern");
      }
    return from_entries({m(0, 0), m(3, 3), m(1, 1), m(2, 2), m(1, 2), m(2, 1), m(0, 3), m(3, 0)});
  }

  /// a1 a2 + b1 b2 - c1 c2 (type C) or a1 a2 + b1 b2 - d1 d2 (type D).
  Polynomial free_fermion_residual() const {
    Polynomial s = a1() * a2() + b1() * b2();
    return type_ == VertexType::C ? s - c1() * c2() : s - d1() * d2();
  }
  bool is_free_fermionic() const { return free_fermion_residual().is_zero(); }

  /// Membership in the group: free-fermionic with a1 a2 + b1 b2 != 0.
  bool in_group() const {
    if (!is_free_fermionic() || (a1() * a2() + b1() * b2()).is_zero()) return false;
    return type_ == VertexType::C ? !(c1() * c2()).is_zero() : !(d1() * d2()).is_zero();
  }

  VertexWeights scaled(const Polynomial& s) const {
    std::array<Polynomial, 8> w;
    for (std::size_t k = 0; k < 8; ++k) w[k] = s * w_[k];
    return VertexWeights(std::move(w), type_);
  }

  friend bool operator==(const VertexWeights& x, const VertexWeights& y) {
    return x.type_ == y.type_ && x.w_ == y.w_;
  }

 private:
  VertexWeights(std::array<Polynomial, 8> w, VertexType type) : w_(std::move(w)), type_(type) {}

  std::array<Polynomial, 8> w_;
  VertexType type_;
};

namespace detail {
inline void check_row(VarSpace vs, std::size_t i) {
  if (i < 1 || i > vs.n)
    throw PreconditionError("row index " + std::to_string(i) + " outside 1.." + std::to_string(vs.n));
}
}  // namespace detail

/// Gamma ice: a1=1, a2=z, b1=t, b2=z, c1=z(t+1), c2=1.
inline VertexWeights gamma(const SpectralParams& p) {
  Polynomial one = var_space(p.z).one();
  return VertexWeights::type_c(one, p.z, p.t, p.z, p.z * (p.t + one), one);
}

/// Delta ice: a1=z, a2=1, b1=z t, b2=1, d1=1, d2=z(t+1).
inline VertexWeights delta(const SpectralParams& p) {
  Polynomial one = var_space(p.z).one();
  return VertexWeights::type_d(p.z, one, p.z * p.t, one, one, p.z * (p.t + one));
}

inline VertexWeights gamma(VarSpace vs, std::size_t i) {
  detail::check_row(vs, i);
  return gamma(SpectralParams::row(vs, i));
}
inline VertexWeights delta(VarSpace vs, std::size_t i) {
  detail::check_row(vs, i);
  return delta(SpectralParams::row(vs, i));
}
inline VertexWeights ice_weights(IceKind kind, const SpectralParams& p) {
  return kind == IceKind::Gamma ? gamma(p) : delta(p);
}
inline VertexWeights ice_weights(IceKind kind, VarSpace vs, std::size_t i) {
  return kind == IceKind::Gamma ? gamma(vs, i) : delta(vs, i);
}

/// The R-matrix R_XY(z_i, t_i, z_j, t_j) exchanging an X strand with a Y strand.
inline VertexWeights r_weights(IceKind x, IceKind y, const SpectralParams& pi,
                               const SpectralParams& pj) {
  const Polynomial &zi = pi.z, &ti = pi.t, &zj = pj.z, &tj = pj.t;
  Polynomial one = var_space(zi).one();
  if (x == IceKind::Gamma && y == IceKind::Gamma)
    return VertexWeights::type_c(zj + tj * zi, zi + ti * zj, ti * zj - tj * zi, zi - zj,
                                 zi * (ti + one), zj * (tj + one));
  if (x == IceKind::Delta && y == IceKind::Delta)
    return VertexWeights::type_c(zi * ti + zj, zj * tj + zi, zi - zj, zj * tj - zi * ti,
                                 zj * (tj + one), zi * (ti + one));
  if (x == IceKind::Gamma)  // Gamma-Delta
    return VertexWeights::type_d(ti * tj * zj - zi, zi - zj, zj * tj + zi, zj * ti + zi,
                                 zi * (ti + one), zj * (tj + one));
  // Delta-Gamma
  return VertexWeights::type_d(zi - zj, zj - ti * tj * zi, zi * ti + zj, zi * tj + zj,
                               zj * (tj + one), zi * (ti + one));
}

inline VertexWeights r_weights(IceKind x, IceKind y, VarSpace vs, std::size_t i, std::size_t j) {
  detail::check_row(vs, i);
  detail::check_row(vs, j);
  if (i == j) throw PreconditionError("r_weights needs two distinct rows");
  return r_weights(x, y, SpectralParams::row(vs, i), SpectralParams::row(vs, j));
}

/// The 4x4 image of w under which composition becomes matrix multiplication.
inline End2 pi_map(const VertexWeights& w) {
  End2 m(w.var_space());
  if (w.type() == VertexType::C) {
    m(0, 0) = w.c1();
    m(1, 1) = w.a1();
    m(1, 2) = w.b2();
    m(2, 1) = -w.b1();
    m(2, 2) = w.a2();
    m(3, 3) = w.c2();
  } else {
    const GaussianRational i = GaussianRational::i();
    m(0, 3) = w.d1();
    m(1, 1) = i * w.a2();
    m(1, 2) = -i * w.b1();
    m(2, 1) = i * w.b2();
    m(2, 2) = i * w.a1();
    m(3, 0) = w.d2();
  }
  return m;
}

/// Left inverse of pi_map; rejects matrices outside its image.
inline VertexWeights pi_preimage(const End2& m) {
  const bool type_d = !m(0, 3).is_zero() || !m(3, 0).is_zero();
  VertexWeights w = [&] {
    if (!type_d) return VertexWeights::type_c(m(1, 1), m(2, 2), -m(2, 1), m(1, 2), m(0, 0), m(3, 3));
    const GaussianRational minus_i = -GaussianRational::i();
    return VertexWeights::type_d(minus_i * m(2, 2), minus_i * m(1, 1), GaussianRational::i() * m(1, 2),
                                 minus_i * m(2, 1), m(0, 3), m(3, 0));
  }();
  if (!(pi_map(w) == m)) throw PreconditionError("matrix is not in the image of pi");
  return w;
}

/// Delta_1 = num / den1 and Delta_2 = num / den2, kept as unreduced ratios.
struct DeltaInvariants {
  Polynomial numerator;
  Polynomial denominator1;
  Polynomial denominator2;
};

inline DeltaInvariants delta_invariants(const VertexWeights& w) {
  if (w.type() != VertexType::C) throw PreconditionError("delta invariants need type C weights");
  Polynomial two = w.var_space().constant(2);
  DeltaInvariants d{w.a1() * w.a2() + w.b1() * w.b2() - w.c1() * w.c2(), two * w.a1() * w.b1(),
                    two * w.a2() * w.b2()};
  if (d.denominator1.is_zero() || d.denominator2.is_zero())
    throw PreconditionError("delta invariant has a zero denominator");
  return d;
}

/// Cross-multiplied residuals num(S) den(T) - num(T) den(S) for Delta_1 and Delta_2.
inline std::pair<Polynomial, Polynomial> delta_mismatch(const VertexWeights& s, const VertexWeights& t) {
  auto ds = delta_invariants(s), dt = delta_invariants(t);
  return {ds.numerator * dt.denominator1 - dt.numerator * ds.denominator1,
          ds.numerator * dt.denominator2 - dt.numerator * ds.denominator2};
}

namespace detail {
inline void require_group(const VertexWeights& w, const char* which) {
  if (!w.in_group())
    throw PreconditionError(std::string(which) +
                            " is not a free-fermionic weight system with a1 a2 + b1 b2 != 0");
}
}  // namespace detail

/// S = R o T, characterised by pi(S) = pi(R) pi(T). Result type: C.C -> C,
/// C.D -> D, D.C -> D, D.D -> C.
inline VertexWeights compose(const VertexWeights& r, const VertexWeights& t) {
  detail::require_group(r, "left operand");
  detail::require_group(t, "right operand");
  if (r.type() == VertexType::C && t.type() == VertexType::C)
    return VertexWeights::type_c(r.a1() * t.a1() - r.b2() * t.b1(), r.a2() * t.a2() - r.b1() * t.b2(),
                                 r.b1() * t.a1() + r.a2() * t.b1(), r.a1() * t.b2() + r.b2() * t.a2(),
                                 r.c1() * t.c1(), r.c2() * t.c2());
  if (r.type() == VertexType::C)
    return VertexWeights::type_d(r.a2() * t.a1() + r.b1() * t.b1(), r.a1() * t.a2() + r.b2() * t.b2(),
                                 -(r.b2() * t.a1()) + r.a1() * t.b1(),
                                 -(r.b1() * t.a2()) + r.a2() * t.b2(), r.c1() * t.d1(),
                                 r.c2() * t.d2());
  if (t.type() == VertexType::C)
    return VertexWeights::type_d(r.a1() * t.a2() + r.b2() * t.b2(), r.a2() * t.a1() + r.b1() * t.b1(),
                                 r.b1() * t.a2() - r.a2() * t.b2(), r.b2() * t.a1() - r.a1() * t.b1(),
                                 r.d1() * t.c2(), r.d2() * t.c1());
  return VertexWeights::type_c(-(r.a2() * t.a2()) + r.b1() * t.b2(),
                               -(r.a1() * t.a1()) + r.b2() * t.b1(), r.b2() * t.a2() + r.a1() * t.b2(),
                               r.b1() * t.a1() + r.a2() * t.b1(), r.d1() * t.d2(), r.d2() * t.d1());
}

/// Weights with pi(adjoint(w)) = D * pi(w)^{-1}, D = a1 a2 + b1 b2.
inline VertexWeights adjoint(const VertexWeights& w) {
  detail::require_group(w, "operand");
  if (w.type() == VertexType::C) return VertexWeights::type_c(w.a2(), w.a1(), -w.b1(), -w.b2(), w.c2(), w.c1());
  return VertexWeights::type_d(-w.a2(), -w.a1(), w.b1(), w.b2(), w.d1(), w.d2());
}

/// Group inverse; only defined when D = a1 a2 + b1 b2 is a constant.
inline VertexWeights inverse(const VertexWeights& w) {
  auto d = (w.a1() * w.a2() + w.b1() * w.b2()).as_constant();
  if (!d || d->is_zero()) throw PreconditionError("inverse needs a nonzero constant determinant factor");
  return adjoint(w).scaled(w.var_space().constant(GaussianRational(1) / *d));
}

/// R with pi(R) = pi(S) * D(T) * pi(T)^{-1}, so that [[R, S, T]] = 0.
inline VertexWeights right_quotient(const VertexWeights& s, const VertexWeights& t) {
  return compose(s, adjoint(t));
}

/// Thrown when S and T have different Delta invariants.
class InvariantMismatch : public IceError {
 public:
  InvariantMismatch(const std::string& what, Polynomial residual)
      : IceError(what), residual_(std::move(residual)) {}
  const Polynomial& residual() const { return residual_; }

 private:
  Polynomial residual_;
};

/// weights == scale * R, where R is given by the three-term construction.
struct ThreeTermSolution {
  VertexWeights weights;
  Polynomial scale;
};

/// Given six-vertex S and T with matching Delta_1 and Delta_2, the R with
/// [[R, S, T]] = 0 and c1(R) = c1(S) c2(T), c2(R) = c2(S) c1(T).
inline ThreeTermSolution solve_r_from_st(const VertexWeights& s, const VertexWeights& t) {
  if (s.type() != VertexType::C || t.type() != VertexType::C)
    throw PreconditionError("solve_r_from_st needs six-vertex (type C) weights");
  Polynomial::check_rank(s.a1(), t.a1());
  for (std::size_t k = 0; k < 6; ++k) {
    auto slot = static_cast<VertexWeights::Slot>(k);
    if (s[slot].is_zero() || t[slot].is_zero())
      throw PreconditionError("all twelve weights of S and T must be nonzero");
  }
  auto [mismatch1, mismatch2] = delta_mismatch(s, t);
  if (!mismatch1.is_zero()) throw InvariantMismatch("Delta_1(S) != Delta_1(T)", mismatch1);
  if (!mismatch2.is_zero()) throw InvariantMismatch("Delta_2(S) != Delta_2(T)", mismatch2);

  // Two expressions for each of a1(R), a2(R) as numerator / denominator.
  Polynomial a1_num_t = s.b2() * t.a1() * t.b1() - s.a1() * t.b1() * t.b2() + s.a1() * t.c1() * t.c2();
  Polynomial a1_num_s = s.a1() * s.b1() * t.a2() - s.a1() * s.a2() * t.b1() + s.c1() * s.c2() * t.b1();
  Polynomial a2_num_t = s.b1() * t.a2() * t.b2() - s.a2() * t.b1() * t.b2() + s.a2() * t.c1() * t.c2();
  Polynomial a2_num_s = s.a2() * s.b2() * t.a1() - s.a1() * s.a2() * t.b2() + s.c1() * s.c2() * t.b2();
  Polynomial agree1 = a1_num_t * s.b1() - a1_num_s * t.a1();
  Polynomial agree2 = a2_num_t * s.b2() - a2_num_s * t.a2();
  if (!agree1.is_zero()) throw InvariantMismatch("the two expressions for a1(R) disagree", agree1);
  if (!agree2.is_zero()) throw InvariantMismatch("the two expressions for a2(R) disagree", agree2);

  Polynomial b1 = s.b1() * t.a2() - s.a2() * t.b1();
  Polynomial b2 = s.b2() * t.a1() - s.a1() * t.b2();
  Polynomial c1 = s.c1() * t.c2();
  Polynomial c2 = s.c2() * t.c1();

  auto try_div = [](const Polynomial& num, const Polynomial& den) -> std::optional<Polynomial> {
    auto [q, rem] = divide(num, den);
    if (rem.is_zero()) return q;
    return std::nullopt;
  };
  auto a1 = try_div(a1_num_t, t.a1());
  if (!a1) a1 = try_div(a1_num_s, s.b1());
  auto a2 = try_div(a2_num_t, t.a2());
  if (!a2) a2 = try_div(a2_num_s, s.b2());
  if (a1 && a2)
    return {VertexWeights::type_c(*a1, *a2, b1, b2, c1, c2), s.var_space().one()};

  // Stay in the polynomial ring: scale R by a1(T) a2(T).
  Polynomial scale = t.a1() * t.a2();
  return {VertexWeights::type_c(a1_num_t * t.a2(), a2_num_t * t.a1(), scale * b1, scale * b2,
                                scale * c1, scale * c2),
          scale};
}

inline nlohmann::json to_json(const VertexWeights& w) {
  nlohmann::json j{{"type", w.type() == VertexType::C ? "C" : "D"}};
  for (std::size_t k = 0; k < 8; ++k) j[std::string(VertexWeights::slot_names[k])] = to_json(w.entries()[k]);
  return j;
}

inline VertexWeights weights_from_json(const nlohmann::json& j) {
  std::array<Polynomial, 8> w;
  try {
    for (std::size_t k = 0; k < 8; ++k) w[k] = polynomial_from_json(j.at(std::string(VertexWeights::slot_names[k])));
  } catch (const nlohmann::json::exception& e) {
    throw IceError(std::string("malformed weights JSON: ") + e.what());
  }
  auto v = VertexWeights::from_entries(std::move(w));
  std::string type = j.value("type", "C");
  if ((type == "D") != (v.type() == VertexType::D)) throw IceError("weights JSON type tag disagrees with entries");
  return v;
}

}  // namespace ice
