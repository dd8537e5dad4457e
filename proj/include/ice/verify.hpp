#pragma once

// Named verification items shared by the CLI and the acceptance runner.
// Each item yields one or more Outcome lines; nothing here prints.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <vector>

#include "ice/lattice.hpp"
#include "ice/schur.hpp"
#include "ice/weights.hpp"
#include "ice/yang_baxter.hpp"

namespace ice {

struct Outcome {
  std::string check;
  bool pass = false;
  std::string detail;  // witness or summary
  std::optional<Polynomial> witness{};
};

using Outcomes = std::vector<Outcome>;

inline bool all_pass(const Outcomes& v) {
  for (const auto& o : v)
    if (!o.pass) return false;
  return true;
}

inline nlohmann::json to_json(const Outcome& o) {
  return {{"check", o.check},
          {"status", o.pass ? "pass" : "fail"},
          {"witness", o.witness ? to_json(*o.witness) : nlohmann::json(nullptr)},
          {"detail", o.detail}};
}

inline Outcome from_report(const CheckReport& r) {
  return {r.check, r.pass, r.witness ? "witness " + to_text(*r.witness) : "", r.witness};
}

/// Partitions with 1..max_n parts, each at most max_part; optionally the
/// extra rank-5 spot checks with parts at most 2.
inline std::vector<Partition> lambda_grid(std::size_t max_n, int max_part, bool spot_rank5) {
  std::vector<Partition> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (auto& p : partitions_in_box(n, max_part)) out.push_back(std::move(p));
  if (spot_rank5 && max_n < 5)
    for (auto& p : partitions_in_box(5, 2)) out.push_back(std::move(p));
  return out;
}

/// Partition functions and Schur polynomial of one partition, computed once
/// and shared by the grid checks.
struct LambdaData {
  Partition lambda;
  Polynomial z_gamma;
  Polynomial z_delta;
  Polynomial schur;

  const Polynomial& z(IceKind kind) const { return kind == IceKind::Gamma ? z_gamma : z_delta; }
};

inline LambdaData lambda_data(const Partition& lambda) {
  return {lambda, partition_function(IceKind::Gamma, lambda), partition_function(IceKind::Delta, lambda),
          schur_bialternant(lambda)};
}

inline std::vector<LambdaData> lambda_data(const std::vector<Partition>& grid) {
  std::vector<LambdaData> out;
  out.reserve(grid.size());
  for (const auto& lambda : grid) out.push_back(lambda_data(lambda));
  return out;
}

/// Runs check on every entry and folds the results into one line.
template <class Item, class Check>
Outcome over_grid(const std::string& name, const std::vector<Item>& grid, Check&& check) {
  std::string failures;
  for (const auto& item : grid) {
    std::optional<std::string> bad = check(item);
    if (bad) {
      const Partition* lambda;
      if constexpr (std::is_same_v<Item, Partition>)
        lambda = &item;
      else
        lambda = &item.lambda;
      failures += (failures.empty() ? "" : "; ") + ("(" + lambda->to_string() + ") " + *bad);
    }
  }
  if (failures.empty()) return {name, true, std::to_string(grid.size()) + " partitions"};
  return {name, false, failures};
}

// ---- lattice identities -------------------------------------------------

/// Z against the deformed denominator times s_lambda.
inline std::optional<std::string> ice_identity_failure(IceKind kind, const LambdaData& d) {
  Polynomial expected = deformed_denominator(kind, d.lambda.n()) * d.schur;
  if (d.z(kind) == expected) return std::nullopt;
  return "difference " + to_text(d.z(kind) - expected);
}

inline Outcome verify_worked_example() {
  BoundarySpec b{IceKind::Gamma, Partition({0, 0})};
  auto states = enumerate_states(b);
  VarSpace vs{2};
  std::vector<Polynomial> expected{vs.t(1) * vs.z(2), vs.z(1)};
  bool pass = states.size() == 2;
  for (std::size_t k = 0; pass && k < 2; ++k) pass = state_weight(states[k]) == expected[k];
  Polynomial z = partition_function(b);
  pass = pass && z == vs.t(1) * vs.z(2) + vs.z(1);
  return {"worked example gamma (0,0)", pass,
          std::to_string(states.size()) + " states, Z = " + to_text(z)};
}

inline std::optional<std::string> tokuyama_failure(const LambdaData& d) {
  Polynomial per_row = tokuyama_sum(d.lambda, true);
  if (!(per_row == d.z_gamma)) return "per-row sum differs from Z: " + to_text(per_row - d.z_gamma);
  Polynomial single = tokuyama_sum(d.lambda, false);
  Polynomial expected = tokuyama_denominator(d.lambda.n()) * d.schur;
  if (!(single == expected)) return "single-t sum differs: " + to_text(single - expected);
  return std::nullopt;
}

/// Cross-multiplied comparison of the two ice partition functions; uses no factorization.
inline std::optional<std::string> statement_b_failure(const LambdaData& d) {
  Polynomial lhs = times_deformed_denominator(IceKind::Delta, d.z_gamma);
  Polynomial rhs = times_deformed_denominator(IceKind::Gamma, d.z_delta);
  if (lhs == rhs) return std::nullopt;
  return "difference " + to_text(lhs - rhs);
}

/// (t_{k+1} z_k + z_{k+1}) Z(Gamma) is fixed by (z_k,t_k) <-> (z_{k+1},t_{k+1}).
inline std::optional<std::string> swap_symmetry_failure(const LambdaData& d) {
  const std::size_t n = d.lambda.n();
  VarSpace vs{n};
  for (std::size_t k = 1; k < n; ++k) {
    Polynomial f = (vs.t(k + 1) * vs.z(k) + vs.z(k + 1)) * d.z_gamma;
    if (!(swap_adjacent(f, k) == f)) return "not symmetric under swap " + std::to_string(k);
  }
  return std::nullopt;
}

/// deg_{t_i} Z(Gamma) against expected(i, n) for every i.
template <class Expected>
std::optional<std::string> t_degree_failure(const LambdaData& d, Expected&& expected) {
  const std::size_t n = d.lambda.n();
  for (std::size_t i = 1; i <= n; ++i) {
    std::size_t got = d.z_gamma.degree_in(Var::t(i)), want = expected(i, n);
    if (got != want)
      return "degree in t" + std::to_string(i) + " is " + std::to_string(got) + ", expected " + std::to_string(want);
  }
  return std::nullopt;
}

/// Z(Gamma) has the t-degrees of its deformed denominator: n - i in t_i.
inline std::optional<std::string> symmetry_failure(const LambdaData& d) {
  if (auto bad = swap_symmetry_failure(d)) return bad;
  return t_degree_failure(d, [](std::size_t i, std::size_t n) { return n - i; });
}

/// Round trip through patterns and agreement with exhaustive edge search.
inline std::optional<std::string> bijection_failure(IceKind kind, const Partition& lambda) {
  BoundarySpec b{kind, lambda};
  auto states = enumerate_states(b);
  for (const auto& s : states)
    if (!(gt_to_state(state_to_gt(s), b) == s)) return std::string("round trip changed a state");
  auto brute = brute_force_states(b);
  if (brute.size() != states.size())
    return "pattern count " + std::to_string(states.size()) + " vs brute force " + std::to_string(brute.size());
  for (const auto& s : brute)
    if (std::find(states.begin(), states.end(), s) == states.end())
      return std::string("brute force found a state missing from the pattern enumeration");
  return std::nullopt;
}

/// The pattern {5 2 0 / 3 0 / 3}: a valid state whose weight has z-exponents (4,0,3).
inline Outcome verify_pattern_example() {
  GTPattern g{{{5, 2, 0}, {3, 0}, {3}}};
  BoundarySpec b{IceKind::Gamma, Partition({3, 1, 0})};
  LatticeState s = gt_to_state(g, b);
  bool pass = state_to_gt(s) == g && gt_row_sums(g) == std::vector<int>{4, 0, 3};
  Polynomial w = state_weight(s);
  for (const auto& term : w.terms())
    for (std::size_t k = 0; k < 3; ++k) pass = pass && term.monomial[k] == static_cast<std::uint32_t>(gt_row_sums(g)[k]);
  return {"pattern example (5,2,0)", pass, "weight " + to_text(w)};
}

// ---- R-matrix identities ------------------------------------------------

inline const std::vector<IceKind>& ice_kinds() {
  static const std::vector<IceKind> kinds{IceKind::Gamma, IceKind::Delta};
  return kinds;
}

/// Star-triangle relations for all (X,Y) and the parametrized YBE for all
/// (X,Y,Z); with kinds set, only that triple. hatted selects the hatted form.
inline Outcomes verify_ybe(std::optional<std::array<IceKind, 3>> kinds, bool hatted_only) {
  Outcomes out;
  if (!kinds && !hatted_only)
    for (IceKind x : ice_kinds())
      for (IceKind y : ice_kinds()) out.push_back(from_report(check_r_star_triangle(x, y)));
  auto add = [&](IceKind x, IceKind y, IceKind z) {
    auto reports = check_parametrized_ybe(x, y, z);
    if (!hatted_only) out.push_back(from_report(reports[0]));
    out.push_back(from_report(reports[1]));
  };
  if (kinds) {
    add((*kinds)[0], (*kinds)[1], (*kinds)[2]);
  } else {
    for (IceKind x : ice_kinds())
      for (IceKind y : ice_kinds())
        for (IceKind z : ice_kinds()) add(x, y, z);
  }
  return out;
}

inline Outcomes verify_yb_system(IceKind x, IceKind y, bool hatted) {
  Outcomes out;
  for (const auto& r : check_yb_system(x, y, hatted)) out.push_back(from_report(r));
  return out;
}

/// R_XY P R_YX(swapped) P is scalar for all four pairs; for Gamma-Gamma the
/// scalar is exactly (z_2 t_1 + z_1)(z_1 t_2 + z_2), so the rescaled R' has c = 1.
inline Outcomes verify_triangularity() {
  Outcomes out;
  for (IceKind x : ice_kinds())
    for (IceKind y : ice_kinds()) {
      std::string name = "triangularity " + kinds_label({x, y});
      try {
        auto tri = check_triangularity(x, y);
        out.push_back({name, true, "scalar " + to_text(tri.product_scalar)});
      } catch (const NonScalarProduct& e) {
        out.push_back({name, false, "witness " + to_text(e.witness()), e.witness()});
      }
    }
  VarSpace vs{2};
  Polynomial factor = (vs.z(2) * vs.t(1) + vs.z(1)) * (vs.z(1) * vs.t(2) + vs.z(2));
  auto tri = check_triangularity(IceKind::Gamma, IceKind::Gamma);
  auto [q, rem] = divide(tri.product_scalar, factor);
  bool unit = rem.is_zero() && q == vs.one();
  out.push_back({"triangularity normalized GG", unit, "scalar after clearing factors " + to_text(q)});
  return out;
}

/// V(Gamma(1)) V(Gamma(2)) = V(Gamma(2)) V(Gamma(1)) for 1..max_cols columns.
inline Outcomes verify_transfer_commute(std::size_t max_cols) {
  Outcomes out;
  VarSpace vs{2};
  for (std::size_t cols = 1; cols <= max_cols; ++cols) {
    auto v1 = transfer_matrix(gamma(vs, 1), cols), v2 = transfer_matrix(gamma(vs, 2), cols);
    auto ab = multiply(v1, v2), ba = multiply(v2, v1);
    std::string detail;
    for (std::size_t r = 0; r < ab.size() && detail.empty(); ++r)
      for (std::size_t c = 0; c < ab.size() && detail.empty(); ++c)
        if (!(ab[r][c] == ba[r][c])) detail = "witness " + to_text(ab[r][c] - ba[r][c]);
    out.push_back({"transfer-commute " + std::to_string(cols) + " columns", detail.empty(), detail});
  }
  return out;
}

// ---- randomized group-law and three-term checks -------------------------

/// Small Gaussian rationals with numerators in [-5,5] and denominators in [1,4].
class WeightSampler {
 public:
  explicit WeightSampler(std::uint64_t seed) : rng_(seed) {}

  GaussianRational scalar() {
    std::uniform_int_distribution<long> num(-5, 5), den(1, 4);
    Rational re(num(rng_), den(rng_)), im(num(rng_), den(rng_));
    re.canonicalize();
    im.canonicalize();
    return {re, im};
  }
  GaussianRational nonzero() {
    for (;;)
      if (auto x = scalar(); !x.is_zero()) return x;
  }

  /// Random group element of the given type (rank-0 constants).
  VertexWeights free_fermionic(VertexType type) {
    VarSpace vs{0};
    for (;;) {
      GaussianRational a1 = nonzero(), a2 = nonzero(), b1 = nonzero(), b2 = nonzero(), c1 = nonzero();
      GaussianRational det = a1 * a2 + b1 * b2;
      if (det.is_zero()) continue;
      GaussianRational c2 = det / c1;
      auto k = [&](const GaussianRational& x) { return vs.constant(x); };
      return type == VertexType::C ? VertexWeights::type_c(k(a1), k(a2), k(b1), k(b2), k(c1), k(c2))
                                   : VertexWeights::type_d(k(a1), k(a2), k(b1), k(b2), k(c1), k(c2));
    }
  }

  /// Six-vertex weights with all entries nonzero and a1 a2 + b1 b2 - c1 c2 != 0.
  VertexWeights generic_six_vertex() {
    VarSpace vs{0};
    for (;;) {
      std::array<GaussianRational, 6> w;
      for (auto& x : w) x = nonzero();
      if ((w[0] * w[1] + w[2] * w[3] - w[4] * w[5]).is_zero()) continue;
      auto k = [&](std::size_t i) { return vs.constant(w[i]); };
      return VertexWeights::type_c(k(0), k(1), k(2), k(3), k(4), k(5));
    }
  }

  /// S random; T chosen with Delta_1(T) = Delta_1(S) and Delta_2(T) = Delta_2(S).
  std::pair<VertexWeights, VertexWeights> delta_matched() {
    VarSpace vs{0};
    for (;;) {
      VertexWeights s = generic_six_vertex();
      auto c = [](const Polynomial& p) { return *p.as_constant(); };
      GaussianRational num_s = c(s.a1()) * c(s.a2()) + c(s.b1()) * c(s.b2()) - c(s.c1()) * c(s.c2());
      GaussianRational a1 = nonzero(), b1 = nonzero(), a2 = nonzero(), c1 = nonzero();
      GaussianRational b2 = a1 * b1 * c(s.a2()) * c(s.b2()) / (c(s.a1()) * c(s.b1()) * a2);
      GaussianRational num_t = GaussianRational(2) * a1 * b1 * num_s / (GaussianRational(2) * c(s.a1()) * c(s.b1()));
      GaussianRational c2 = (a1 * a2 + b1 * b2 - num_t) / c1;
      if (c2.is_zero()) continue;
      auto k = [&](const GaussianRational& x) { return vs.constant(x); };
      return {s, VertexWeights::type_c(k(a1), k(a2), k(b1), k(b2), k(c1), k(c2))};
    }
  }

 private:
  std::mt19937_64 rng_;
};

inline std::string type_label(VertexType t) { return t == VertexType::C ? "C" : "D"; }

/// pi(R o T) = pi(R) pi(T) and free-fermion preservation for each type pair,
/// then associativity on random triples.
inline Outcomes verify_group_law(std::size_t samples, std::uint64_t seed) {
  WeightSampler sampler(seed);
  Outcomes out;
  for (VertexType x : {VertexType::C, VertexType::D})
    for (VertexType y : {VertexType::C, VertexType::D}) {
      std::size_t bad_hom = 0, bad_ff = 0;
      for (std::size_t k = 0; k < samples; ++k) {
        VertexWeights r = sampler.free_fermionic(x), t = sampler.free_fermionic(y);
        VertexWeights s = compose(r, t);
        if (!(pi_map(s) == pi_map(r) * pi_map(t))) ++bad_hom;
        if (!s.is_free_fermionic()) ++bad_ff;
      }
      out.push_back({"group-law " + type_label(x) + type_label(y), bad_hom == 0 && bad_ff == 0,
                     std::to_string(samples) + " pairs, " + std::to_string(bad_hom) + " homomorphism failures, " +
                         std::to_string(bad_ff) + " free-fermion failures"});
    }
  std::size_t bad_assoc = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    auto pick = [&] { return sampler.free_fermionic(sampler.scalar().real() > 0 ? VertexType::C : VertexType::D); };
    VertexWeights a = pick(), b = pick(), c = pick();
    if (!(compose(compose(a, b), c) == compose(a, compose(b, c)))) ++bad_assoc;
  }
  out.push_back({"group-law associativity", bad_assoc == 0,
                 std::to_string(samples) + " triples, " + std::to_string(bad_assoc) + " failures"});
  return out;
}

/// Sufficiency: matched S,T give an R from the three-term formulas with
/// vanishing commutator. Necessity: mismatched S,T are refused and the linear
/// system for R has no solution with c1, c2 nonzero.
inline Outcomes verify_three_term(std::size_t samples, std::uint64_t seed) {
  WeightSampler sampler(seed);
  std::size_t bad_matched = 0, bad_mismatched = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    auto [s, t] = sampler.delta_matched();
    try {
      auto sol = solve_r_from_st(s, t);
      if (!yb_commutator(sol.weights.matrix(), s.matrix(), t.matrix()).is_zero()) ++bad_matched;
    } catch (const IceError&) {
      ++bad_matched;
    }
  }
  std::size_t mismatched = 0;
  while (mismatched < samples) {
    VertexWeights s = sampler.generic_six_vertex(), t = sampler.generic_six_vertex();
    auto [m1, m2] = delta_mismatch(s, t);
    if (m1.is_zero() && m2.is_zero()) continue;
    ++mismatched;
    bool refused = false;
    try {
      solve_r_from_st(s, t);
    } catch (const InvariantMismatch&) {
      refused = true;
    }
    if (!refused || has_admissible_solution(commutator_solutions(s, t))) ++bad_mismatched;
  }
  return {{"three-term sufficiency", bad_matched == 0,
           std::to_string(samples) + " matched pairs, " + std::to_string(bad_matched) + " failures"},
          {"three-term necessity", bad_mismatched == 0,
           std::to_string(samples) + " mismatched pairs, " + std::to_string(bad_mismatched) + " failures"}};
}

// ---- everything ----------------------------------------------------------

struct SuiteOptions {
  std::size_t max_n = 4;
  int max_part = 4;
  bool spot_rank5 = true;
  std::size_t bijection_max_n = 3;
  int bijection_max_part = 3;
  std::size_t samples = 100;
  std::size_t three_term_samples = 50;
  std::uint64_t seed = 1;
  std::size_t transfer_cols = 4;
};

inline Outcomes verify_suite(const SuiteOptions& o) {
  auto grid = lambda_data(lambda_grid(o.max_n, o.max_part, o.spot_rank5));
  auto small = lambda_grid(o.bijection_max_n, o.bijection_max_part, false);
  Outcomes out;
  auto append = [&](Outcomes more) { out.insert(out.end(), more.begin(), more.end()); };
  out.push_back(over_grid("gamma identity", grid, [](const LambdaData& d) { return ice_identity_failure(IceKind::Gamma, d); }));
  out.push_back(over_grid("delta identity", grid, [](const LambdaData& d) { return ice_identity_failure(IceKind::Delta, d); }));
  out.push_back(verify_worked_example());
  append(verify_ybe(std::nullopt, false));
  append(verify_group_law(o.samples, o.seed));
  append(verify_three_term(o.three_term_samples, o.seed));
  for (IceKind kind : ice_kinds())
    out.push_back(over_grid(std::string("bijection ") + std::string(name(kind)), small,
                            [kind](const Partition& l) { return bijection_failure(kind, l); }));
  out.push_back(verify_pattern_example());
  out.push_back(over_grid("tokuyama", grid, tokuyama_failure));
  out.push_back(over_grid("statement-b", grid, statement_b_failure));
  out.push_back(over_grid("symmetry and degree", grid, symmetry_failure));
  append(verify_triangularity());
  for (IceKind x : ice_kinds())
    for (IceKind y : ice_kinds())
      for (bool h : {false, true}) append(verify_yb_system(x, y, h));
  append(verify_transfer_commute(o.transfer_cols));
  return out;
}

}  // namespace ice
