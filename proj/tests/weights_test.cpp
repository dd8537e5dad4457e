#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "ice/weights.hpp"

using namespace ice;

namespace {

const std::array<IceKind, 2> kKinds{IceKind::Gamma, IceKind::Delta};

// Leibniz expansion, independent of any elimination code.
Polynomial determinant(const End2& m) {
  std::array<std::size_t, 4> sigma{0, 1, 2, 3};
  Polynomial det(m.var_space().n);
  do {
    int inversions = 0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b) inversions += sigma[a] > sigma[b];
    Polynomial term = m.var_space().constant(inversions % 2 ? -1 : 1);
    for (std::size_t r = 0; r < 4; ++r) term *= m(r, sigma[r]);
    det += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return det;
}

struct Sampler {
  std::mt19937_64 rng{2024};
  GaussianRational nonzero() {
    std::uniform_int_distribution<long> num(-4, 4), den(1, 3);
    for (;;) {
      Rational re(num(rng), den(rng)), im(num(rng), den(rng));
      re.canonicalize();
      im.canonicalize();
      GaussianRational x(re, im);
      if (!x.is_zero()) return x;
    }
  }
  // Free-fermionic by solving for the last entry.
  VertexWeights group_element(VertexType type) {
    VarSpace vs{0};
    for (;;) {
      GaussianRational a1 = nonzero(), a2 = nonzero(), b1 = nonzero(), b2 = nonzero(), x = nonzero();
      GaussianRational det = a1 * a2 + b1 * b2;
      if (det.is_zero()) continue;
      auto k = [&](const GaussianRational& v) { return vs.constant(v); };
      return type == VertexType::C ? VertexWeights::type_c(k(a1), k(a2), k(b1), k(b2), k(x), k(det / x))
                                   : VertexWeights::type_d(k(a1), k(a2), k(b1), k(b2), k(x), k(det / x));
    }
  }
};

}  // namespace

TEST(IceWeights, GammaEntries) {
  VarSpace vs{2};
  EXPECT_EQ(gamma(vs, 1).b1(), vs.t(1));
  EXPECT_EQ(gamma(vs, 2).c1(), vs.z(2) * (vs.t(2) + vs.one()));
  EXPECT_EQ(gamma(vs, 1).type(), VertexType::C);
  EXPECT_TRUE(gamma(vs, 2).free_fermion_residual().is_zero());
  EXPECT_THROW(gamma(vs, 3), PreconditionError);
  EXPECT_THROW(gamma(vs, 0), PreconditionError);
}

TEST(IceWeights, DeltaEntries) {
  VarSpace vs{2};
  EXPECT_EQ(delta(vs, 1).d2(), vs.z(1) * (vs.t(1) + vs.one()));
  EXPECT_EQ(delta(vs, 1).type(), VertexType::D);
  EXPECT_TRUE(delta(vs, 1).c1().is_zero());
  const auto d = delta(vs, 2);
  EXPECT_TRUE((d.a1() * d.a2() + d.b1() * d.b2() - d.d1() * d.d2()).is_zero());
}

TEST(IceWeights, RMatrixEntries) {
  VarSpace vs{2};
  EXPECT_EQ(r_weights(IceKind::Gamma, IceKind::Gamma, vs, 1, 2).a1(), vs.z(2) + vs.t(2) * vs.z(1));
  EXPECT_EQ(r_weights(IceKind::Gamma, IceKind::Delta, vs, 1, 2).d2(), vs.z(2) * vs.t(2) + vs.z(2));
  EXPECT_THROW(r_weights(IceKind::Gamma, IceKind::Gamma, vs, 1, 1), PreconditionError);
}

TEST(IceWeights, RMatricesAreFreeFermionic) {
  VarSpace vs{2};
  for (IceKind x : kKinds)
    for (IceKind y : kKinds) {
      auto r = r_weights(x, y, vs, 1, 2);
      EXPECT_TRUE(r.free_fermion_residual().is_zero()) << letter(x) << letter(y);
      EXPECT_EQ(r.type(), x == y ? VertexType::C : VertexType::D);
    }
}

TEST(IceWeights, MixedEntriesRejected) {
  VarSpace vs{1};
  std::array<Polynomial, 8> w;
  w.fill(vs.one());
  EXPECT_THROW(VertexWeights::from_entries(w), PreconditionError);
}

TEST(PiMap, GammaImage) {
  VarSpace vs{2};
  End2 m = pi_map(gamma(vs, 1));
  EXPECT_EQ(m(0, 0), vs.z(1) * (vs.t(1) + vs.one()));
  EXPECT_EQ(m(1, 1), vs.one());
  EXPECT_EQ(m(2, 1), -vs.t(1));
  Polynomial det = determinant(m);
  EXPECT_FALSE(det.is_zero());
  // Block structure: c1 * (a1 a2 + b1 b2) * c2.
  auto g = gamma(vs, 1);
  EXPECT_EQ(det, g.c1() * (g.a1() * g.a2() + g.b1() * g.b2()) * g.c2());
}

TEST(PiMap, IdentityLikeWeights) {
  VarSpace vs{1};
  auto w = VertexWeights::type_c(vs.one(), vs.one(), vs.zero(), vs.zero(), vs.one(), vs.one());
  EXPECT_EQ(pi_map(w), End2::identity(vs));
}

TEST(PiMap, PreimageRoundTrip) {
  Sampler s;
  for (int k = 0; k < 20; ++k)
    for (VertexType type : {VertexType::C, VertexType::D}) {
      auto w = s.group_element(type);
      EXPECT_EQ(pi_preimage(pi_map(w)), w);
    }
  VarSpace vs{1};
  End2 bad(vs);
  bad(0, 1) = vs.one();
  EXPECT_THROW(pi_preimage(bad), PreconditionError);
}

TEST(DeltaInvariant, Values) {
  VarSpace vs{2};
  EXPECT_TRUE(delta_invariants(gamma(vs, 1)).numerator.is_zero());
  VarSpace k{0};
  auto field_free = VertexWeights::type_c(k.one(), k.one(), k.one(), k.one(), k.one(), k.one());
  auto d = delta_invariants(field_free);
  EXPECT_EQ(d.numerator * k.constant(2), d.denominator1);
  EXPECT_EQ(d.numerator * k.constant(2), d.denominator2);
  // a1 b1 = a2 b2 gives equal denominators.
  auto w = VertexWeights::type_c(k.constant(2), k.constant(3), k.constant(6), k.constant(4), k.one(), k.constant(5));
  auto e = delta_invariants(w);
  EXPECT_EQ(e.denominator1, e.denominator2);
  EXPECT_THROW(delta_invariants(delta(vs, 1)), PreconditionError);
}

TEST(Compose, HomomorphismAllTypePairs) {
  Sampler s;
  for (VertexType a : {VertexType::C, VertexType::D})
    for (VertexType b : {VertexType::C, VertexType::D})
      for (int k = 0; k < 25; ++k) {
        auto r = s.group_element(a), t = s.group_element(b);
        auto c = compose(r, t);
        EXPECT_EQ(pi_map(c), pi_map(r) * pi_map(t));
        EXPECT_TRUE(c.is_free_fermionic());
        EXPECT_EQ(c.type(), a == b ? VertexType::C : VertexType::D);
      }
}

TEST(Compose, DeltaDeltaCEntry) {
  Sampler s;
  auto r = s.group_element(VertexType::D), t = s.group_element(VertexType::D);
  EXPECT_EQ(compose(r, t).c1(), r.d1() * t.d2());
}

TEST(Compose, Associative) {
  Sampler s;
  for (int k = 0; k < 20; ++k) {
    auto a = s.group_element(k % 2 ? VertexType::C : VertexType::D);
    auto b = s.group_element(VertexType::D), c = s.group_element(VertexType::C);
    EXPECT_EQ(compose(compose(a, b), c), compose(a, compose(b, c)));
  }
}

TEST(Compose, RejectsNonGroupElements) {
  VarSpace k{0};
  auto zero_det = VertexWeights::type_c(k.one(), k.one(), k.one(), k.constant(-1), k.zero(), k.zero());
  Sampler s;
  EXPECT_THROW(compose(zero_det, s.group_element(VertexType::C)), PreconditionError);
}

TEST(Compose, InverseAndAdjoint) {
  Sampler s;
  VarSpace k{0};
  for (VertexType type : {VertexType::C, VertexType::D}) {
    auto w = s.group_element(type);
    auto det = w.a1() * w.a2() + w.b1() * w.b2();
    EXPECT_EQ(pi_map(compose(w, adjoint(w))), End2::scalar(det));
    EXPECT_EQ(pi_map(compose(w, inverse(w))), End2::identity(k));
  }
}

// R_XY o Y(j) is the scalar z_j (t_j + 1) times X(i), equivalently R = X(i) o adj(Y(j)).
TEST(Compose, RMatrixIntertwinesRows) {
  VarSpace vs{2};
  Polynomial scale = vs.z(2) * (vs.t(2) + vs.one());
  for (IceKind x : kKinds)
    for (IceKind y : kKinds) {
      auto r = r_weights(x, y, vs, 1, 2);
      auto xi = ice_weights(x, vs, 1), yj = ice_weights(y, vs, 2);
      EXPECT_EQ(compose(xi, adjoint(yj)), r) << letter(x) << letter(y);
      EXPECT_EQ(pi_map(r) * pi_map(yj), End2::scalar(scale) * pi_map(xi)) << letter(x) << letter(y);
    }
}

TEST(ThreeTerm, GammaRowsGiveRMatrix) {
  VarSpace vs{2};
  auto sol = solve_r_from_st(gamma(vs, 1), gamma(vs, 2));
  auto r = r_weights(IceKind::Gamma, IceKind::Gamma, vs, 1, 2);
  // Proportional entrywise: w * 1 == r * scale.
  for (std::size_t k = 0; k < 6; ++k) {
    auto slot = static_cast<VertexWeights::Slot>(k);
    EXPECT_EQ(sol.weights[slot], sol.scale * r[slot]) << VertexWeights::slot_names[k];
  }
}

TEST(ThreeTerm, EqualInputsGiveZeroB) {
  VarSpace k{0};
  auto s = VertexWeights::type_c(k.constant(2), k.constant(3), k.constant(5), k.constant(7), k.constant(11),
                                 k.constant(13));
  auto sol = solve_r_from_st(s, s);
  EXPECT_TRUE(sol.weights.b1().is_zero());
  EXPECT_TRUE(sol.weights.b2().is_zero());
}

TEST(ThreeTerm, MismatchAndTypeErrors) {
  VarSpace k{0}, vs{2};
  auto s = VertexWeights::type_c(k.constant(2), k.constant(3), k.constant(5), k.constant(7), k.constant(11),
                                 k.constant(13));
  auto t = VertexWeights::type_c(k.one(), k.one(), k.one(), k.one(), k.one(), k.one());
  EXPECT_THROW(solve_r_from_st(s, t), InvariantMismatch);
  EXPECT_THROW(solve_r_from_st(delta(vs, 1), delta(vs, 2)), PreconditionError);
}

TEST(Serialization, WeightsJsonRoundTrip) {
  VarSpace vs{2};
  for (IceKind x : kKinds)
    for (IceKind y : kKinds) {
      auto r = r_weights(x, y, vs, 1, 2);
      EXPECT_EQ(weights_from_json(to_json(r)), r);
    }
}
