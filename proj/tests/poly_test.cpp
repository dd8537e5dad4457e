#include <map>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ice/poly.hpp"

using namespace ice;

namespace {

struct RandomPoly {
  std::mt19937_64 rng{12345};

  GaussianRational coeff() {
    std::uniform_int_distribution<long> num(-6, 6), den(1, 3), kind(0, 3);
    Rational re(num(rng), den(rng));
    re.canonicalize();
    if (kind(rng) == 0) {
      Rational im(num(rng), den(rng));
      im.canonicalize();
      return {re, im};
    }
    return GaussianRational(re);
  }

  Polynomial poly(std::size_t rank, int max_terms = 6, std::uint32_t max_exp = 2) {
    std::uniform_int_distribution<int> terms(0, max_terms);
    std::uniform_int_distribution<std::uint32_t> exp(0, max_exp);
    std::vector<Term> out;
    for (int k = terms(rng); k > 0; --k) {
      Monomial m(2 * rank);
      for (std::size_t v = 0; v < 2 * rank; ++v) m.set(v, exp(rng));
      out.push_back({m, coeff()});
    }
    return Polynomial::from_terms(rank, std::move(out));
  }

  GaussianRational scalar() {
    std::uniform_int_distribution<long> num(-7, 7), den(1, 5);
    Rational re(num(rng), den(rng)), im(num(rng), den(rng));
    re.canonicalize();
    im.canonicalize();
    return {re, im};
  }
  Point point(std::size_t rank) {
    Point p;
    for (std::size_t i = 0; i < rank; ++i) {
      p.z.push_back(scalar());
      p.t.push_back(scalar());
    }
    return p;
  }
};

bool canonical(const Polynomial& p) {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p.terms()[k].coeff.is_zero()) return false;
    if (k > 0 && !graded_lex_before(p.terms()[k - 1].monomial, p.terms()[k].monomial)) return false;
  }
  return true;
}

}  // namespace

TEST(Polynomial, AdditiveInverseIsZero) {
  VarSpace vs{1};
  EXPECT_TRUE((vs.z(1) + (-vs.z(1))).is_zero());
}

TEST(Polynomial, TwoStateSumText) {
  VarSpace vs{2};
  EXPECT_EQ(to_text(vs.t(1) * vs.z(2) + vs.z(1)), "t1*z2 + z1");
}

TEST(Polynomial, AddZeroAndMultiplyByOne) {
  RandomPoly r;
  for (int k = 0; k < 20; ++k) {
    Polynomial p = r.poly(3);
    EXPECT_EQ(p + Polynomial(3), p);
    EXPECT_EQ(Polynomial(3, 1) * p, p);
    EXPECT_TRUE(canonical(p));
  }
}

TEST(Polynomial, DifferenceOfSquares) {
  VarSpace vs{2};
  EXPECT_EQ((vs.z(1) - vs.z(2)) * (vs.z(1) + vs.z(2)), vs.z(1) * vs.z(1) - vs.z(2) * vs.z(2));
}

// Expand prod_{i<j} (t_i z_j + z_i) by choosing one summand per factor.
TEST(Polynomial, DeformedProductMatchesChoiceExpansion) {
  const std::size_t n = 3;
  VarSpace vs{n};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j) pairs.emplace_back(i, j);

  std::map<std::vector<std::uint32_t>, long> oracle;
  for (unsigned choice = 0; choice < (1u << pairs.size()); ++choice) {
    std::vector<std::uint32_t> e(2 * n, 0);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      auto [i, j] = pairs[k];
      if (choice >> k & 1u) {
        ++e[n + i - 1];
        ++e[j - 1];
      } else {
        ++e[i - 1];
      }
    }
    ++oracle[e];
  }

  Polynomial p = vs.one();
  for (auto [i, j] : pairs) p *= vs.t(i) * vs.z(j) + vs.z(i);
  EXPECT_EQ(p.size(), 8u);
  ASSERT_EQ(p.size(), oracle.size());
  for (const auto& term : p.terms()) {
    std::vector<std::uint32_t> e(term.monomial.exponents().begin(), term.monomial.exponents().end());
    ASSERT_TRUE(oracle.count(e));
    EXPECT_EQ(term.coeff, GaussianRational(oracle[e]));
  }
}

TEST(Polynomial, RingAxioms) {
  RandomPoly r;
  for (int k = 0; k < 40; ++k) {
    Polynomial a = r.poly(2), b = r.poly(2), c = r.poly(2);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) + c, a + (b + c));
  }
}

// Integer coefficients exercise the packed product; compare it with the
// evaluation homomorphism and with the term-by-term product.
TEST(Polynomial, LargeIntegerProducts) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> coef(-1'000'000, 1'000'000);
  std::uniform_int_distribution<std::uint32_t> exp(0, 5);
  auto make = [&](int terms) {
    std::vector<Term> out;
    for (int k = 0; k < terms; ++k) {
      Monomial m(6);
      for (std::size_t v = 0; v < 6; ++v) m.set(v, exp(rng));
      out.push_back({m, GaussianRational(coef(rng))});
    }
    return Polynomial::from_terms(3, std::move(out));
  };
  RandomPoly r;
  for (int k = 0; k < 10; ++k) {
    Polynomial a = make(30), b = make(30), c = make(3);
    Polynomial ab = a * b;
    EXPECT_TRUE(canonical(ab));
    PolynomialAccumulator acc(3);
    for (const auto& t : b.terms()) acc.add(a * Polynomial::monomial(3, t.monomial, t.coeff));
    EXPECT_EQ(ab, acc.take());
    Point x = r.point(3);
    EXPECT_EQ(eval(ab, x), eval(a, x) * eval(b, x));
    EXPECT_EQ(Polynomial::product(a, {b, c}), ab * c);
  }
}

TEST(Polynomial, RankMismatchThrows) {
  VarSpace two{2}, three{3};
  EXPECT_THROW(two.z(1) + three.z(1), VarSpaceMismatch);
  EXPECT_THROW(two.z(1) * three.z(1), VarSpaceMismatch);
  EXPECT_THROW(two.z(3), PreconditionError);
}

TEST(Division, Examples) {
  VarSpace vs{2};
  Polynomial d = vs.z(1) * vs.z(1) - vs.z(2) * vs.z(2);
  EXPECT_EQ(exact_div(d, vs.z(1) - vs.z(2)), vs.z(1) + vs.z(2));
  EXPECT_EQ(exact_div(d, vs.one()), d);
  Polynomial two_state = vs.t(1) * vs.z(2) + vs.z(1);
  EXPECT_EQ(exact_div(two_state, vs.z(1) + vs.t(1) * vs.z(2)), vs.one());
}

TEST(Division, InexactReportsRemainder) {
  VarSpace vs{2};
  Polynomial p = vs.z(1) * vs.z(1) + vs.one();
  try {
    exact_div(p, vs.z(1));
    FAIL() << "expected InexactDivision";
  } catch (const InexactDivision& e) {
    EXPECT_EQ(e.remainder(), vs.one());
  }
  EXPECT_THROW(exact_div(p, vs.zero()), PreconditionError);
}

TEST(Division, ProductRoundTrip) {
  RandomPoly r;
  for (int k = 0; k < 40; ++k) {
    Polynomial p = r.poly(2), q = r.poly(2);
    if (q.is_zero()) continue;
    EXPECT_EQ(exact_div(p * q, q), p);
  }
}

TEST(Eval, Examples) {
  VarSpace vs{2};
  Point x{{2, 3}, {5, 11}};
  EXPECT_EQ(eval(vs.t(1) * vs.z(2) + vs.z(1), x), GaussianRational(17));
  EXPECT_EQ(eval(vs.zero(), x), GaussianRational(0));
  EXPECT_THROW(eval(vs.z(1), Point{{2}, {5}}), PreconditionError);
}

TEST(Eval, IsRingHomomorphism) {
  RandomPoly r;
  for (int k = 0; k < 50; ++k) {
    Polynomial p = r.poly(3), q = r.poly(3);
    Point x = r.point(3);
    EXPECT_EQ(eval(p * q, x), eval(p, x) * eval(q, x));
    EXPECT_EQ(eval(p + q, x), eval(p, x) + eval(q, x));
  }
}

TEST(Permute, Examples) {
  VarSpace vs{2};
  Polynomial p = vs.t(1) * vs.z(2) + vs.z(1);
  std::vector<std::size_t> id{0, 1}, swap{1, 0};
  EXPECT_EQ(permute_rank_variables(p, id), p);
  EXPECT_EQ(permute_rank_variables(p, swap), vs.t(2) * vs.z(1) + vs.z(2));
  EXPECT_EQ(swap_adjacent(p, 1), vs.t(2) * vs.z(1) + vs.z(2));
  std::vector<std::size_t> bad{0, 0};
  EXPECT_THROW(permute_rank_variables(p, bad), PreconditionError);
}

TEST(Permute, SymmetricProductIsFixed) {
  const std::size_t n = 3;
  VarSpace vs{n};
  Polynomial p = vs.one();
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = 1; j <= n; ++j)
      if (i != j) p *= vs.t(j) * vs.z(i) + vs.z(j);
  std::vector<std::size_t> sigma{0, 1, 2};
  do {
    EXPECT_EQ(permute_rank_variables(p, sigma), p);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST(Substitute, IdentityAndSpecialization) {
  RandomPoly r;
  Polynomial p = r.poly(2);
  EXPECT_EQ(substitute(p, identity_images(2)), p);
  VarSpace vs{2};
  auto images = identity_images(2);
  images[2] = vs.constant(-1);  // t1 -> -1
  EXPECT_EQ(substitute(vs.t(1) * vs.z(2) + vs.z(1), images), vs.z(1) - vs.z(2));
}

TEST(Serialization, JsonRoundTrip) {
  RandomPoly r;
  for (int k = 0; k < 30; ++k) {
    Polynomial p = r.poly(3);
    auto j = to_json(p);
    EXPECT_EQ(polynomial_from_json(j), p);
    EXPECT_EQ(to_json(polynomial_from_json(j)).dump(), j.dump());
  }
  EXPECT_THROW(polynomial_from_json(nlohmann::json::parse(R"({"n": 1})")), IceError);
}

TEST(Serialization, JsonCanonicalizesRationals) {
  auto j = nlohmann::json::parse(R"({"n":1,"terms":[{"z":[1],"t":[0],"re":"2/4","im":"0"},
                                                    {"z":[1],"t":[0],"re":"1/2","im":"0"}]})");
  VarSpace vs{1};
  EXPECT_EQ(polynomial_from_json(j), vs.z(1));
}

TEST(Serialization, TextForm) {
  VarSpace vs{2};
  EXPECT_EQ(to_text(vs.zero()), "0");
  EXPECT_EQ(to_text(vs.constant(GaussianRational(Rational(-3, 2)))), "-3/2");
  Polynomial p = pow(vs.z(1), 2) * vs.t(2) - vs.constant(2) * vs.z(2) + vs.one();
  EXPECT_EQ(to_text(p), "t2*z1^2 - 2*z2 + 1");
}
