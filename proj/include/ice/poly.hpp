#pragma once

// Exact sparse polynomials in z_1..z_n, t_1..t_n over the Gaussian rationals.

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <nlohmann/json.hpp>

#include "ice/errors.hpp"

namespace ice {

using Rational = mpq_class;

inline Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0)
    throw IceError("malformed rational '" + text + "'");
  q.canonicalize();
  return q;
}

/// re + im*i with exact rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(implicit)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT(implicit)
  GaussianRational(Rational re, Rational im)
      : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw IceError("division by zero");
    if (o.is_real()) {
      re_ /= o.re_;
      if (sgn(im_) != 0) im_ /= o.re_;
      return *this;
    }
    Rational n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "3/2", "-i", "(1-2*i)" ...
  std::string to_string() const {
    if (is_real()) return re_.get_str();
    std::string im_part;
    if (im_ == 1)
      im_part = "i";
    else if (im_ == -1)
      im_part = "-i";
    else
      im_part = im_.get_str() + "*i";
    if (sgn(re_) == 0) return im_part;
    std::string out = "(" + re_.get_str();
    if (sgn(im_) > 0) out += "+";
    return out + im_part + ")";
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Exponent vector of length 2n: z-block then t-block.
class Monomial {
 public:
  using Exponents = boost::container::small_vector<std::uint32_t, 12>;

  Monomial() = default;
  explicit Monomial(std::size_t num_vars) : exps_(num_vars, 0) {}
  explicit Monomial(Exponents exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), std::uint64_t{0});
  }

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t v) const { return exps_[v]; }
  std::uint64_t degree() const { return degree_; }
  const Exponents& exponents() const { return exps_; }

  void set(std::size_t v, std::uint32_t e) {
    degree_ = degree_ - exps_[v] + e;
    exps_[v] = e;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t v = 0; v < exps_.size(); ++v) r.exps_[v] += o.exps_[v];
    r.degree_ += o.degree_;
    return r;
  }
  bool divides(const Monomial& o) const {
    for (std::size_t v = 0; v < exps_.size(); ++v)
      if (exps_[v] > o.exps_[v]) return false;
    return true;
  }
  /// o / *this, assuming divides(o).
  Monomial quotient_of(const Monomial& o) const {
    Monomial r = o;
    for (std::size_t v = 0; v < exps_.size(); ++v) r.exps_[v] -= exps_[v];
    r.degree_ -= degree_;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }

  /// Graded lexicographic order, descending: higher total degree first, ties
  /// broken lexicographically on the exponent vector (z_1 most significant).
  friend bool graded_lex_before(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ > b.degree_;
    return std::lexicographical_compare(b.exps_.begin(), b.exps_.end(),
                                        a.exps_.begin(), a.exps_.end());
  }

  std::size_t hash() const {
    std::size_t h = exps_.size();
    for (auto e : exps_) h = h * 1000003u ^ (e + 0x9e3779b9u + (h << 6) + (h >> 2));
    return h;
  }

 private:
  Exponents exps_;
  std::uint64_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
  Monomial monomial;
  GaussianRational coeff;
};

/// Variable handle; index is 1-based, z_1..z_n and t_1..t_n.
struct Var {
  enum class Kind { z, t } kind;
  std::size_t index;

  static Var z(std::size_t i) { return {Kind::z, i}; }
  static Var t(std::size_t i) { return {Kind::t, i}; }
  std::size_t slot(std::size_t rank) const {
    if (index < 1 || index > rank)
      throw PreconditionError("variable index " + std::to_string(index) +
                              " outside 1.." + std::to_string(rank));
    return (kind == Kind::z ? 0 : rank) + index - 1;
  }
};

class Polynomial;
class InexactDivision;

/// Sparse polynomial; terms kept in graded-lex descending order with no zero
/// coefficients, so structural equality is mathematical equality.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t rank) : rank_(rank) {}
  Polynomial(std::size_t rank, const GaussianRational& c) : rank_(rank) {
    if (!c.is_zero()) terms_.push_back({Monomial(2 * rank), c});
  }
  static Polynomial monomial(std::size_t rank, Monomial m, GaussianRational c) {
    Polynomial p(rank);
    if (m.size() != 2 * rank) throw IceError("monomial length does not match rank");
    if (!c.is_zero()) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }
  static Polynomial variable(std::size_t rank, Var v, std::uint32_t power = 1) {
    Monomial m(2 * rank);
    m.set(v.slot(rank), power);
    return monomial(rank, std::move(m), 1);
  }
  /// Takes terms in any order and with repeats; canonicalizes.
  static Polynomial from_terms(std::size_t rank, std::vector<Term> terms) {
    Polynomial p(rank);
    for (const auto& t : terms)
      if (t.monomial.size() != 2 * rank) throw IceError("monomial length does not match rank");
    p.terms_ = std::move(terms);
    p.canonicalize();
    return p;
  }

  std::size_t rank() const { return rank_; }
  std::size_t num_vars() const { return 2 * rank_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::optional<GaussianRational> as_constant() const {
    if (terms_.empty()) return GaussianRational(0);
    if (terms_.size() == 1 && terms_[0].monomial.degree() == 0) return terms_[0].coeff;
    return std::nullopt;
  }
  bool is_constant() const { return as_constant().has_value(); }

  std::uint64_t degree() const { return terms_.empty() ? 0 : terms_.front().monomial.degree(); }
  std::uint32_t degree_in(Var v) const {
    std::size_t s = v.slot(rank_);
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.monomial[s]);
    return d;
  }
  /// True if no term involves any t_i.
  bool t_free() const {
    for (const auto& t : terms_)
      for (std::size_t v = rank_; v < 2 * rank_; ++v)
        if (t.monomial[v] != 0) return false;
    return true;
  }

  const Term& leading_term() const { return terms_.front(); }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = merge(*this, o, false); }
  Polynomial& operator-=(const Polynomial& o) { return *this = merge(*this, o, true); }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    check_rank(a, b);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.rank_);
    if (a.terms_.size() == 1) return b.times_term(a.terms_[0]);
    if (b.terms_.size() == 1) return a.times_term(b.terms_[0]);
    if (auto packed = multiply_packed({&a, &b})) return std::move(*packed);
    const Polynomial& big = a.size() >= b.size() ? a : b;
    const Polynomial& small = a.size() >= b.size() ? b : a;
    // Each row big*term is already sorted; accumulate rows by hashing.
    std::unordered_map<Monomial, GaussianRational, MonomialHash> acc;
    acc.reserve(big.size() * small.size());
    for (const auto& s : small.terms_)
      for (const auto& t : big.terms_) {
        auto [it, inserted] = acc.try_emplace(t.monomial * s.monomial, t.coeff);
        if (inserted)
          it->second *= s.coeff;
        else
          it->second += t.coeff * s.coeff;
      }
    return from_map(a.rank_, std::move(acc));
  }
  /// p * factors[0] * factors[1] * ..., avoiding intermediate conversions when it can.
  static Polynomial product(const Polynomial& p, const std::vector<Polynomial>& factors) {
    std::vector<const Polynomial*> all{&p};
    for (const auto& f : factors) all.push_back(&f);
    for (const auto* f : all)
      if (f->is_zero()) return Polynomial(p.rank_);
    if (auto packed = multiply_packed(all)) return std::move(*packed);
    Polynomial r = p;
    for (const auto& f : factors) r = r * f;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const GaussianRational& c) {
    if (c.is_zero()) return Polynomial(a.rank_);
    Polynomial r = a;
    for (auto& t : r.terms_) t.coeff *= c;
    return r;
  }
  friend Polynomial operator*(const GaussianRational& c, const Polynomial& a) { return a * c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.rank_ != b.rank_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t k = 0; k < a.terms_.size(); ++k)
      if (!(a.terms_[k].monomial == b.terms_[k].monomial) ||
          !(a.terms_[k].coeff == b.terms_[k].coeff))
        return false;
    return true;
  }

  static void check_rank(const Polynomial& a, const Polynomial& b) {
    if (a.rank_ != b.rank_) throw VarSpaceMismatch(a.rank_, b.rank_);
  }

  static Polynomial from_map(std::size_t rank,
                             std::unordered_map<Monomial, GaussianRational, MonomialHash>&& acc) {
    Polynomial r(rank);
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (!c.is_zero()) r.terms_.push_back({m, std::move(c)});
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& x, const Term& y) { return graded_lex_before(x.monomial, y.monomial); });
    return r;
  }

 private:
  // Fast path for products whose coefficients are small integers and whose
  // exponents fit in fixed-width fields of one 64-bit key.
  static constexpr long kSmallCoefficient = 1L << 40;

  static bool small_integer(const GaussianRational& c) {
    if (!c.is_real() || c.real().get_den() != 1) return false;
    const mpz_class& num = c.real().get_num();
    return mpz_cmpabs_ui(num.get_mpz_t(), static_cast<unsigned long>(kSmallCoefficient)) < 0;
  }

  using PackedTerms = std::vector<std::pair<std::uint64_t, __int128>>;

  // Product of all factors in packed form, or nothing if some coefficient is
  // not a small integer or the exponents could overflow their fields.
  static std::optional<Polynomial> multiply_packed(const std::vector<const Polynomial*>& factors) {
    const std::size_t rank = factors.front()->rank_, vars = 2 * rank;
    if (vars == 0 || vars > 64) return std::nullopt;
    const unsigned width = static_cast<unsigned>(64 / vars);
    std::vector<std::uint64_t> max_total(vars, 0);
    for (const Polynomial* f : factors) {
      check_rank(*factors.front(), *f);
      std::vector<std::uint32_t> max_f(vars, 0);
      for (const auto& t : f->terms_) {
        if (!small_integer(t.coeff)) return std::nullopt;
        for (std::size_t v = 0; v < vars; ++v) max_f[v] = std::max(max_f[v], t.monomial[v]);
      }
      for (std::size_t v = 0; v < vars; ++v) max_total[v] += max_f[v];
    }
    for (std::size_t v = 0; v < vars; ++v)
      if (width < 64 && max_total[v] >> width) return std::nullopt;

    // Variable 0 in the high field, so key order is lexicographic order.
    auto shift = [&](std::size_t v) { return static_cast<unsigned>(width * (vars - 1 - v)); };
    auto pack = [&](const Polynomial& p) {
      PackedTerms out;
      out.reserve(p.size());
      for (const auto& t : p.terms_) {
        std::uint64_t key = 0;
        for (std::size_t v = 0; v < vars; ++v) key |= std::uint64_t{t.monomial[v]} << shift(v);
        out.emplace_back(key, t.coeff.real().get_num().get_si());
      }
      return out;
    };
    constexpr __int128 kCoefficientLimit = static_cast<__int128>(1) << 60;
    auto small = [&](const PackedTerms& p) {
      for (const auto& term : p)
        if (term.second >= kCoefficientLimit || term.second <= -kCoefficientLimit) return false;
      return true;
    };

    // Terms stay sorted by key, descending. Shifting by a fixed key keeps a
    // row sorted (fields cannot carry), so each product is a k-way merge.
    auto by_key = [](const auto& x, const auto& y) { return x.first > y.first; };
    auto sorted_terms = [&](const Polynomial& p) {
      PackedTerms t = pack(p);
      std::sort(t.begin(), t.end(), by_key);
      return t;
    };
    PackedTerms acc_terms = sorted_terms(*factors.front());
    for (std::size_t k = 1; k < factors.size(); ++k) {
      if (!small(acc_terms)) return std::nullopt;
      const PackedTerms pb = pack(*factors[k]);
      std::vector<PackedTerms> rows;
      for (const auto& [kb, cb] : pb) {
        PackedTerms row;
        row.reserve(acc_terms.size());
        for (const auto& [ka, ca] : acc_terms) row.emplace_back(ka + kb, ca * cb);
        rows.push_back(std::move(row));
      }
      while (rows.size() > 1) {
        std::vector<PackedTerms> next;
        for (std::size_t r = 0; r + 1 < rows.size(); r += 2) {
          PackedTerms merged(rows[r].size() + rows[r + 1].size());
          std::merge(rows[r].begin(), rows[r].end(), rows[r + 1].begin(), rows[r + 1].end(), merged.begin(), by_key);
          next.push_back(std::move(merged));
        }
        if (rows.size() % 2) next.push_back(std::move(rows.back()));
        rows = std::move(next);
      }
      acc_terms.clear();
      for (const auto& term : rows.front()) {
        if (!acc_terms.empty() && acc_terms.back().first == term.first)
          acc_terms.back().second += term.second;
        else
          acc_terms.push_back(term);
      }
      std::erase_if(acc_terms, [](const auto& term) { return term.second == 0; });
    }

    const std::uint64_t mask = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    auto degree = [&](std::uint64_t key) {
      std::uint64_t d = 0;
      for (std::size_t v = 0; v < vars; ++v) d += (key >> shift(v)) & mask;
      return d;
    };
    std::vector<std::tuple<std::uint64_t, std::uint64_t, __int128>> sorted;
    sorted.reserve(acc_terms.size());
    for (const auto& [key, c] : acc_terms) sorted.emplace_back(degree(key), key, c);
    std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
      return std::get<0>(x) != std::get<0>(y) ? std::get<0>(x) > std::get<0>(y) : std::get<1>(x) > std::get<1>(y);
    });
    Polynomial r(rank);
    r.terms_.reserve(sorted.size());
    for (const auto& [d, key, c] : sorted) {
      Monomial::Exponents e(vars, 0);
      for (std::size_t v = 0; v < vars; ++v) e[v] = static_cast<std::uint32_t>((key >> shift(v)) & mask);
      r.terms_.push_back({Monomial(std::move(e)), GaussianRational(Rational(int128_to_mpz(c)))});
    }
    return r;
  }

  static mpz_class int128_to_mpz(__int128 c) {
    if (c >= LONG_MIN && c <= LONG_MAX) return mpz_class(static_cast<long>(c));
    const bool negative = c < 0;
    unsigned __int128 u = negative ? -static_cast<unsigned __int128>(c) : static_cast<unsigned __int128>(c);
    mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~std::uint64_t{0}));
    mpz_class r = (hi << 64) + lo;
    return negative ? mpz_class(-r) : r;
  }

  Polynomial times_term(const Term& s) const {
    // Multiplying by a fixed monomial preserves graded-lex order.
    Polynomial r(rank_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.monomial * s.monomial, t.coeff * s.coeff});
    return r;
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    check_rank(a, b);
    Polynomial r(a.rank_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && graded_lex_before(a.terms_[i].monomial, b.terms_[j].monomial))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || graded_lex_before(b.terms_[j].monomial, a.terms_[i].monomial)) {
        r.terms_.push_back(b.terms_[j++]);
        if (subtract) r.terms_.back().coeff = -r.terms_.back().coeff;
      } else {
        GaussianRational c = subtract ? a.terms_[i].coeff - b.terms_[j].coeff
                                      : a.terms_[i].coeff + b.terms_[j].coeff;
        if (!c.is_zero()) r.terms_.push_back({a.terms_[i].monomial, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  void canonicalize() {
    std::unordered_map<Monomial, GaussianRational, MonomialHash> acc;
    for (auto& t : terms_) {
      auto [it, inserted] = acc.try_emplace(t.monomial, t.coeff);
      if (!inserted) it->second += t.coeff;
    }
    *this = from_map(rank_, std::move(acc));
  }

  std::size_t rank_ = 0;
  std::vector<Term> terms_;
};

/// Rank n of a computation: variables z_1..z_n, t_1..t_n.
struct VarSpace {
  std::size_t n = 0;

  Polynomial zero() const { return Polynomial(n); }
  Polynomial one() const { return Polynomial(n, 1); }
  Polynomial constant(const GaussianRational& c) const { return Polynomial(n, c); }
  Polynomial z(std::size_t i) const { return Polynomial::variable(n, Var::z(i)); }
  Polynomial t(std::size_t i) const { return Polynomial::variable(n, Var::t(i)); }

  friend bool operator==(const VarSpace&, const VarSpace&) = default;
};

inline VarSpace var_space(const Polynomial& p) { return VarSpace{p.rank()}; }

/// Sum of many polynomials without repeated re-sorting.
class PolynomialAccumulator {
 public:
  explicit PolynomialAccumulator(std::size_t rank) : rank_(rank) {}

  void add(const Polynomial& p) {
    if (p.rank() != rank_) throw VarSpaceMismatch(rank_, p.rank());
    for (const auto& t : p.terms()) {
      auto [it, inserted] = acc_.try_emplace(t.monomial, t.coeff);
      if (!inserted) it->second += t.coeff;
    }
  }
  Polynomial take() { return Polynomial::from_map(rank_, std::move(acc_)); }

 private:
  std::size_t rank_;
  std::unordered_map<Monomial, GaussianRational, MonomialHash> acc_;
};

inline Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result(p.rank(), 1);
  Polynomial base = p;
  while (e != 0) {
    if (e & 1u) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

/// Thrown by exact_div; carries the nonzero remainder as a witness.
class InexactDivision : public IceError {
 public:
  explicit InexactDivision(Polynomial remainder)
      : IceError("inexact polynomial division (" + std::to_string(remainder.size()) +
                 " remainder terms)"),
        remainder_(std::move(remainder)) {}
  const Polynomial& remainder() const { return remainder_; }

 private:
  Polynomial remainder_;
};

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Division with remainder by a single divisor under graded-lex order.
inline DivisionResult divide(const Polynomial& p, const Polynomial& q) {
  Polynomial::check_rank(p, q);
  if (q.is_zero()) throw PreconditionError("division by the zero polynomial");
  const std::size_t n = p.rank();
  const Term& lead = q.leading_term();
  std::vector<Term> quotient;
  std::vector<Term> remainder;
  Polynomial rest = p;
  while (!rest.is_zero()) {
    const Term& top = rest.leading_term();
    if (lead.monomial.divides(top.monomial)) {
      Term step{lead.monomial.quotient_of(top.monomial), top.coeff / lead.coeff};
      rest -= Polynomial::monomial(n, step.monomial, step.coeff) * q;
      quotient.push_back(std::move(step));
    } else {
      remainder.push_back(top);
      rest -= Polynomial::monomial(n, top.monomial, top.coeff);
    }
  }
  return {Polynomial::from_terms(n, std::move(quotient)), Polynomial::from_terms(n, std::move(remainder))};
}

/// r with r*q == p; throws InexactDivision when q does not divide p.
inline Polynomial exact_div(const Polynomial& p, const Polynomial& q) {
  auto [quotient, remainder] = divide(p, q);
  if (!remainder.is_zero()) throw InexactDivision(std::move(remainder));
  return quotient;
}

/// Values for z_1..z_n and t_1..t_n.
struct Point {
  std::vector<GaussianRational> z;
  std::vector<GaussianRational> t;
};

inline GaussianRational eval(const Polynomial& p, const Point& point) {
  const std::size_t n = p.rank();
  if (point.z.size() != n || point.t.size() != n)
    throw PreconditionError("evaluation point must assign all " + std::to_string(2 * n) +
                            " variables");
  std::vector<std::vector<GaussianRational>> powers(2 * n, std::vector<GaussianRational>{1});
  auto power = [&](std::size_t v, std::uint32_t e) -> const GaussianRational& {
    auto& cache = powers[v];
    const GaussianRational& base = v < n ? point.z[v] : point.t[v - n];
    while (cache.size() <= e) cache.push_back(cache.back() * base);
    return cache[e];
  };
  GaussianRational sum;
  for (const auto& term : p.terms()) {
    GaussianRational x = term.coeff;
    for (std::size_t v = 0; v < 2 * n; ++v)
      if (term.monomial[v] != 0) x *= power(v, term.monomial[v]);
    sum += x;
  }
  return sum;
}

/// Simultaneous substitution z_i -> z_sigma(i), t_i -> t_sigma(i).
/// sigma is 0-based: sigma[i] is the image of index i.
inline Polynomial permute_rank_variables(const Polynomial& p, std::span<const std::size_t> sigma) {
  const std::size_t n = p.rank();
  if (sigma.size() != n) throw PreconditionError("permutation length must equal rank");
  std::vector<bool> seen(n, false);
  for (auto s : sigma) {
    if (s >= n || seen[s]) throw PreconditionError("not a permutation");
    seen[s] = true;
  }
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& term : p.terms()) {
    Monomial::Exponents e(2 * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      e[sigma[i]] = term.monomial[i];
      e[n + sigma[i]] = term.monomial[n + i];
    }
    out.push_back({Monomial(std::move(e)), term.coeff});
  }
  return Polynomial::from_terms(n, std::move(out));
}

/// Swap of adjacent indices k and k+1 (1-based), applied to both z and t.
inline Polynomial swap_adjacent(const Polynomial& p, std::size_t k) {
  std::vector<std::size_t> sigma(p.rank());
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  if (k < 1 || k >= p.rank()) throw PreconditionError("swap index out of range");
  std::swap(sigma[k - 1], sigma[k]);
  return permute_rank_variables(p, sigma);
}

/// Replace every variable by a polynomial. images[v] is the image of variable
/// slot v (z-block then t-block); all images share one rank.
inline Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images) {
  if (images.size() != p.num_vars()) throw PreconditionError("substitution needs one image per variable");
  const std::size_t out_rank = images.empty() ? p.rank() : images.front().rank();
  std::vector<std::vector<Polynomial>> powers(images.size());
  PolynomialAccumulator acc(out_rank);
  for (const auto& term : p.terms()) {
    Polynomial x(out_rank, term.coeff);
    for (std::size_t v = 0; v < images.size(); ++v) {
      std::uint32_t e = term.monomial[v];
      if (e == 0) continue;
      auto& cache = powers[v];
      if (cache.empty()) cache.push_back(Polynomial(out_rank, 1));
      while (cache.size() <= e) cache.push_back(cache.back() * images[v]);
      x *= cache[e];
    }
    acc.add(x);
  }
  return acc.take();
}

/// Identity substitution images for rank n, to be edited by callers.
inline std::vector<Polynomial> identity_images(std::size_t n) {
  VarSpace vs{n};
  std::vector<Polynomial> images;
  for (std::size_t i = 1; i <= n; ++i) images.push_back(vs.z(i));
  for (std::size_t i = 1; i <= n; ++i) images.push_back(vs.t(i));
  return images;
}

/// Human-readable form such as "t1*z2 + z1".
inline std::string to_text(const Polynomial& p) {
  if (p.is_zero()) return "0";
  const std::size_t n = p.rank();
  std::ostringstream out;
  bool first = true;
  for (const auto& term : p.terms()) {
    std::string factors;
    auto append = [&](char name, std::size_t i, std::uint32_t e) {
      if (e == 0) return;
      if (!factors.empty()) factors += "*";
      factors += name + std::to_string(i);
      if (e > 1) factors += "^" + std::to_string(e);
    };
    for (std::size_t i = 0; i < n; ++i) append('t', i + 1, term.monomial[n + i]);
    for (std::size_t i = 0; i < n; ++i) append('z', i + 1, term.monomial[i]);

    GaussianRational c = term.coeff;
    bool negative = c.is_real() && sgn(c.real()) < 0;
    if (negative) c = -c;
    if (first)
      out << (negative ? "-" : "");
    else
      out << (negative ? " - " : " + ");
    first = false;
    if (factors.empty())
      out << c.to_string();
    else if (c.is_one())
      out << factors;
    else
      out << c.to_string() << "*" << factors;
  }
  return out.str();
}

/// {"n": .., "terms": [{"z": [...], "t": [...], "re": "p/q", "im": "r/s"}, ...]}
inline nlohmann::json to_json(const Polynomial& p) {
  const std::size_t n = p.rank();
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& term : p.terms()) {
    std::vector<std::uint32_t> z(n), t(n);
    for (std::size_t i = 0; i < n; ++i) {
      z[i] = term.monomial[i];
      t[i] = term.monomial[n + i];
    }
    terms.push_back({{"z", z}, {"t", t}, {"re", term.coeff.real().get_str()},
                     {"im", term.coeff.imag().get_str()}});
  }
  return {{"n", n}, {"terms", terms}};
}

inline Polynomial polynomial_from_json(const nlohmann::json& j) {
  try {
    const std::size_t n = j.at("n").get<std::size_t>();
    std::vector<Term> terms;
    for (const auto& jt : j.at("terms")) {
      auto z = jt.at("z").get<std::vector<std::uint32_t>>();
      auto t = jt.at("t").get<std::vector<std::uint32_t>>();
      if (z.size() != n || t.size() != n) throw IceError("exponent block length differs from n");
      Monomial::Exponents e(z.begin(), z.end());
      e.insert(e.end(), t.begin(), t.end());
      terms.push_back({Monomial(std::move(e)),
                       GaussianRational(parse_rational(jt.at("re").get<std::string>()),
                                        parse_rational(jt.at("im").get<std::string>()))});
    }
    return Polynomial::from_terms(n, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    throw IceError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

}  // namespace ice
