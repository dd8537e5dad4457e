#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "ice/poly.hpp"

namespace ice {

/// Fixed-size square matrix of polynomials sharing one VarSpace.
template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t dim = N;

  SquareMatrix() = default;
  explicit SquareMatrix(VarSpace vs) : vs_(vs) { entries_.fill(vs.zero()); }

  static SquareMatrix identity(VarSpace vs) {
    SquareMatrix m(vs);
    for (std::size_t k = 0; k < N; ++k) m(k, k) = vs.one();
    return m;
  }
  static SquareMatrix scalar(const Polynomial& s) {
    SquareMatrix m(ice::var_space(s));
    for (std::size_t k = 0; k < N; ++k) m(k, k) = s;
    return m;
  }

  VarSpace var_space() const { return vs_; }
  Polynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * N + c]; }
  const Polynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * N + c]; }

  bool is_zero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return false;
    return true;
  }

  /// Scalar s if the matrix equals s*I.
  std::optional<Polynomial> as_scalar() const {
    for (std::size_t r = 0; r < N; ++r)
      for (std::size_t c = 0; c < N; ++c) {
        if (r == c && !((*this)(r, c) == (*this)(0, 0))) return std::nullopt;
        if (r != c && !(*this)(r, c).is_zero()) return std::nullopt;
      }
    return (*this)(0, 0);
  }

  /// First nonzero entry, scanning row-major; used as a failure witness.
  std::optional<Polynomial> first_nonzero() const {
    for (const auto& e : entries_)
      if (!e.is_zero()) return e;
    return std::nullopt;
  }

  friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    check(a, b);
    SquareMatrix out(a.vs_);
    for (std::size_t r = 0; r < N; ++r) {
      std::vector<PolynomialAccumulator> row(N, PolynomialAccumulator(a.vs_.n));
      for (std::size_t k = 0; k < N; ++k) {
        const Polynomial& x = a(r, k);
        if (x.is_zero()) continue;
        for (std::size_t c = 0; c < N; ++c) {
          const Polynomial& y = b(k, c);
          if (!y.is_zero()) row[c].add(x * y);
        }
      }
      for (std::size_t c = 0; c < N; ++c) out(r, c) = row[c].take();
    }
    return out;
  }
  friend SquareMatrix operator+(const SquareMatrix& a, const SquareMatrix& b) {
    check(a, b);
    SquareMatrix out(a.vs_);
    for (std::size_t k = 0; k < N * N; ++k) out.entries_[k] = a.entries_[k] + b.entries_[k];
    return out;
  }
  friend SquareMatrix operator-(const SquareMatrix& a, const SquareMatrix& b) {
    check(a, b);
    SquareMatrix out(a.vs_);
    for (std::size_t k = 0; k < N * N; ++k) out.entries_[k] = a.entries_[k] - b.entries_[k];
    return out;
  }
  friend SquareMatrix operator*(const Polynomial& s, const SquareMatrix& a) {
    SquareMatrix out(a.vs_);
    for (std::size_t k = 0; k < N * N; ++k) out.entries_[k] = s * a.entries_[k];
    return out;
  }
  friend bool operator==(const SquareMatrix& a, const SquareMatrix& b) {
    return a.vs_ == b.vs_ && a.entries_ == b.entries_;
  }

 private:
  static void check(const SquareMatrix& a, const SquareMatrix& b) {
    if (!(a.vs_ == b.vs_)) throw VarSpaceMismatch(a.vs_.n, b.vs_.n);
  }

  VarSpace vs_{};
  std::array<Polynomial, N * N> entries_{};
};

/// Endomorphism of V (x) V in the basis ++, +-, -+, --.
using End2 = SquareMatrix<4>;
/// Endomorphism of V (x) V (x) V, basis (s1,s2,s3) lexicographic with + before -.
using End3 = SquareMatrix<8>;

template <std::size_t N>
nlohmann::json to_json(const SquareMatrix<N>& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < N; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < N; ++c) row.push_back(to_text(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}

/// Spin of an edge.
enum class Spin : int { plus = 1, minus = -1 };

inline Spin flip(Spin s) { return s == Spin::plus ? Spin::minus : Spin::plus; }
inline int bit(Spin s) { return s == Spin::plus ? 0 : 1; }
inline Spin spin_from_bit(int b) { return b == 0 ? Spin::plus : Spin::minus; }

/// Row/column index of v_a (x) v_b in End2.
inline std::size_t pair_index(Spin a, Spin b) { return 2 * bit(a) + bit(b); }

}  // namespace ice
