#pragma once

// Lambda-boundary ice ensembles: states, their Gelfand-Tsetlin patterns,
// Boltzmann weights, partition functions and row-transfer matrices.

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <array>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ice/matrix.hpp"
#include "ice/poly.hpp"
#include "ice/weights.hpp"

namespace ice {

/// Weakly decreasing non-negative parts; the length fixes the rank n.
class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t k = 0; k < parts_.size(); ++k) {
      if (parts_[k] < 0) throw PreconditionError("partition parts must be non-negative");
      if (k > 0 && parts_[k] > parts_[k - 1]) throw PreconditionError("partition must be weakly decreasing");
    }
  }

  /// "3,1,0" -> (3,1,0).
  static Partition parse(std::string_view text) {
    std::vector<int> parts;
    std::size_t start = 0;
    if (text.empty()) return Partition();
    while (start <= text.size()) {
      std::size_t comma = text.find(',', start);
      std::string item(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
        throw PreconditionError("malformed partition '" + std::string(text) + "'");
      parts.push_back(std::stoi(item));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return Partition(std::move(parts));
  }

  std::size_t n() const { return parts_.size(); }
  const std::vector<int>& parts() const { return parts_; }
  int operator[](std::size_t k) const { return parts_[k]; }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  /// lambda + rho with rho = (n-1, ..., 0).
  std::vector<int> shifted() const {
    std::vector<int> s(parts_);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] += static_cast<int>(s.size() - 1 - k);
    return s;
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t k = 0; k < parts_.size(); ++k) s += (k ? "," : "") + std::to_string(parts_[k]);
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// All partitions with exactly n parts (zeros allowed), each at most max_part.
inline std::vector<Partition> partitions_in_box(std::size_t n, int max_part) {
  std::vector<Partition> out;
  std::vector<int> parts(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int bound) {
    if (k == n) {
      out.emplace_back(parts);
      return;
    }
    for (int v = bound; v >= 0; --v) {
      parts[k] = v;
      rec(k + 1, v);
    }
  };
  rec(0, max_part);
  return out;
}

/// Boundary data of the ensemble for a given ice kind and partition.
/// Columns are stored left to right; column position c carries label
/// lambda_1 + n - 1 - c.
struct BoundarySpec {
  IceKind kind = IceKind::Gamma;
  Partition lambda;

  std::size_t n() const { return lambda.n(); }
  std::size_t columns() const { return static_cast<std::size_t>(lambda.largest()) + n(); }
  int column_label(std::size_t c) const { return static_cast<int>(columns()) - 1 - static_cast<int>(c); }
  std::size_t column_position(int label) const { return columns() - 1 - static_cast<std::size_t>(label); }
  VarSpace var_space() const { return VarSpace{n()}; }

  /// Gamma rows are labelled 1..n top-down, Delta rows n..1.
  std::size_t row_label(std::size_t r) const { return kind == IceKind::Gamma ? r + 1 : n() - r; }

  Spin left() const { return kind == IceKind::Gamma ? Spin::plus : Spin::minus; }
  Spin right() const { return kind == IceKind::Gamma ? Spin::minus : Spin::plus; }
  Spin bottom() const { return Spin::plus; }
  std::vector<Spin> top() const {
    std::vector<Spin> row(columns(), Spin::plus);
    for (int label : lambda.shifted()) row[column_position(label)] = Spin::minus;
    return row;
  }
};

/// Full edge-spin assignment. horizontal[r][c] is the edge left of vertex
/// (r, c) (c = columns() is the right boundary); vertical[r][c] is the edge
/// above vertex (r, c) (r = n is the bottom boundary).
struct LatticeState {
  BoundarySpec boundary;
  std::vector<std::vector<Spin>> horizontal;
  std::vector<std::vector<Spin>> vertical;

  friend bool operator==(const LatticeState& a, const LatticeState& b) {
    return a.boundary.kind == b.boundary.kind && a.boundary.lambda == b.boundary.lambda &&
           a.horizontal == b.horizontal && a.vertical == b.vertical;
  }
};

/// Triangular array; row k has n - k entries, rows interleave.
struct GTPattern {
  std::vector<std::vector<int>> rows;

  bool is_strict() const {
    for (const auto& row : rows)
      for (std::size_t j = 1; j < row.size(); ++j)
        if (row[j] >= row[j - 1]) return false;
    return true;
  }
  bool interleaves() const {
    for (std::size_t k = 1; k < rows.size(); ++k) {
      if (rows[k].size() + 1 != rows[k - 1].size()) return false;
      for (std::size_t j = 0; j < rows[k].size(); ++j)
        if (rows[k][j] > rows[k - 1][j] || rows[k][j] < rows[k - 1][j + 1]) return false;
    }
    return true;
  }
  friend bool operator==(const GTPattern&, const GTPattern&) = default;
};

inline nlohmann::json to_json(const GTPattern& g) { return g.rows; }

/// Visit every Gelfand-Tsetlin pattern with the given top row, rows chosen in
/// decreasing lexicographic order. Returns the number visited.
template <class Visitor>
std::size_t for_each_gt_pattern(const std::vector<int>& top, bool strict, Visitor&& visit) {
  GTPattern g;
  if (top.empty()) {
    visit(static_cast<const GTPattern&>(g));
    return 1;
  }
  g.rows.reserve(top.size());
  g.rows.push_back(top);
  std::size_t count = 0;
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t k, std::size_t j) {
    if (k == top.size()) {
      ++count;
      visit(static_cast<const GTPattern&>(g));
      return;
    }
    const auto& above = g.rows[k - 1];
    if (j == above.size() - 1) {
      fill(k + 1, 0);
      return;
    }
    if (j == 0) g.rows.emplace_back(above.size() - 1);
    int hi = above[j], lo = above[j + 1];
    if (strict && j > 0) hi = std::min(hi, g.rows[k][j - 1] - 1);
    for (int v = hi; v >= lo; --v) {
      g.rows[k][j] = v;
      fill(k, j + 1);
    }
    if (j == 0) g.rows.pop_back();
  };
  if (top.size() == 1) {
    visit(static_cast<const GTPattern&>(g));
    return 1;
  }
  fill(1, 0);
  return count;
}

/// Global enumeration guard; ICE_MAX_STATES overrides the default of 10^7.
inline std::size_t max_states() {
  if (const char* env = std::getenv("ICE_MAX_STATES")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return static_cast<std::size_t>(v);
  }
  return 10'000'000;
}

/// Thrown for a vertex whose four spins are not an allowed configuration.
class InadmissibleVertex : public IceError {
 public:
  InadmissibleVertex(std::size_t row, std::size_t col)
      : IceError("inadmissible vertex at row " + std::to_string(row) + ", column position " +
                 std::to_string(col)),
        row_(row),
        col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_, col_;
};

/// Whether (left, top, right, bottom) is one of the six configurations of the kind.
inline bool admissible(IceKind kind, Spin left, Spin top, Spin right, Spin bottom) {
  if ((bit(left) + bit(top) + bit(right) + bit(bottom)) % 2 != 0) return false;
  std::size_t in = pair_index(left, top), out = pair_index(right, bottom);
  // Type C excludes the d positions, type D excludes the c positions.
  bool d_slot = (out == 0 && in == 3) || (out == 3 && in == 0);
  bool c_slot = (out == 1 && in == 2) || (out == 2 && in == 1);
  return kind == IceKind::Gamma ? !d_slot : !c_slot;
}

namespace detail {
inline void check_state_shape(const LatticeState& s) {
  const auto& b = s.boundary;
  if (s.horizontal.size() != b.n() || s.vertical.size() != b.n() + 1)
    throw PreconditionError("state has the wrong number of rows");
  for (const auto& row : s.horizontal)
    if (row.size() != b.columns() + 1) throw PreconditionError("state has a malformed horizontal row");
  for (const auto& row : s.vertical)
    if (row.size() != b.columns()) throw PreconditionError("state has a malformed vertical row");
}
}  // namespace detail

/// Whether boundary spins match the spec and every vertex is admissible.
inline bool is_valid_state(const LatticeState& s) {
  detail::check_state_shape(s);
  const auto& b = s.boundary;
  if (s.vertical.front() != b.top()) return false;
  for (auto v : s.vertical.back())
    if (v != b.bottom()) return false;
  for (std::size_t r = 0; r < b.n(); ++r) {
    if (s.horizontal[r].front() != b.left() || s.horizontal[r].back() != b.right()) return false;
    for (std::size_t c = 0; c < b.columns(); ++c)
      if (!admissible(b.kind, s.horizontal[r][c], s.vertical[r][c], s.horizontal[r][c + 1], s.vertical[r + 1][c]))
        return false;
  }
  return true;
}

/// State whose vertical minus-positions are the pattern rows; horizontal spins
/// follow from the left boundary by parity. Throws if the result is not a valid state.
inline LatticeState gt_to_state(const GTPattern& g, const BoundarySpec& b) {
  const std::size_t n = b.n(), cols = b.columns();
  if (g.rows.size() != n) throw PreconditionError("pattern has the wrong number of rows");
  if (n > 0 && g.rows.front() != b.lambda.shifted()) throw PreconditionError("pattern top row is not lambda + rho");
  if (!g.interleaves() || !g.is_strict()) throw PreconditionError("pattern is not a strict Gelfand-Tsetlin pattern");
  LatticeState s{b, std::vector<std::vector<Spin>>(n, std::vector<Spin>(cols + 1, Spin::plus)),
                 std::vector<std::vector<Spin>>(n + 1, std::vector<Spin>(cols, Spin::plus))};
  for (std::size_t k = 0; k < n; ++k)
    for (int label : g.rows[k]) {
      if (label < 0 || label >= static_cast<int>(cols)) throw PreconditionError("pattern entry outside the grid");
      s.vertical[k][b.column_position(label)] = Spin::minus;
    }
  for (std::size_t r = 0; r < n; ++r) {
    s.horizontal[r][0] = b.left();
    for (std::size_t c = 0; c < cols; ++c) {
      int parity = bit(s.horizontal[r][c]) ^ bit(s.vertical[r][c]) ^ bit(s.vertical[r + 1][c]);
      s.horizontal[r][c + 1] = spin_from_bit(parity);
    }
  }
  if (!is_valid_state(s)) throw PreconditionError("pattern does not give an admissible state");
  return s;
}

/// Column labels of the minus spins in each vertical row above the bottom.
inline GTPattern state_to_gt(const LatticeState& s) {
  if (!is_valid_state(s)) throw PreconditionError("state is not admissible for its boundary");
  const auto& b = s.boundary;
  GTPattern g;
  for (std::size_t k = 0; k < b.n(); ++k) {
    std::vector<int> row;
    for (std::size_t c = 0; c < b.columns(); ++c)
      if (s.vertical[k][c] == Spin::minus) row.push_back(b.column_label(c));
    g.rows.push_back(std::move(row));
  }
  if (!g.interleaves() || !g.is_strict())
    throw IceError("admissible state produced a non-interleaving pattern");
  return g;
}

/// Calls visit(state) for every state, in pattern order.
template <class Visitor>
std::size_t for_each_state(const BoundarySpec& b, Visitor&& visit) {
  const std::size_t limit = max_states();
  std::size_t count = 0;
  for_each_gt_pattern(b.lambda.shifted(), true, [&](const GTPattern& g) {
    if (++count > limit) throw GuardExceeded("state enumeration exceeded ICE_MAX_STATES=" + std::to_string(limit));
    visit(gt_to_state(g, b));
  });
  return count;
}

inline std::vector<LatticeState> enumerate_states(const BoundarySpec& b) {
  std::vector<LatticeState> out;
  for_each_state(b, [&](LatticeState s) { out.push_back(std::move(s)); });
  return out;
}

/// Exhaustive search over interior edges with per-vertex pruning; independent
/// of the pattern bijection. Requires lambda_1 + n <= 8 and n <= 4.
inline std::vector<LatticeState> brute_force_states(const BoundarySpec& b) {
  const std::size_t n = b.n(), cols = b.columns();
  if (cols > 8 || n > 4) throw GuardExceeded("brute force enumeration needs lambda_1 + n <= 8 and n <= 4");
  LatticeState s{b, std::vector<std::vector<Spin>>(n, std::vector<Spin>(cols + 1, Spin::plus)),
                 std::vector<std::vector<Spin>>(n + 1, std::vector<Spin>(cols, Spin::plus))};
  s.vertical[0] = b.top();
  for (auto& row : s.horizontal) row[0] = b.left();
  std::vector<LatticeState> out;
  std::function<void(std::size_t)> place = [&](std::size_t v) {
    if (v == n * cols) {
      out.push_back(s);
      return;
    }
    const std::size_t r = v / cols, c = v % cols;
    for (Spin right : {Spin::plus, Spin::minus}) {
      if (c + 1 == cols && right != b.right()) continue;
      for (Spin below : {Spin::plus, Spin::minus}) {
        if (r + 1 == n && below != b.bottom()) continue;
        if (!admissible(b.kind, s.horizontal[r][c], s.vertical[r][c], right, below)) continue;
        s.horizontal[r][c + 1] = right;
        s.vertical[r + 1][c] = below;
        place(v + 1);
      }
    }
  };
  if (n == 0 || cols == 0) {
    out.push_back(s);
    return out;
  }
  place(0);
  return out;
}

/// Weight matrices for each row of the grid.
inline std::vector<End2> row_matrices(const BoundarySpec& b) {
  std::vector<End2> m;
  for (std::size_t r = 0; r < b.n(); ++r) m.push_back(ice_weights(b.kind, b.var_space(), b.row_label(r)).matrix());
  return m;
}

namespace detail {
inline Polynomial state_weight_with(const LatticeState& s, const std::vector<End2>& rows) {
  const auto& b = s.boundary;
  Polynomial w = b.var_space().one();
  for (std::size_t r = 0; r < b.n(); ++r)
    for (std::size_t c = 0; c < b.columns(); ++c) {
      Spin left = s.horizontal[r][c], top = s.vertical[r][c], right = s.horizontal[r][c + 1],
           bottom = s.vertical[r + 1][c];
      if (!admissible(b.kind, left, top, right, bottom)) throw InadmissibleVertex(r, c);
      w *= rows[r](pair_index(right, bottom), pair_index(left, top));
    }
  return w;
}
}  // namespace detail

/// Product over all vertices of the Boltzmann weights; row r uses (z_i, t_i)
/// with i its row label.
inline Polynomial state_weight(const LatticeState& s) {
  detail::check_state_shape(s);
  return detail::state_weight_with(s, row_matrices(s.boundary));
}

/// Sum of state weights over the ensemble.
inline Polynomial partition_function(const BoundarySpec& b) {
  const auto rows = row_matrices(b);
  PolynomialAccumulator acc(b.n());
  for_each_state(b, [&](const LatticeState& s) { acc.add(detail::state_weight_with(s, rows)); });
  return acc.take();
}

inline Polynomial partition_function(IceKind kind, const Partition& lambda) {
  return partition_function(BoundarySpec{kind, lambda});
}

/// mu_k = d_k - d_{k+1}, d_k the k-th row sum and d_{n+1} = 0.
inline std::vector<int> gt_row_sums(const GTPattern& g) {
  std::vector<int> d;
  for (const auto& row : g.rows) d.push_back(std::accumulate(row.begin(), row.end(), 0));
  d.push_back(0);
  std::vector<int> mu;
  for (std::size_t k = 0; k + 1 < d.size(); ++k) mu.push_back(d[k] - d[k + 1]);
  return mu;
}

enum class Leaning { left, right, special };

/// Classification of entry j of pattern row k >= 1.
inline Leaning leaning(const GTPattern& g, std::size_t k, std::size_t j) {
  if (g.rows[k][j] == g.rows[k - 1][j]) return Leaning::left;
  if (g.rows[k][j] == g.rows[k - 1][j + 1]) return Leaning::right;
  return Leaning::special;
}

/// Sum over strict patterns with top row lambda + rho of
/// z^mu * prod t^(left-leaning) (t+1)^(special). With per_row_t the entries of
/// pattern row k use t_k; otherwise every row uses the single variable t_1.
inline Polynomial tokuyama_sum(const Partition& lambda, bool per_row_t) {
  const std::size_t n = lambda.n();
  VarSpace vs{n};
  // (z-exponents, left counts, special counts) -> multiplicity
  std::map<std::vector<int>, long> classes;
  for_each_gt_pattern(lambda.shifted(), true, [&](const GTPattern& g) {
    std::vector<int> key = gt_row_sums(g);
    std::vector<int> left(n, 0), special(n, 0);
    for (std::size_t k = 1; k < g.rows.size(); ++k)
      for (std::size_t j = 0; j < g.rows[k].size(); ++j) {
        std::size_t var = per_row_t ? k : 1;
        switch (leaning(g, k, j)) {
          case Leaning::left: ++left[var - 1]; break;
          case Leaning::special: ++special[var - 1]; break;
          case Leaning::right: break;
        }
      }
    key.insert(key.end(), left.begin(), left.end());
    key.insert(key.end(), special.begin(), special.end());
    ++classes[key];
  });
  PolynomialAccumulator acc(n);
  for (const auto& [key, count] : classes) {
    Monomial m(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      m.set(i, static_cast<std::uint32_t>(key[i]));
      m.set(n + i, static_cast<std::uint32_t>(key[n + i]));
    }
    Polynomial term = Polynomial::monomial(n, m, count);
    for (std::size_t i = 0; i < n; ++i)
      if (key[2 * n + i] > 0) term *= pow(vs.t(i + 1) + vs.one(), static_cast<unsigned>(key[2 * n + i]));
    acc.add(term);
  }
  return acc.take();
}

/// Dense matrix of polynomials.
using PolyMatrix = std::vector<std::vector<Polynomial>>;

inline PolyMatrix multiply(const PolyMatrix& a, const PolyMatrix& b) {
  const std::size_t rows = a.size(), inner = b.size(), cols = b.empty() ? 0 : b.front().size();
  const std::size_t rank = rows ? a.front().front().rank() : 0;
  PolyMatrix out(rows, std::vector<Polynomial>(cols, Polynomial(rank)));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      PolynomialAccumulator acc(rank);
      for (std::size_t k = 0; k < inner; ++k)
        if (!a[r][k].is_zero() && !b[k][c].is_zero()) acc.add(a[r][k] * b[k][c]);
      out[r][c] = acc.take();
    }
  return out;
}

/// Row-transfer matrix of one periodic row of n_cols vertices. Entry
/// [alpha][beta] sums the row's weight over horizontal spins, with alpha the
/// spins above and beta the spins below; spin k of an index is bit
/// (n_cols - 1 - k), set for minus.
inline PolyMatrix transfer_matrix(const VertexWeights& w, std::size_t n_cols) {
  if (n_cols == 0 || n_cols > 6) throw GuardExceeded("transfer_matrix supports 1..6 columns");
  const End2 m = w.matrix();
  VarSpace vs = w.var_space();
  const std::size_t dim = std::size_t{1} << n_cols;
  PolyMatrix v(dim, std::vector<Polynomial>(dim, vs.zero()));
  using Two = std::array<std::array<Polynomial, 2>, 2>;
  for (std::size_t alpha = 0; alpha < dim; ++alpha)
    for (std::size_t beta = 0; beta < dim; ++beta) {
      // prod[e_out][e_in]: weight of vertices 1..k with given first left and current right spin.
      Two prod{{{vs.one(), vs.zero()}, {vs.zero(), vs.one()}}};
      for (std::size_t k = 0; k < n_cols; ++k) {
        Spin top = spin_from_bit(static_cast<int>((alpha >> (n_cols - 1 - k)) & 1u));
        Spin bottom = spin_from_bit(static_cast<int>((beta >> (n_cols - 1 - k)) & 1u));
        Two next{{{vs.zero(), vs.zero()}, {vs.zero(), vs.zero()}}};
        for (int out = 0; out < 2; ++out)
          for (int mid = 0; mid < 2; ++mid) {
            const Polynomial& x = m(pair_index(spin_from_bit(out), bottom), pair_index(spin_from_bit(mid), top));
            if (x.is_zero()) continue;
            for (int in = 0; in < 2; ++in)
              if (!prod[mid][in].is_zero()) next[out][in] += x * prod[mid][in];
          }
        prod = std::move(next);
      }
      v[alpha][beta] = prod[0][0] + prod[1][1];
    }
  return v;
}

inline nlohmann::json to_json(const LatticeState& s) {
  auto spins = [](const std::vector<std::vector<Spin>>& grid) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : grid) {
      nlohmann::json r = nlohmann::json::array();
      for (Spin x : row) r.push_back(static_cast<int>(x));
      rows.push_back(r);
    }
    return rows;
  };
  return {{"lambda", s.boundary.lambda.parts()},
          {"kind", std::string(name(s.boundary.kind))},
          {"vertical", spins(s.vertical)},
          {"horizontal", spins(s.horizontal)}};
}

inline LatticeState state_from_json(const nlohmann::json& j) {
  try {
    LatticeState s;
    s.boundary = BoundarySpec{parse_ice_kind(j.at("kind").get<std::string>()),
                              Partition(j.at("lambda").get<std::vector<int>>())};
    auto grid = [](const nlohmann::json& rows) {
      std::vector<std::vector<Spin>> g;
      for (const auto& row : rows) {
        std::vector<Spin> r;
        for (int x : row.get<std::vector<int>>()) {
          if (x != 1 && x != -1) throw IceError("spin must be +1 or -1");
          r.push_back(static_cast<Spin>(x));
        }
        g.push_back(std::move(r));
      }
      return g;
    };
    s.vertical = grid(j.at("vertical"));
    s.horizontal = grid(j.at("horizontal"));
    detail::check_state_shape(s);
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw IceError(std::string("malformed state JSON: ") + e.what());
  }
}

}  // namespace ice
