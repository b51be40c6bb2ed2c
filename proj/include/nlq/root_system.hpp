#pragma once

/**
 * @file root_system.hpp
 * @brief Simply-laced root systems from their Cartan matrices: root
 *        generation by reflection closure, highest roots, weighted
 *        projective weights, and Weyl-invariant bilinear forms.
 *
 * Roots are held in simple-root coordinates, where the simple reflection
 * s_i acts by x |-> x - <x, alpha_i^vee> e_i and the pairing is read off
 * the Cartan matrix. For the ADE systems used here the Cartan matrix is
 * symmetric and coincides with the Gram matrix of the root basis, so
 * highest roots and highest coroots have the same coefficients (E8 in
 * particular is self-dual).
 */

#include <cstdint>
#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "nlq/lattice.hpp"

namespace nlq {

struct NotIrreducible : Error {
  NotIrreducible() : Error("operation requires an irreducible root system") {}
};

class RootSystem {
 public:
  RootSystem(GramMatrix cartan, std::string name = "") : cartan_(std::move(cartan)), name_(std::move(name)) {
    size_t n = cartan_.size();
    if (n == 0) throw Error("root system rank must be positive");
    for (size_t i = 0; i < n; ++i) {
      if (cartan_[i].size() != n) throw Error("Cartan matrix must be square");
      if (cartan_[i][i] != 2) throw Error("Cartan matrix diagonal must be 2");
      for (size_t j = 0; j < n; ++j) {
        if (i != j && cartan_[i][j] > 0) throw Error("Cartan matrix off-diagonal entries must be nonpositive");
        if (cartan_[i][j] != cartan_[j][i]) throw Error("only symmetric (simply-laced) Cartan matrices are supported");
      }
    }
  }

  int rank() const { return static_cast<int>(cartan_.size()); }
  const GramMatrix& cartan() const { return cartan_; }
  const std::string& name() const { return name_; }

  static RootSystem a(int n) {
    if (n < 1) throw Error("A_n needs n >= 1");
    GramMatrix c(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) {
      c[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
      if (i + 1 < n) c[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = c[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
    }
    return RootSystem(std::move(c), "A" + std::to_string(n));
  }

  static RootSystem d(int n) {
    if (n < 3) throw Error("D_n needs n >= 3");
    GramMatrix c(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i) c[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
    for (int i = 0; i + 1 < n - 1; ++i)
      c[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = c[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
    c[static_cast<size_t>(n - 3)][static_cast<size_t>(n - 1)] = c[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 3)] = -1;
    return RootSystem(std::move(c), "D" + std::to_string(n));
  }

  static RootSystem e8() { return RootSystem(detail::e8_gram(), "E8"); }

  /// Orthogonal product; the Cartan matrix is block diagonal.
  friend RootSystem product(const RootSystem& x, const RootSystem& y) {
    return RootSystem(detail::direct_sum(x.cartan_, y.cartan_), x.name_ + "x" + y.name_);
  }

  /// Connected components of the Dynkin diagram, as sorted index sets.
  std::vector<std::vector<int>> components() const {
    int n = rank();
    std::vector<int> comp(static_cast<size_t>(n), -1);
    int ncomp = 0;
    for (int start = 0; start < n; ++start) {
      if (comp[static_cast<size_t>(start)] >= 0) continue;
      std::vector<int> stack{start};
      comp[static_cast<size_t>(start)] = ncomp;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w = 0; w < n; ++w)
          if (w != v && cartan_[static_cast<size_t>(v)][static_cast<size_t>(w)] != 0 && comp[static_cast<size_t>(w)] < 0) {
            comp[static_cast<size_t>(w)] = ncomp;
            stack.push_back(w);
          }
      }
      ++ncomp;
    }
    std::vector<std::vector<int>> out(static_cast<size_t>(ncomp));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(comp[static_cast<size_t>(i)])].push_back(i);
    return out;
  }

  bool irreducible() const { return components().size() == 1; }

  /// Simple root alpha_i in root coordinates: the i-th unit vector.
  std::vector<std::int64_t> simple_root(int i) const {
    std::vector<std::int64_t> e(static_cast<size_t>(rank()), 0);
    e.at(static_cast<size_t>(i)) = 1;
    return e;
  }

  /// The irreducible factor supported on the given index set.
  RootSystem restrict(const std::vector<int>& indices) const {
    GramMatrix c(indices.size(), std::vector<std::int64_t>(indices.size()));
    for (size_t i = 0; i < indices.size(); ++i)
      for (size_t j = 0; j < indices.size(); ++j)
        c[i][j] = cartan_[static_cast<size_t>(indices[i])][static_cast<size_t>(indices[j])];
    return RootSystem(std::move(c), name_);
  }

 private:
  GramMatrix cartan_;
  std::string name_;
};

/// Parses tags like "A1", "A2", "D4", "E8", and products joined by 'x'
/// ("E8xE8", "A1xA1").
inline RootSystem root_system_from_name(const std::string& name) {
  auto parse_factor = [](const std::string& tag) -> RootSystem {
    if (tag == "E8") return RootSystem::e8();
    if (tag.size() >= 2 && (tag[0] == 'A' || tag[0] == 'D')) {
      int n = 0;
      for (size_t i = 1; i < tag.size(); ++i) {
        if (tag[i] < '0' || tag[i] > '9') throw Error("unknown root system tag: '" + tag + "'");
        n = n * 10 + (tag[i] - '0');
      }
      return tag[0] == 'A' ? RootSystem::a(n) : RootSystem::d(n);
    }
    throw Error("unknown root system tag: '" + tag + "'");
  };
  std::vector<RootSystem> factors;
  size_t pos = 0;
  while (pos <= name.size()) {
    size_t next = name.find('x', pos);
    std::string tag = name.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    factors.push_back(parse_factor(tag));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  RootSystem out = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) out = product(out, factors[i]);
  return out;
}

namespace detail {

// Largest root count at desk scale (rank <= 8 per factor) is 240, for E8.
inline constexpr int kMaxRootsPerFactor = 240;

/// All roots of an irreducible system by breadth-first reflection closure
/// from the simple roots. Capped at twice the largest expected count so
/// malformed Cartan input terminates instead of diverging.
inline std::set<std::vector<std::int64_t>> generate_roots(const RootSystem& rs) {
  int n = rs.rank();
  const GramMatrix& a = rs.cartan();
  std::set<std::vector<std::int64_t>> roots;
  std::vector<std::vector<std::int64_t>> frontier;
  for (int i = 0; i < n; ++i) {
    std::vector<std::int64_t> e(static_cast<size_t>(n), 0);
    e[static_cast<size_t>(i)] = 1;
    roots.insert(e);
    frontier.push_back(e);
    for (auto& v : e) v = -v;
    roots.insert(e);
    frontier.push_back(e);
  }
  const size_t cap = 2 * kMaxRootsPerFactor;
  while (!frontier.empty() && roots.size() <= cap) {
    std::vector<std::vector<std::int64_t>> next;
    for (const auto& v : frontier) {
      for (int i = 0; i < n; ++i) {
        std::int64_t pairing = 0;
        for (int j = 0; j < n; ++j) pairing += a[static_cast<size_t>(i)][static_cast<size_t>(j)] * v[static_cast<size_t>(j)];
        std::vector<std::int64_t> w = v;
        w[static_cast<size_t>(i)] -= pairing;
        if (roots.insert(w).second) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }
  if (roots.size() > cap) throw Error("reflection closure exceeded the root-count cap; malformed Cartan matrix?");
  return roots;
}

}  // namespace detail

/// Matrix of the simple reflection s_i in the root-coordinate
/// representation: the identity except for row i, which is
/// delta_ij - cartan[i][j]. These generate the Weyl group action used by
/// invariant_form_space.
inline GramMatrix reflection_matrix(const RootSystem& rs, int i) {
  int n = rs.rank();
  GramMatrix s(static_cast<size_t>(n), std::vector<std::int64_t>(static_cast<size_t>(n), 0));
  for (int r = 0; r < n; ++r) {
    s[static_cast<size_t>(r)][static_cast<size_t>(r)] = 1;
    if (r == i)
      for (int c = 0; c < n; ++c)
        s[static_cast<size_t>(r)][static_cast<size_t>(c)] -= rs.cartan()[static_cast<size_t>(i)][static_cast<size_t>(c)];
  }
  return s;
}

/// Coefficients of the highest root in the simple-root basis.
inline std::vector<std::int64_t> highest_root_coeffs(const RootSystem& rs) {
  if (!rs.irreducible()) throw NotIrreducible();
  auto roots = detail::generate_roots(rs);
  const std::vector<std::int64_t>* best = nullptr;
  std::int64_t best_height = 0;
  for (const auto& v : roots) {
    std::int64_t h = 0;
    for (std::int64_t c : v) h += c;
    if (h > best_height) {
      best_height = h;
      best = &v;
    }
  }
  return *best;  // simple roots guarantee at least height 1
}

/// Weighted-projective weights (1, g_1, ..., g_N): a leading 1 followed by
/// the highest-coroot coefficients of every irreducible factor. For E8+E8
/// this is the 17-tuple of WP^16.
inline std::vector<std::int64_t> wp_weights(const RootSystem& rs) {
  std::vector<std::int64_t> out{1};
  for (const auto& comp : rs.components()) {
    auto coeffs = highest_root_coeffs(rs.restrict(comp));
    out.insert(out.end(), coeffs.begin(), coeffs.end());
  }
  return out;
}

/// Basis of the space of Weyl-invariant symmetric bilinear forms, i.e. the
/// symmetric matrices M with S^T M S = M for every simple reflection S.
/// Exact kernel computation over the rationals; basis vectors are scaled to
/// a leading coefficient of 1 in a fixed variable order, so the output is
/// deterministic.
inline std::vector<std::vector<std::vector<Rational>>> invariant_form_space(const RootSystem& rs) {
  for (const auto& comp : rs.components())
    if (comp.size() > 8) throw Error("invariant_form_space supports rank <= 8 per irreducible factor");
  int n = rs.rank();

  // Unknowns: M_{pq} for p <= q, in row-major order.
  std::vector<std::pair<int, int>> vars;
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) vars.push_back({p, q});
  int nv = static_cast<int>(vars.size());
  auto var_index = [&](int p, int q) {
    if (p > q) std::swap(p, q);
    return p * n - p * (p - 1) / 2 + (q - p);
  };

  // Equations: (S^T M S - M)_{pq} = 0 for each generator and p <= q.
  std::vector<std::vector<Rational>> rows;
  for (int i = 0; i < n; ++i) {
    GramMatrix refl = reflection_matrix(rs, i);
    for (int p = 0; p < n; ++p)
      for (int q = p; q < n; ++q) {
        std::vector<Rational> row(static_cast<size_t>(nv));
        for (int r = 0; r < n; ++r)
          for (int s = 0; s < n; ++s) {
            std::int64_t coef = refl[static_cast<size_t>(r)][static_cast<size_t>(p)] *
                                refl[static_cast<size_t>(s)][static_cast<size_t>(q)];
            if (coef != 0) row[static_cast<size_t>(var_index(r, s))] += coef;
          }
        row[static_cast<size_t>(var_index(p, q))] -= 1;
        bool nonzero = false;
        for (const auto& x : row)
          if (x != 0) {
            nonzero = true;
            break;
          }
        if (nonzero) rows.push_back(std::move(row));
      }
  }

  // Row-reduce and read off the kernel.
  int nr = static_cast<int>(rows.size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < nv && r < nr; ++c) {
    int piv = -1;
    for (int i = r; i < nr; ++i)
      if (rows[static_cast<size_t>(i)][static_cast<size_t>(c)] != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(rows[static_cast<size_t>(r)], rows[static_cast<size_t>(piv)]);
    Rational p = rows[static_cast<size_t>(r)][static_cast<size_t>(c)];
    for (int j = c; j < nv; ++j) rows[static_cast<size_t>(r)][static_cast<size_t>(j)] /= p;
    for (int i = 0; i < nr; ++i) {
      if (i == r) continue;
      Rational f = rows[static_cast<size_t>(i)][static_cast<size_t>(c)];
      if (f == 0) continue;
      for (int j = c; j < nv; ++j)
        rows[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * rows[static_cast<size_t>(r)][static_cast<size_t>(j)];
    }
    pivot_col.push_back(c);
    ++r;
  }

  std::vector<bool> is_pivot(static_cast<size_t>(nv), false);
  for (int c : pivot_col) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<std::vector<std::vector<Rational>>> basis;
  for (int free = 0; free < nv; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    std::vector<Rational> sol(static_cast<size_t>(nv));
    sol[static_cast<size_t>(free)] = 1;
    for (int i = 0; i < r; ++i)
      sol[static_cast<size_t>(pivot_col[static_cast<size_t>(i)])] = -rows[static_cast<size_t>(i)][static_cast<size_t>(free)];
    std::vector<std::vector<Rational>> m(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
    for (int k = 0; k < nv; ++k) {
      auto [p, q] = vars[static_cast<size_t>(k)];
      m[static_cast<size_t>(p)][static_cast<size_t>(q)] = sol[static_cast<size_t>(k)];
      m[static_cast<size_t>(q)][static_cast<size_t>(p)] = sol[static_cast<size_t>(k)];
    }
    basis.push_back(std::move(m));
  }
  return basis;
}

}  // namespace nlq
