#pragma once

/**
 * @file lattice.hpp
 * @brief Integral lattices by Gram matrix: determinant, signature,
 *        exhaustive short-vector enumeration, theta series.
 *
 * Sign convention: lattices that are naturally negative definite in the
 * geometry (primitive cohomology of rational elliptic surfaces, the graded
 * pieces (-E8)+(-E8) and -D16+) are stored positive definite here, and a
 * vector with (v,v) = -2n on the geometric side corresponds to norm 2n in
 * this module. Enumeration requires positive definiteness; the dictionary
 * n <-> 2n is applied exactly once, at this interface.
 *
 * Enumeration is Fincke-Pohst bound propagation over an exact rational
 * LDL^T decomposition, so the counts are exhaustive, not sampled. A naive
 * box search over the dual-Gram coordinate bounds is provided as an
 * independent cross-check at small rank.
 */

#include <cstdint>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "nlq/qseries.hpp"

namespace nlq {

struct UnknownLattice : Error {
  explicit UnknownLattice(const std::string& name) : Error("unknown lattice tag: '" + name + "'") {}
};

struct NotPositiveDefinite : Error {
  NotPositiveDefinite() : Error("operation requires a positive-definite lattice") {}
};

using GramMatrix = std::vector<std::vector<std::int64_t>>;

enum class Definiteness { positive, indefinite };

class Lattice {
 public:
  explicit Lattice(GramMatrix gram, std::string name = "") : gram_(std::move(gram)), name_(std::move(name)) {
    size_t n = gram_.size();
    if (n == 0) throw Error("lattice rank must be positive");
    for (size_t i = 0; i < n; ++i) {
      if (gram_[i].size() != n) throw Error("Gram matrix must be square");
      for (size_t j = 0; j < i; ++j)
        if (gram_[i][j] != gram_[j][i]) throw Error("Gram matrix must be symmetric");
    }
  }

  int rank() const { return static_cast<int>(gram_.size()); }
  const GramMatrix& gram() const { return gram_; }
  const std::string& name() const { return name_; }
  std::int64_t entry(int i, int j) const { return gram_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

  /// True iff all diagonal entries are even (so all norms are even).
  bool is_even() const {
    for (size_t i = 0; i < gram_.size(); ++i)
      if (gram_[i][i] % 2 != 0) return false;
    return true;
  }

 private:
  GramMatrix gram_;
  std::string name_;
};

namespace detail {

/// Unit lower-triangular L and positive pivots d with G = L D L^T.
/// Exact rational pivots; any nonpositive pivot means not positive definite.
struct Ldl {
  std::vector<std::vector<Rational>> l;
  std::vector<Rational> d;
};

inline Ldl ldl_decompose(const Lattice& lat) {
  int n = lat.rank();
  Ldl out;
  out.l.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
  out.d.assign(static_cast<size_t>(n), Rational(0));
  for (int j = 0; j < n; ++j) {
    Rational dj(lat.entry(j, j));
    for (int k = 0; k < j; ++k)
      dj -= out.l[static_cast<size_t>(j)][static_cast<size_t>(k)] * out.l[static_cast<size_t>(j)][static_cast<size_t>(k)] *
            out.d[static_cast<size_t>(k)];
    if (dj <= 0) throw NotPositiveDefinite();
    out.d[static_cast<size_t>(j)] = dj;
    out.l[static_cast<size_t>(j)][static_cast<size_t>(j)] = 1;
    for (int i = j + 1; i < n; ++i) {
      Rational v(lat.entry(i, j));
      for (int k = 0; k < j; ++k)
        v -= out.l[static_cast<size_t>(i)][static_cast<size_t>(k)] * out.l[static_cast<size_t>(j)][static_cast<size_t>(k)] *
             out.d[static_cast<size_t>(k)];
      out.l[static_cast<size_t>(i)][static_cast<size_t>(j)] = v / dj;
    }
  }
  return out;
}

/// Largest integer t with d (t + c)^2 <= budget, and the smallest, computed
/// exactly (integer square root plus a bounded fix-up). Returns lo > hi when
/// no integer qualifies.
inline void level_bounds(const Rational& c, const Rational& d, const Rational& budget, std::int64_t& lo,
                         std::int64_t& hi) {
  auto ok = [&](std::int64_t t) {
    Rational y = Rational(t) + c;
    return d * y * y <= budget;
  };
  Rational s2 = budget / d;  // (t+c)^2 <= s2
  const Integer& p = s2.get_num();
  const Integer& q = s2.get_den();
  const Integer& cn = c.get_num();
  const Integer& cd = c.get_den();
  Integer root;
  mpz_sqrt(root.get_mpz_t(), Integer(p * q).get_mpz_t());  // floor sqrt(p q)
  Integer den = cd * q;
  Integer t_hi_z, t_lo_z;
  mpz_fdiv_q(t_hi_z.get_mpz_t(), Integer(-cn * q + cd * root).get_mpz_t(), den.get_mpz_t());
  mpz_cdiv_q(t_lo_z.get_mpz_t(), Integer(-cn * q - cd * (root + 1)).get_mpz_t(), den.get_mpz_t());
  std::int64_t t = t_hi_z.get_si();
  while (ok(t + 1)) ++t;
  hi = t;
  t = t_lo_z.get_si();
  while (t <= hi && !ok(t)) ++t;
  lo = t;
}

struct EnumerationJob {
  const Ldl* ldl = nullptr;
  int rank = 0;
  std::int64_t max_norm = 0;
};

/// Depth-first descent below one fixed value of the top coordinate.
/// x holds the fixed coordinates above `level`; counts[m-1] accumulates
/// representatives (one per +-v pair) of norm m.
inline void enumerate_below(const EnumerationJob& job, int level, std::vector<std::int64_t>& x,
                            const Rational& budget, bool prefix_zero, std::vector<std::int64_t>& counts) {
  if (level < 0) {
    Rational used = Rational(job.max_norm) - budget;
    if (used == 0) return;  // the zero vector
    std::int64_t norm = to_integer(used).get_si();
    counts[static_cast<size_t>(norm - 1)] += 1;
    return;
  }
  Rational c;
  for (int j = level + 1; j < job.rank; ++j) {
    const Rational& lji = job.ldl->l[static_cast<size_t>(j)][static_cast<size_t>(level)];
    if (lji != 0 && x[static_cast<size_t>(j)] != 0) c += lji * x[static_cast<size_t>(j)];
  }
  std::int64_t lo, hi;
  level_bounds(c, job.ldl->d[static_cast<size_t>(level)], budget, lo, hi);
  if (prefix_zero && lo < 0) lo = 0;  // one representative per +-v pair
  for (std::int64_t t = lo; t <= hi; ++t) {
    x[static_cast<size_t>(level)] = t;
    Rational y = Rational(t) + c;
    Rational spent = job.ldl->d[static_cast<size_t>(level)] * y * y;
    enumerate_below(job, level - 1, x, budget - spent, prefix_zero && t == 0, counts);
  }
  x[static_cast<size_t>(level)] = 0;
}

}  // namespace detail

/// Exhaustive count of lattice vectors by norm: counts[m-1] = #{v : (v,v) = m}
/// for 1 <= m <= max_norm. Both signs are counted. The search may be
/// partitioned across threads by the value of the last coordinate; partial
/// counts are merged by index, so the result is independent of scheduling.
inline std::vector<std::int64_t> enumerate_norms(const Lattice& lat, std::int64_t max_norm, int threads = 1) {
  if (max_norm < 1) throw Error("max_norm must be positive");
  detail::Ldl ldl = detail::ldl_decompose(lat);  // throws NotPositiveDefinite
  int rank = lat.rank();
  detail::EnumerationJob job{&ldl, rank, max_norm};

  int top = rank - 1;
  std::int64_t lo, hi;
  detail::level_bounds(Rational(0), ldl.d[static_cast<size_t>(top)], Rational(max_norm), lo, hi);
  lo = 0;  // top coordinate nonnegative; counts are doubled at the end
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  std::int64_t n_top = hi - lo + 1;
  if (n_top < threads) threads = n_top > 0 ? static_cast<int>(n_top) : 1;

  std::vector<std::vector<std::int64_t>> partial(static_cast<size_t>(threads),
                                              std::vector<std::int64_t>(static_cast<size_t>(max_norm), 0));
  auto worker = [&](int tid) {
    std::vector<std::int64_t> x(static_cast<size_t>(rank), 0);
    for (std::int64_t t = lo + tid; t <= hi; t += threads) {
      x[static_cast<size_t>(top)] = t;
      Rational y(t);
      Rational spent = ldl.d[static_cast<size_t>(top)] * y * y;
      detail::enumerate_below(job, top - 1, x, Rational(max_norm) - spent, t == 0,
                              partial[static_cast<size_t>(tid)]);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::vector<std::int64_t> counts(static_cast<size_t>(max_norm), 0);
  for (int t = 0; t < threads; ++t)
    for (std::int64_t m = 0; m < max_norm; ++m) counts[static_cast<size_t>(m)] += partial[static_cast<size_t>(t)][static_cast<size_t>(m)];
  for (auto& c : counts) c *= 2;  // restore the +-v pairs
  return counts;
}

/// Counts r(2n) for 1 <= n <= max_norm/2; max_norm must be even.
inline std::vector<std::int64_t> enumerate_by_norm(const Lattice& lat, std::int64_t max_norm, int threads = 1) {
  if (max_norm % 2 != 0) throw Error("enumerate_by_norm expects an even max_norm");
  std::vector<std::int64_t> all = enumerate_norms(lat, max_norm, threads);
  std::vector<std::int64_t> even(static_cast<size_t>(max_norm / 2));
  for (std::int64_t n = 1; n <= max_norm / 2; ++n) even[static_cast<size_t>(n - 1)] = all[static_cast<size_t>(2 * n - 1)];
  return even;
}

/// Provably complete box search: |x_i| <= sqrt(max_norm * (G^-1)_ii).
/// Exponential in the rank; used to validate the bounded search at rank <= 4.
inline std::vector<std::int64_t> enumerate_norms_box(const Lattice& lat, std::int64_t max_norm) {
  detail::ldl_decompose(lat);  // positive-definiteness gate
  int n = lat.rank();
  // exact inverse Gram by Gauss-Jordan
  std::vector<std::vector<Rational>> a(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(2 * n)));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = lat.entry(i, j);
    a[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (a[static_cast<size_t>(piv)][static_cast<size_t>(col)] == 0) ++piv;
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
    Rational p = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int j = 0; j < 2 * n; ++j) a[static_cast<size_t>(col)][static_cast<size_t>(j)] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int j = 0; j < 2 * n; ++j) a[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
    }
  }
  std::vector<std::int64_t> bound(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    Rational s2 = Rational(max_norm) * a[static_cast<size_t>(i)][static_cast<size_t>(n + i)];
    Integer floor_s2;
    mpz_fdiv_q(floor_s2.get_mpz_t(), s2.get_num().get_mpz_t(), s2.get_den().get_mpz_t());
    Integer r;
    mpz_sqrt(r.get_mpz_t(), floor_s2.get_mpz_t());
    bound[static_cast<size_t>(i)] = r.get_si();
  }

  std::vector<std::int64_t> counts(static_cast<size_t>(max_norm), 0);
  std::vector<std::int64_t> x(static_cast<size_t>(n), 0);
  auto norm_of = [&]() {
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) s += lat.entry(i, j) * x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
    return s;
  };
  // odometer over the box
  for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = -bound[static_cast<size_t>(i)];
  while (true) {
    std::int64_t m = norm_of();
    if (m >= 1 && m <= max_norm) counts[static_cast<size_t>(m - 1)] += 1;
    int i = 0;
    while (i < n && x[static_cast<size_t>(i)] == bound[static_cast<size_t>(i)]) {
      x[static_cast<size_t>(i)] = -bound[static_cast<size_t>(i)];
      ++i;
    }
    if (i == n) break;
    ++x[static_cast<size_t>(i)];
  }
  return counts;
}

/// Theta series 1 + sum r(2n) q^n of an even positive-definite lattice.
inline QSeries theta_series(const Lattice& lat, int prec, int threads = 1) {
  if (prec < 1) throw Error("theta_series needs prec >= 1");
  std::vector<Rational> out(static_cast<size_t>(prec));
  out[0] = 1;
  if (prec > 1) {
    std::vector<std::int64_t> all = enumerate_norms(lat, 2 * (static_cast<std::int64_t>(prec) - 1), threads);
    for (size_t m = 1; m <= all.size(); ++m)
      if (m % 2 == 1 && all[m - 1] != 0)
        throw Error("lattice has vectors of odd norm; theta indexing q^{(v,v)/2} requires an even lattice");
    for (int n = 1; n < prec; ++n) out[static_cast<size_t>(n)] = all[static_cast<size_t>(2 * n - 1)];
  }
  return QSeries(std::move(out));
}

/// Weighted theta sum (v,v) q^{(v,v)/2} = sum 2n r(2n) q^n. This equals
/// 2 q d/dq of the theta series; callers matching a constant against the
/// unweighted derivative normalization must supply the factor 2 themselves.
inline QSeries weighted_theta(const Lattice& lat, int prec, int threads = 1) {
  return Rational(2) * q_derive(theta_series(lat, prec, threads));
}

/// Determinant of the Gram matrix (Bareiss fraction-free elimination).
inline Integer gram_determinant(const Lattice& lat) {
  int n = lat.rank();
  std::vector<std::vector<Integer>> a(static_cast<size_t>(n), std::vector<Integer>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = lat.entry(i, j);
  Integer prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) return 0;
      std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(piv)]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        Integer v = a[static_cast<size_t>(i)][static_cast<size_t>(j)] * a[static_cast<size_t>(k)][static_cast<size_t>(k)] -
                    a[static_cast<size_t>(i)][static_cast<size_t>(k)] * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
        mpz_divexact(a[static_cast<size_t>(i)][static_cast<size_t>(j)].get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
  }
  return sign * a[static_cast<size_t>(n - 1)][static_cast<size_t>(n - 1)];
}

/// (positive, negative) inertia of the Gram form, by exact congruence
/// diagonalization. Zero diagonal entries along the way are repaired with
/// the standard row+column addition.
inline std::pair<int, int> signature(const Lattice& lat) {
  int n = lat.rank();
  std::vector<std::vector<Rational>> a(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = lat.entry(i, j);
  auto add_to = [&](int dst, int src) {  // row dst += row src, col dst += col src
    for (int j = 0; j < n; ++j) a[static_cast<size_t>(dst)][static_cast<size_t>(j)] += a[static_cast<size_t>(src)][static_cast<size_t>(j)];
    for (int i = 0; i < n; ++i) a[static_cast<size_t>(i)][static_cast<size_t>(dst)] += a[static_cast<size_t>(i)][static_cast<size_t>(src)];
  };
  int pos = 0, neg = 0;
  for (int k = 0; k < n; ++k) {
    if (a[static_cast<size_t>(k)][static_cast<size_t>(k)] == 0) {
      int swap_i = -1, fix_i = -1;
      for (int i = k + 1; i < n; ++i) {
        if (a[static_cast<size_t>(i)][static_cast<size_t>(i)] != 0 && swap_i < 0) swap_i = i;
        if (a[static_cast<size_t>(i)][static_cast<size_t>(k)] != 0 && fix_i < 0) fix_i = i;
      }
      if (swap_i >= 0) {
        std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(swap_i)]);
        for (int i = 0; i < n; ++i)
          std::swap(a[static_cast<size_t>(i)][static_cast<size_t>(k)], a[static_cast<size_t>(i)][static_cast<size_t>(swap_i)]);
      } else if (fix_i >= 0) {
        add_to(k, fix_i);
      } else {
        continue;  // degenerate direction
      }
    }
    Rational p = a[static_cast<size_t>(k)][static_cast<size_t>(k)];
    if (p > 0)
      ++pos;
    else
      ++neg;
    for (int i = k + 1; i < n; ++i) {
      Rational f = a[static_cast<size_t>(i)][static_cast<size_t>(k)] / p;
      if (f == 0) continue;
      for (int j = 0; j < n; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
      for (int j = 0; j < n; ++j) a[static_cast<size_t>(j)][static_cast<size_t>(i)] -= f * a[static_cast<size_t>(j)][static_cast<size_t>(k)];
    }
  }
  return {pos, neg};
}

inline Definiteness definiteness(const Lattice& lat) {
  auto [pos, neg] = signature(lat);
  return (pos == lat.rank()) ? Definiteness::positive : Definiteness::indefinite;
}

namespace detail {

inline GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b) {
  size_t n = a.size(), m = b.size();
  GramMatrix g(n + m, std::vector<std::int64_t>(n + m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) g[i][j] = a[i][j];
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) g[n + i][n + j] = b[i][j];
  return g;
}

inline GramMatrix negate(GramMatrix g) {
  for (auto& row : g)
    for (auto& v : row) v = -v;
  return g;
}

/// E8 Gram in the Bourbaki node order: chain 1-3-4-5-6-7-8 with 2 attached
/// to 4. Determinant 1, even, positive definite.
inline GramMatrix e8_gram() {
  GramMatrix g(8, std::vector<std::int64_t>(8, 0));
  for (int i = 0; i < 8; ++i) g[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
  const int edges[][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
  for (auto [p, q] : edges) {
    g[static_cast<size_t>(p - 1)][static_cast<size_t>(q - 1)] = -1;
    g[static_cast<size_t>(q - 1)][static_cast<size_t>(p - 1)] = -1;
  }
  return g;
}

/// D16+ = D16 glued by the half-sum vector s = (1/2,...,1/2), with basis
/// {s, e2-e3, ..., e15-e16, e15+e16}. Even, unimodular, rank 16; it shares
/// its theta series with E8+E8 without being isometric to it.
inline GramMatrix d16plus_gram() {
  GramMatrix g(16, std::vector<std::int64_t>(16, 0));
  g[0][0] = 4;
  for (int i = 1; i < 16; ++i) g[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2;
  for (int i = 1; i <= 13; ++i) {  // chain e2-e3, ..., e15-e16
    g[static_cast<size_t>(i)][static_cast<size_t>(i + 1)] = -1;
    g[static_cast<size_t>(i + 1)][static_cast<size_t>(i)] = -1;
  }
  g[13][15] = g[15][13] = -1;  // (e14-e15, e15+e16)
  g[0][15] = g[15][0] = 1;     // (s, e15+e16)
  return g;
}

}  // namespace detail

/// The named lattices used in the pipeline. U is the hyperbolic plane
/// spanned by a zero section and fiber class; II_2_18 = U + U + (-E8) + (-E8)
/// is stored for metadata only (rank, signature, discriminant) and cannot
/// be enumerated.
inline Lattice named_lattice(const std::string& name) {
  if (name == "A1") return Lattice({{2}}, "A1");
  if (name == "U") return Lattice({{-2, 1}, {1, 0}}, "U");
  if (name == "E8") return Lattice(detail::e8_gram(), "E8");
  if (name == "E8xE8") return Lattice(detail::direct_sum(detail::e8_gram(), detail::e8_gram()), "E8xE8");
  if (name == "D16plus") return Lattice(detail::d16plus_gram(), "D16plus");
  if (name == "II_2_18") {
    GramMatrix u = {{-2, 1}, {1, 0}};
    GramMatrix g = detail::direct_sum(detail::direct_sum(u, u),
                                      detail::direct_sum(detail::negate(detail::e8_gram()), detail::negate(detail::e8_gram())));
    return Lattice(g, "II_2_18");
  }
  throw UnknownLattice(name);
}

/// Orthogonal projection data of a section class sigma with sigma.z = d in
/// the Neron-Severi lattice of an elliptic surface: the projected class has
/// self-intersection -2d-4, placing the surface on the Noether-Lefschetz
/// locus of index n = d+2, via the curve class l + nf.
struct SectionProjection {
  std::int64_t norm;
  std::int64_t nl_index;
};

inline SectionProjection section_projection_norm(std::int64_t d) {
  if (d < 0) throw Error("section degree d = sigma.z must be >= 0");
  return {-2 * d - 4, d + 2};
}

/// The exceptional class of a resolved A1 fiber: self-intersection -2,
/// Noether-Lefschetz index 1.
inline SectionProjection a1_exceptional_projection() { return {-2, 1}; }

}  // namespace nlq
