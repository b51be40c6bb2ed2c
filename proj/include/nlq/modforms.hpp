#pragma once

/**
 * @file modforms.hpp
 * @brief Eisenstein series, the discriminant cusp form, and the
 *        quasi-modular ring Q[E2, E4, E6].
 *
 * E2 is treated as a free polynomial generator: the ring structure and the
 * formal derivative d/dE2 are all that is needed here, not its modular
 * transformation law. A weight-w element is a homogeneous polynomial
 * sum r_{abc} E2^a E4^b E6^c with 2a + 4b + 6c = w.
 */

#include <cstdint>
#include <algorithm>
#include <array>
#include <map>
#include <string>
#include <vector>

#include "nlq/qseries.hpp"

namespace nlq {

struct UnsupportedWeight : Error {
  explicit UnsupportedWeight(int k)
      : Error("Eisenstein weight " + std::to_string(k) + " not supported (need one of 2,4,6,8,10)") {}
};

struct NotInRing : Error {
  explicit NotInRing(int weight)
      : Error("series is not a quasi-modular form of weight " + std::to_string(weight)) {}
};

struct InsufficientPrecision : Error {
  using Error::Error;
};

/// sigma_k(n) = sum of d^k over divisors d of n, by direct enumeration.
inline Integer sigma(int k, std::int64_t n) {
  if (k < 1 || n < 1) throw Error("sigma requires k >= 1 and n >= 1");
  Integer total;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    Integer dk, ek;
    mpz_ui_pow_ui(dk.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
    total += dk;
    std::int64_t e = n / d;
    if (e != d) {
      mpz_ui_pow_ui(ek.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(k));
      total += ek;
    }
  }
  return total;
}

/// One row of the Eisenstein data: E_k = 1 + c_k sum sigma_{k-1}(n) q^n.
/// The constants are hard-coded from the Bernoulli-number formula; only
/// these five weights are needed.
struct EisensteinTable {
  int k;
  Rational constant;   // c_k
  int divisor_power;   // k - 1
};

inline EisensteinTable eisenstein_table(int k) {
  switch (k) {
    case 2: return {2, -24, 1};
    case 4: return {4, 240, 3};
    case 6: return {6, -504, 5};
    case 8: return {8, 480, 7};
    case 10: return {10, -264, 9};
    default: throw UnsupportedWeight(k);
  }
}

inline Rational eisenstein_constant(int k) { return eisenstein_table(k).constant; }

inline QSeries eisenstein(int k, int prec) {
  EisensteinTable tab = eisenstein_table(k);
  std::vector<Rational> out(static_cast<size_t>(prec));
  out[0] = 1;
  for (int n = 1; n < prec; ++n)
    out[static_cast<size_t>(n)] = tab.constant * Rational(sigma(tab.divisor_power, n));
  return QSeries(std::move(out));
}

/// Discriminant cusp form q prod (1-q^m)^24.
inline QSeries delta(int prec) {
  if (prec < 2) throw Error("delta needs prec >= 2 to see its leading coefficient");
  return product_expand(std::vector<std::int64_t>(static_cast<size_t>(prec - 1), 24), 1, prec);
}

/// prod (1-q^m)^{-24}; its n-th coefficient is the bracket [q/Delta]_n,
/// the reduced genus-0 invariant of a K3 surface in a class of
/// self-intersection 2n-2.
inline QSeries reduced_k3(int prec) {
  return product_expand(std::vector<std::int64_t>(static_cast<size_t>(prec), -24), 0, prec);
}

/// Exponent triple of a monomial E2^a E4^b E6^c. Ordering is lexicographic
/// in (a, b, c), which fixes solver pivoting and output order.
struct QmMonomial {
  int e2 = 0;
  int e4 = 0;
  int e6 = 0;

  int weight() const { return 2 * e2 + 4 * e4 + 6 * e6; }
  friend auto operator<=>(const QmMonomial&, const QmMonomial&) = default;
};

/// All monomials of the given even weight, in lexicographic order.
inline std::vector<QmMonomial> weight_monomials(int weight) {
  if (weight < 0 || weight % 2 != 0) throw Error("quasi-modular weight must be a nonnegative even integer");
  std::vector<QmMonomial> out;
  for (int a = 0; 2 * a <= weight; ++a)
    for (int b = 0; 2 * a + 4 * b <= weight; ++b) {
      int rem = weight - 2 * a - 4 * b;
      if (rem % 6 == 0) out.push_back({a, b, rem / 6});
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Homogeneous polynomial in E2, E4, E6 of a fixed even weight.
/// Zero coefficients are never stored.
class QuasiModularPoly {
 public:
  explicit QuasiModularPoly(int weight) : weight_(check_weight(weight)) {}

  QuasiModularPoly(int weight, std::initializer_list<std::pair<QmMonomial, Rational>> terms)
      : QuasiModularPoly(weight) {
    for (const auto& [m, c] : terms) add_term(m, c);
  }

  int weight() const { return weight_; }
  const std::map<QmMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * E2^a E4^b E6^c; the monomial weight must match.
  void add_term(const QmMonomial& m, const Rational& c) {
    if (m.weight() != weight_)
      throw Error("monomial weight " + std::to_string(m.weight()) + " does not match polynomial weight " +
                  std::to_string(weight_));
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Rational coefficient(const QmMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const QuasiModularPoly&, const QuasiModularPoly&) = default;

  friend QuasiModularPoly operator*(const Rational& c, const QuasiModularPoly& p) {
    QuasiModularPoly out(p.weight_);
    if (c != 0)
      for (const auto& [m, r] : p.terms_) out.terms_.emplace(m, c * r);
    return out;
  }

  friend QuasiModularPoly operator+(const QuasiModularPoly& a, const QuasiModularPoly& b) {
    if (a.weight_ != b.weight_)
      throw Error("cannot add quasi-modular polynomials of different weights");
    QuasiModularPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend QuasiModularPoly operator-(const QuasiModularPoly& a, const QuasiModularPoly& b) {
    return a + Rational(-1) * b;
  }

 private:
  static int check_weight(int w) {
    if (w < 0 || w % 2 != 0) throw Error("quasi-modular weight must be a nonnegative even integer");
    return w;
  }

  int weight_;
  std::map<QmMonomial, Rational> terms_;
};

/// Substitutes the Eisenstein q-expansions and evaluates the polynomial.
inline QSeries qm_expand(const QuasiModularPoly& p, int prec) {
  QSeries e2 = eisenstein(2, prec), e4 = eisenstein(4, prec), e6 = eisenstein(6, prec);
  QSeries out(prec);
  for (const auto& [m, c] : p.terms()) {
    QSeries term = QSeries::constant(c, prec);
    for (int i = 0; i < m.e2; ++i) term = mul(term, e2);
    for (int i = 0; i < m.e4; ++i) term = mul(term, e4);
    for (int i = 0; i < m.e6; ++i) term = mul(term, e6);
    out = out + term;
  }
  return out;
}

/// Formal partial derivative in the E2 variable; drops the weight by 2.
inline QuasiModularPoly anomaly_derivative(const QuasiModularPoly& p) {
  QuasiModularPoly out(p.weight() >= 2 ? p.weight() - 2 : 0);
  for (const auto& [m, c] : p.terms())
    if (m.e2 > 0) out.add_term({m.e2 - 1, m.e4, m.e6}, c * m.e2);
  return out;
}

/// The unique homogeneous weight-w polynomial whose expansion matches s to
/// the given precision. Solves the square system on the first m = #monomials
/// coefficients exactly and then requires the remaining prec - m
/// coefficients to match; a nonzero residual there means the series is not
/// in the ring. prec must be at least 2m so that membership is genuinely
/// overdetermined rather than a fit.
inline QuasiModularPoly qm_decompose(const QSeries& s, int weight, int prec) {
  std::vector<QmMonomial> monos = weight_monomials(weight);
  int m = static_cast<int>(monos.size());
  if (prec < 2 * m)
    throw InsufficientPrecision("qm_decompose at weight " + std::to_string(weight) + " needs prec >= " +
                                std::to_string(2 * m) + ", got " + std::to_string(prec));
  if (s.prec() < prec) throw PrecisionExceeded(prec - 1, s.prec());

  // Column j = q-expansion of monomial j.
  std::vector<QSeries> cols;
  cols.reserve(static_cast<size_t>(m));
  for (const auto& mo : monos) {
    QuasiModularPoly unit(weight);
    unit.add_term(mo, 1);
    cols.push_back(qm_expand(unit, prec));
  }

  // Gauss-Jordan on the leading m x m block, augmented with s.
  std::vector<std::vector<Rational>> a(static_cast<size_t>(m), std::vector<Rational>(static_cast<size_t>(m + 1)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = cols[static_cast<size_t>(j)][i];
    a[static_cast<size_t>(i)][static_cast<size_t>(m)] = s[i];
  }
  for (int col = 0; col < m; ++col) {
    int piv = -1;
    for (int r = col; r < m; ++r)
      if (a[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) {
        piv = r;
        break;
      }
    if (piv < 0)
      throw InsufficientPrecision("monomial expansions are not independent on the first " + std::to_string(m) +
                                  " coefficients");
    std::swap(a[static_cast<size_t>(col)], a[static_cast<size_t>(piv)]);
    Rational p = a[static_cast<size_t>(col)][static_cast<size_t>(col)];
    for (int j = col; j <= m; ++j) a[static_cast<size_t>(col)][static_cast<size_t>(j)] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == col) continue;
      Rational f = a[static_cast<size_t>(r)][static_cast<size_t>(col)];
      if (f == 0) continue;
      for (int j = col; j <= m; ++j)
        a[static_cast<size_t>(r)][static_cast<size_t>(j)] -= f * a[static_cast<size_t>(col)][static_cast<size_t>(j)];
    }
  }

  QuasiModularPoly out(weight);
  for (int j = 0; j < m; ++j) out.add_term(monos[static_cast<size_t>(j)], a[static_cast<size_t>(j)][static_cast<size_t>(m)]);

  // Residual check on the remaining coefficients.
  for (int n = m; n < prec; ++n) {
    Rational acc;
    for (int j = 0; j < m; ++j)
      acc += a[static_cast<size_t>(j)][static_cast<size_t>(m)] * cols[static_cast<size_t>(j)][n];
    if (acc != s[n]) throw NotInRing(weight);
  }
  return out;
}

/// Per-identity outcome of the Ramanujan derivative checks.
struct RamanujanReport {
  struct Line {
    std::string name;
    bool ok = false;
    int first_fail = -1;  // coefficient index, -1 when ok
  };
  std::array<Line, 3> lines;
  bool all_ok() const { return lines[0].ok && lines[1].ok && lines[2].ok; }
};

/// Checks q dE2/dq = (E2^2 - E4)/12, q dE4/dq = (E2 E4 - E6)/3 and
/// q dE6/dq = (E2 E6 - E4^2)/2 exactly to the given precision.
inline RamanujanReport ramanujan_verify(int prec) {
  QSeries e2 = eisenstein(2, prec), e4 = eisenstein(4, prec), e6 = eisenstein(6, prec);
  auto check = [](const std::string& name, const QSeries& lhs, const QSeries& rhs) {
    RamanujanReport::Line line{name, true, -1};
    for (int n = 0; n < std::min(lhs.prec(), rhs.prec()); ++n)
      if (lhs[n] != rhs[n]) {
        line.ok = false;
        line.first_fail = n;
        break;
      }
    return line;
  };
  RamanujanReport rep;
  rep.lines[0] = check("q dE2/dq = (E2^2 - E4)/12", q_derive(e2),
                       linear_combine({{Rational(1, 12), mul(e2, e2)}, {Rational(-1, 12), e4}}));
  rep.lines[1] = check("q dE4/dq = (E2 E4 - E6)/3", q_derive(e4),
                       linear_combine({{Rational(1, 3), mul(e2, e4)}, {Rational(-1, 3), e6}}));
  rep.lines[2] = check("q dE6/dq = (E2 E6 - E4^2)/2", q_derive(e6),
                       linear_combine({{Rational(1, 2), mul(e2, e6)}, {Rational(-1, 2), mul(e4, e4)}}));
  return rep;
}

/// The two one-dimensional modular coincidences used downstream:
/// E8 = E4^2 and E10 = E4 E6 (the weight-8 and weight-10 spaces of modular
/// forms for SL2(Z) are one-dimensional).
inline bool eisenstein_product_identities(int prec) {
  QSeries e4 = eisenstein(4, prec);
  return mul(e4, e4) == eisenstein(8, prec) && mul(e4, eisenstein(6, prec)) == eisenstein(10, prec);
}

}  // namespace nlq
