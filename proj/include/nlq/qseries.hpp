#pragma once

/**
 * @file qseries.hpp
 * @brief Truncated formal power series in q with exact rational coefficients.
 *
 * A QSeries is known modulo q^prec and stores exactly prec coefficients.
 * Arithmetic never silently extends precision: every binary operation
 * returns a series of precision min(prec_a, prec_b). Values are immutable
 * after construction, so they can be shared freely between threads.
 */

#include <cstddef>
#include <initializer_list>
#include <map>
#include <utility>
#include <vector>

#include "nlq/rational.hpp"

namespace nlq {

struct ZeroConstantTerm : Error {
  ZeroConstantTerm() : Error("cannot invert a series with zero constant term") {}
};

struct PrecisionExceeded : Error {
  PrecisionExceeded(int n, int prec)
      : Error("coefficient of q^" + std::to_string(n) + " requested but series is only known mod q^" +
              std::to_string(prec)) {}
};

struct NegativePrefactor : Error {
  NegativePrefactor() : Error("product_expand prefactor power must be >= 0") {}
};

class QSeries {
 public:
  /// Zero series of the given precision.
  explicit QSeries(int prec) : coeffs_(check_prec(prec)) {}

  /// Takes ownership of the coefficient vector; precision = its length.
  explicit QSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    check_prec(static_cast<int>(coeffs_.size()));
  }

  QSeries(std::initializer_list<Rational> coeffs) : QSeries(std::vector<Rational>(coeffs)) {}

  static QSeries constant(const Rational& c, int prec) {
    QSeries s(prec);
    s.coeffs_[0] = c;
    return s;
  }

  static QSeries one(int prec) { return constant(1, prec); }

  /// c * q^n, zero if n >= prec.
  static QSeries monomial(int n, const Rational& c, int prec) {
    QSeries s(prec);
    if (n >= 0 && n < prec) s.coeffs_[n] = c;
    return s;
  }

  int prec() const { return static_cast<int>(coeffs_.size()); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Unchecked coefficient access; use coeff() for the checked contract.
  const Rational& operator[](int n) const { return coeffs_[static_cast<size_t>(n)]; }

  bool is_zero() const {
    for (const auto& c : coeffs_)
      if (c != 0) return false;
    return true;
  }

  /// Structural equality: same precision and same coefficients.
  friend bool operator==(const QSeries& a, const QSeries& b) = default;

 private:
  static int check_prec(int prec) {
    if (prec < 1) throw Error("series precision must be positive");
    return prec;
  }

  std::vector<Rational> coeffs_;
};

/// True iff a and b agree on all coefficients below min(prec, shared precision).
inline bool agree_to(const QSeries& a, const QSeries& b, int prec) {
  int p = std::min({prec, a.prec(), b.prec()});
  for (int n = 0; n < p; ++n)
    if (a[n] != b[n]) return false;
  return true;
}

/// Coefficient of q^n; throws PrecisionExceeded for n >= prec.
inline const Rational& coeff(const QSeries& a, int n) {
  if (n < 0 || n >= a.prec()) throw PrecisionExceeded(n, a.prec());
  return a[n];
}

/// Sum of c_i * s_i, precision = min precision among the terms.
inline QSeries linear_combine(const std::vector<std::pair<Rational, QSeries>>& terms) {
  if (terms.empty()) throw Error("linear_combine needs at least one term");
  int prec = terms.front().second.prec();
  for (const auto& [c, s] : terms) prec = std::min(prec, s.prec());
  std::vector<Rational> out(static_cast<size_t>(prec));
  for (const auto& [c, s] : terms) {
    if (c == 0) continue;
    for (int n = 0; n < prec; ++n) out[static_cast<size_t>(n)] += c * s[n];
  }
  return QSeries(std::move(out));
}

/// Cauchy product truncated to min(prec_a, prec_b). Schoolbook convolution:
/// at desk-scale precisions (<= ~200) nothing faster is warranted.
inline QSeries mul(const QSeries& a, const QSeries& b) {
  int prec = std::min(a.prec(), b.prec());
  std::vector<Rational> out(static_cast<size_t>(prec));
  for (int i = 0; i < prec; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j + i < prec; ++j) {
      if (b[j] == 0) continue;
      out[static_cast<size_t>(i + j)] += a[i] * b[j];
    }
  }
  return QSeries(std::move(out));
}

/// Multiplicative inverse to precision prec_a; requires nonzero constant term.
inline QSeries invert(const QSeries& a) {
  if (a[0] == 0) throw ZeroConstantTerm();
  int prec = a.prec();
  std::vector<Rational> out(static_cast<size_t>(prec));
  Rational inv0 = 1 / Rational(a[0]);
  out[0] = inv0;
  for (int n = 1; n < prec; ++n) {
    Rational acc;
    for (int k = 1; k <= n; ++k) acc += a[k] * out[static_cast<size_t>(n - k)];
    out[static_cast<size_t>(n)] = -inv0 * acc;
  }
  return QSeries(std::move(out));
}

/// q d/dq: coefficient of q^n becomes n * a_n. Precision unchanged.
inline QSeries q_derive(const QSeries& a) {
  std::vector<Rational> out(static_cast<size_t>(a.prec()));
  for (int n = 1; n < a.prec(); ++n) out[static_cast<size_t>(n)] = n * a[n];
  return QSeries(std::move(out));
}

/// q^prefactor_power * prod_{n>=1} (1-q^n)^{a_n}, truncated to prec.
/// exponents[i] is the exponent a_{i+1}; entries beyond what the precision
/// can see are ignored. Exponents may be negative ((1-q^n)^{-m} expands as a
/// binomial series); the prefactor power may not.
inline QSeries product_expand(const std::vector<std::int64_t>& exponents, std::int64_t prefactor_power,
                              int prec) {
  if (prefactor_power < 0) throw NegativePrefactor();
  QSeries result(prec);
  if (prefactor_power >= prec) return result;  // everything visible is zero

  int p = prec - static_cast<int>(prefactor_power);
  if (p > 1 && static_cast<size_t>(p - 1) > exponents.size())
    throw Error("product_expand: exponents must be given for all n < prec");
  std::vector<Rational> acc(static_cast<size_t>(p));
  acc[0] = 1;
  std::vector<Rational> factor;
  for (int n = 1; n < p; ++n) {
    std::int64_t a = exponents[static_cast<size_t>(n - 1)];
    if (a == 0) continue;
    // expand (1-q^n)^a
    factor.assign(static_cast<size_t>(p), Rational(0));
    if (a > 0) {
      for (std::int64_t k = 0; k * n < p && k <= a; ++k) {
        Integer c = binomial(static_cast<unsigned long>(a), static_cast<unsigned long>(k));
        factor[static_cast<size_t>(k * n)] = (k % 2 == 0) ? Rational(c) : Rational(-c);
      }
    } else {
      std::int64_t m = -a;
      for (std::int64_t k = 0; k * n < p; ++k)
        factor[static_cast<size_t>(k * n)] =
            Rational(binomial(static_cast<unsigned long>(m - 1 + k), static_cast<unsigned long>(k)));
    }
    // acc *= factor, truncated to p
    std::vector<Rational> next(static_cast<size_t>(p));
    for (int i = 0; i < p; ++i) {
      if (acc[static_cast<size_t>(i)] == 0) continue;
      for (int j = 0; i + j < p; j += n) {
        if (factor[static_cast<size_t>(j)] == 0) continue;
        next[static_cast<size_t>(i + j)] += acc[static_cast<size_t>(i)] * factor[static_cast<size_t>(j)];
      }
    }
    acc = std::move(next);
  }
  std::vector<Rational> out(static_cast<size_t>(prec));
  for (int n = 0; n < p; ++n) out[static_cast<size_t>(n + prefactor_power)] = std::move(acc[static_cast<size_t>(n)]);
  return QSeries(std::move(out));
}

// Convenience operators; all delegate to the named operations above.
inline QSeries operator+(const QSeries& a, const QSeries& b) {
  return linear_combine({{Rational(1), a}, {Rational(1), b}});
}
inline QSeries operator-(const QSeries& a, const QSeries& b) {
  return linear_combine({{Rational(1), a}, {Rational(-1), b}});
}
inline QSeries operator*(const QSeries& a, const QSeries& b) { return mul(a, b); }
inline QSeries operator*(const Rational& c, const QSeries& a) { return linear_combine({{c, a}}); }
inline QSeries operator-(const QSeries& a) { return Rational(-1) * a; }

}  // namespace nlq
