#pragma once

/**
 * @file pipeline.hpp
 * @brief End-to-end genus-0 computation for a Weierstrass fibration over a
 *        ruled surface, from the discrete input (g, deg L_M, b).
 *
 * The stages, in order: Hodge degree deg_M(lambda), the singular-fiber
 * count a1, the boundary constant c = -b/8, the quasi-modular form
 *     phi = -deg_M(lambda) E10 + c q dE8/dq  (weight 10),
 * the smooth rational curve counts r_X(n), the Gromov-Witten potential
 * F = phi * q/Delta, the holomorphic anomaly check
 * d(phi)/dE2 + (b/12) E8 = 0, and a recomputation of F along the
 * degeneration/conifold route which must agree coefficient for
 * coefficient.
 *
 * Inputs outside the deg(L_M) >> 0 regime (negative a1 or negative counts)
 * are computed anyway and flagged with warnings, never clamped.
 */

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "nlq/lattice.hpp"
#include "nlq/modforms.hpp"
#include "nlq/qseries.hpp"
#include "nlq/surface.hpp"

namespace nlq {

struct NonIntegralCount : Error {
  explicit NonIntegralCount(int n)
      : Error("curve count r_X(" + std::to_string(n) + ") is not an integer") {}
};

struct InternalInconsistency : Error {
  using Error::Error;
};

struct GeometryInput {
  int g = 0;           // genus of the base curve M
  std::int64_t deg_lm = 0;  // degree of L_M
  int b = 0;           // broken fibers / blow-ups
  int prec = 12;       // series precision

  void validate() const {
    if (b < 0) throw Error("number of broken fibers must be >= 0");
    if (prec < 8) throw Error("pipeline precision must be >= 8 to pin weight-10 decompositions");
  }
};

/// deg_M(lambda) = deg(L_M) + 2(1-g), the degree of the Hodge line bundle
/// of the family, via the projection-formula identity
/// q_*(omega_{X/M}) = L_M tensor omega_M^{-1}.
inline std::int64_t hodge_degree(int g, std::int64_t deg_lm) { return deg_lm + 2 * (1 - g); }

/// Closed form for the A1-fiber count; must agree with the intersection
/// ring chain a1_riemann_hurwitz on every input.
inline std::int64_t a1_closed_form(int g, std::int64_t deg_lm, int b) {
  return 264 * deg_lm + 528 * (1 - g) - 60 * static_cast<std::int64_t>(b);
}

/// Boundary constant of the completed Noether-Lefschetz series, computed
/// both ways: (a1 - 264 deg_M(lambda))/480 by coefficient extraction, and
/// -b/8 directly. Disagreement would mean a transcribed constant is wrong.
inline Rational boundary_constant(int g, std::int64_t deg_lm, int b) {
  std::int64_t a1 = a1_closed_form(g, deg_lm, b);
  std::int64_t deglam = hodge_degree(g, deg_lm);
  Rational from_a1 = Rational(a1 - 264 * deglam) / 480;
  Rational direct = Rational(-b) / 8;
  if (from_a1 != direct)
    throw InternalInconsistency("boundary constant mismatch: (a1 - 264 deg lambda)/480 = " + to_string(from_a1) +
                                " but -b/8 = " + to_string(direct));
  return direct;
}

/// Generic completed Noether-Lefschetz series shape: an interior part
/// proportional to E10 plus a boundary part proportional to q dE8/dq.
/// The geometric specialization is interior_coeff = -deg_M(lambda),
/// boundary_coeff = -b/8.
inline QSeries completed_nl_series(const Rational& interior_coeff, const Rational& boundary_coeff, int prec) {
  return linear_combine({{interior_coeff, eisenstein(10, prec)}, {boundary_coeff, q_derive(eisenstein(8, prec))}});
}

/// phi as a q-series and as a weight-10 polynomial in Q[E2,E4,E6]:
///   series     = -deg_M(lambda) E10 + c q dE8/dq,
///   polynomial = -deg_M(lambda) E4 E6 + (2c/3)(E2 E4^2 - E4 E6).
/// The two are verified against each other through qm_expand, and for
/// prec >= 10 the series is independently decomposed back into the ring.
inline std::pair<QSeries, QuasiModularPoly> phi(const GeometryInput& in) {
  in.validate();
  Rational c = boundary_constant(in.g, in.deg_lm, in.b);
  Rational deglam(hodge_degree(in.g, in.deg_lm));
  QSeries series = completed_nl_series(-deglam, c, in.prec);

  QuasiModularPoly poly(10);
  poly.add_term({0, 1, 1}, -deglam - Rational(2, 3) * c);
  poly.add_term({1, 2, 0}, Rational(2, 3) * c);

  if (qm_expand(poly, in.prec) != series)
    throw InternalInconsistency("phi polynomial does not expand to the phi series");
  if (in.prec >= 10 && qm_decompose(series, 10, in.prec) != poly)
    throw InternalInconsistency("phi series does not decompose back to the phi polynomial");
  return {std::move(series), std::move(poly)};
}

/// Residual of the holomorphic anomaly equation d(phi)/dE2 = -(b/12) E8.
struct AnomalyCheck {
  bool ok = false;
  QuasiModularPoly residual;  // d(phi)/dE2 + (b/12) E4^2, weight 8
};

inline AnomalyCheck anomaly_check(const GeometryInput& in) {
  QuasiModularPoly poly = phi(in).second;
  QuasiModularPoly e8_poly(8);
  e8_poly.add_term({0, 2, 0}, 1);
  QuasiModularPoly residual = anomaly_derivative(poly) + make_rational(in.b, 12) * e8_poly;
  bool ok = residual.is_zero() && qm_expand(residual, in.prec).is_zero();
  return {ok, std::move(residual)};
}

/// Smooth rational curve counts: coefficients of
/// phi - (a1/2) Theta1 + a1/2 + deg_M(lambda), with Theta1 the A1 theta
/// series sum_r q^{r^2}. r_X(0) = r_X(1) = 0 hold identically; negative
/// values (inputs outside the >>0 regime) are returned as-is, and a
/// non-integral coefficient throws.
inline std::vector<Integer> rx_series(const GeometryInput& in) {
  in.validate();
  QSeries series = phi(in).first;
  QSeries theta1 = theta_series(named_lattice("A1"), in.prec);
  Rational a1(a1_closed_form(in.g, in.deg_lm, in.b));
  QSeries rx = linear_combine({{Rational(1), series}, {-a1 / 2, theta1}}) +
               QSeries::constant(a1 / 2 + hodge_degree(in.g, in.deg_lm), in.prec);
  if (rx[0] != 0 || rx[1] != 0)
    throw InternalInconsistency("structural zeros r_X(0) = r_X(1) = 0 failed");
  std::vector<Integer> out;
  out.reserve(static_cast<size_t>(in.prec));
  for (int n = 0; n < in.prec; ++n) {
    if (!is_integral(rx[n])) throw NonIntegralCount(n);
    out.push_back(rx[n].get_num());
  }
  return out;
}

/// Gromov-Witten potential F = phi * q/Delta; coefficient n is the genus-0
/// invariant in the class l + nf.
inline QSeries gw_potential(const GeometryInput& in) {
  return mul(phi(in).first, reduced_k3(in.prec));
}

/// Recomputes the potential along the degeneration route: starting from the
/// integer counts r_X(n), assemble
///   N^Y_n   = sum_{j=2}^n 2 r_X(j) [q/Delta]_{n-j} - 2 deg_M(lambda) [q/Delta]_n
/// for the resolved family, add the conifold correction
/// a1 sum_{r != 0} [q/Delta]_{n-r^2} from the exceptional curves, and halve.
/// Must equal gw_potential exactly; the agreement is a genuine cancellation,
/// not an algebraic identity of the code paths.
inline QSeries degeneration_oracle(const GeometryInput& in) {
  std::vector<Integer> rx = rx_series(in);
  QSeries redk3 = reduced_k3(in.prec);
  Rational deglam(hodge_degree(in.g, in.deg_lm));
  Rational a1(a1_closed_form(in.g, in.deg_lm, in.b));

  std::vector<Rational> rx_tail(static_cast<size_t>(in.prec));
  for (int n = 2; n < in.prec; ++n) rx_tail[static_cast<size_t>(n)] = Rational(rx[static_cast<size_t>(n)]);
  QSeries n_resolved =
      linear_combine({{Rational(2), mul(QSeries(std::move(rx_tail)), redk3)}, {-2 * deglam, redk3}});

  QSeries theta1 = theta_series(named_lattice("A1"), in.prec);
  QSeries nodes = a1 * mul(theta1 - QSeries::one(in.prec), redk3);

  return Rational(1, 2) * (n_resolved + nodes);
}

/// Dimension bookkeeping for a degree-k fibration: the base moduli space
/// has virtual dimension k + g - 1, and adding the fiber direction brings
/// the total-space virtual dimension to 0 regardless of dim B.
struct VirtualDims {
  std::int64_t base = 0;
  std::int64_t total = 0;
};

inline VirtualDims vdim_total(int k, int g, int dim_b) {
  (void)dim_b;  // cancels: (1-g)(dim X - 3) - (1-g)(dim B - 3) = 1-g
  std::int64_t base = k + g - 1;
  return {base, base - k + (1 - g)};
}

struct PipelineReport {
  GeometryInput input;
  std::int64_t hodge_degree = 0;
  std::int64_t a1 = 0;
  Rational c;
  QSeries phi_series;
  QuasiModularPoly phi_poly;
  std::vector<Integer> rx;
  QSeries potential;
  QSeries oracle;
  bool anomaly_ok = false;
  bool oracle_ok = false;
  std::vector<std::string> warnings;

  bool all_ok() const { return anomaly_ok && oracle_ok; }
};

/// Runs every stage and cross-check for one geometric input.
inline PipelineReport run_pipeline(const GeometryInput& in) {
  in.validate();
  auto [series, poly] = phi(in);
  PipelineReport rep{in,
                     hodge_degree(in.g, in.deg_lm),
                     a1_closed_form(in.g, in.deg_lm, in.b),
                     boundary_constant(in.g, in.deg_lm, in.b),
                     std::move(series),
                     std::move(poly),
                     rx_series(in),
                     gw_potential(in),
                     degeneration_oracle(in),
                     false,
                     false,
                     {}};

  SurfaceContext ctx{in.g, 0, in.b};
  if (a1_riemann_hurwitz(ctx, in.deg_lm) != rep.a1)
    throw InternalInconsistency("a1 closed form disagrees with the Riemann-Hurwitz chain");

  rep.anomaly_ok = anomaly_check(in).ok;
  rep.oracle_ok = rep.potential == rep.oracle;

  if (rep.a1 < 0)
    rep.warnings.push_back("a1 < 0: input is outside the deg(L_M) >> 0 regime");
  for (size_t n = 0; n < rep.rx.size(); ++n)
    if (rep.rx[n] < 0) {
      rep.warnings.push_back("negative curve count r_X(" + std::to_string(n) +
                             "): input is outside the very-general regime");
      break;
    }
  return rep;
}

}  // namespace nlq
