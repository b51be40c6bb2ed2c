#pragma once

/**
 * @file surface.hpp
 * @brief Intersection theory on a b-fold blow-up of a P^1-bundle over a
 *        genus-g curve.
 *
 * Divisor classes are written m*zeta + d*l + sum m_i e_i with zeta the
 * tautological class, l the ruling fiber and e_i the exceptional classes.
 * Pairing rules: zeta.l = 1, l^2 = 0, e_i.e_j = -delta_ij, e_i.zeta =
 * e_i.l = 0, and zeta^2 = zeta_sq, a free normalization parameter of the
 * bundle. Everything asserted downstream (K^2, K.l, the singular-fiber
 * count a1) is independent of zeta_sq, and the tests sweep it to prove so.
 */

#include <cstdint>
#include <string>
#include <vector>

#include "nlq/rational.hpp"

namespace nlq {

struct ContextMismatch : Error {
  ContextMismatch() : Error("divisor classes live on different surfaces") {}
};

struct SurfaceContext {
  int g = 0;            // genus of the base curve M
  std::int64_t zeta_sq = 0;  // self-intersection of the tautological class
  int b = 0;            // number of blow-ups (broken fibers)

  friend bool operator==(const SurfaceContext&, const SurfaceContext&) = default;
};

class DivisorClass {
 public:
  DivisorClass(SurfaceContext ctx, std::int64_t m, std::int64_t d, std::vector<std::int64_t> exceptional)
      : ctx_(ctx), m_(m), d_(d), exceptional_(std::move(exceptional)) {
    if (exceptional_.size() != static_cast<size_t>(ctx_.b))
      throw Error("exceptional coefficient count must equal the number of blow-ups");
  }

  DivisorClass(SurfaceContext ctx, std::int64_t m, std::int64_t d)
      : DivisorClass(ctx, m, d, std::vector<std::int64_t>(static_cast<size_t>(ctx.b), 0)) {}

  static DivisorClass zero(SurfaceContext ctx) { return DivisorClass(ctx, 0, 0); }
  static DivisorClass ruling(SurfaceContext ctx) { return DivisorClass(ctx, 0, 1); }
  static DivisorClass tautological(SurfaceContext ctx) { return DivisorClass(ctx, 1, 0); }
  static DivisorClass exceptional(SurfaceContext ctx, int i) {
    DivisorClass c = zero(ctx);
    c.exceptional_.at(static_cast<size_t>(i)) = 1;
    return c;
  }

  const SurfaceContext& context() const { return ctx_; }
  std::int64_t zeta_coeff() const { return m_; }
  std::int64_t ruling_coeff() const { return d_; }
  const std::vector<std::int64_t>& exceptional_coeffs() const { return exceptional_; }

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;

  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    if (a.ctx_ != b.ctx_) throw ContextMismatch();
    DivisorClass out = a;
    out.m_ += b.m_;
    out.d_ += b.d_;
    for (size_t i = 0; i < out.exceptional_.size(); ++i) out.exceptional_[i] += b.exceptional_[i];
    return out;
  }

  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-1) * b; }

  friend DivisorClass operator*(std::int64_t c, const DivisorClass& a) {
    DivisorClass out = a;
    out.m_ *= c;
    out.d_ *= c;
    for (auto& e : out.exceptional_) e *= c;
    return out;
  }

 private:
  SurfaceContext ctx_;
  std::int64_t m_;
  std::int64_t d_;
  std::vector<std::int64_t> exceptional_;
};

/// Bilinear intersection pairing under the context rules.
inline std::int64_t intersect(const DivisorClass& a, const DivisorClass& c) {
  if (a.context() != c.context()) throw ContextMismatch();
  std::int64_t v = a.zeta_coeff() * c.zeta_coeff() * a.context().zeta_sq + a.zeta_coeff() * c.ruling_coeff() +
                a.ruling_coeff() * c.zeta_coeff();
  for (size_t i = 0; i < a.exceptional_coeffs().size(); ++i)
    v -= a.exceptional_coeffs()[i] * c.exceptional_coeffs()[i];
  return v;
}

/// Canonical class K = -2 zeta + (2g - 2 + zeta_sq) l + sum e_i. The
/// l-coefficient is the unique choice making both convention-independent
/// pins hold for every zeta_sq: K^2 = 8(1-g) - b and K.(d l) = -2d.
inline DivisorClass canonical_class(SurfaceContext ctx) {
  return DivisorClass(ctx, -2, 2 * ctx.g - 2 + ctx.zeta_sq,
                      std::vector<std::int64_t>(static_cast<size_t>(ctx.b), 1));
}

/// The class of omega_B^{-1} tensor L_M, i.e. -K + deg(L_M) l. Its degree on
/// the ruling is 2 and its degree on each exceptional curve is 1.
inline DivisorClass fundamental_class(SurfaceContext ctx, std::int64_t deg_lm) {
  return (-1) * canonical_class(ctx) + deg_lm * DivisorClass::ruling(ctx);
}

/// Degrees of the fundamental class on the vertical test families, plus its
/// self-intersection for the bigness check.
struct NefDegreeReport {
  std::int64_t deg_ruling = 0;            // on l
  std::int64_t deg_ruling_minus_exc = 0;  // on l - e_i (when b >= 1)
  std::int64_t deg_exc = 0;               // on e_i (when b >= 1)
  std::int64_t deg_exc_diff = 0;          // on e_i - e_j (when b >= 2)
  std::int64_t self_intersection = 0;     // L^2
  bool vertical_nef = true;            // all listed degrees >= 0
  bool big = false;                    // L^2 > 0
};

inline NefDegreeReport nef_degree_report(SurfaceContext ctx, std::int64_t deg_lm) {
  DivisorClass L = fundamental_class(ctx, deg_lm);
  NefDegreeReport rep;
  rep.deg_ruling = intersect(L, DivisorClass::ruling(ctx));
  if (ctx.b >= 1) {
    DivisorClass e0 = DivisorClass::exceptional(ctx, 0);
    rep.deg_exc = intersect(L, e0);
    rep.deg_ruling_minus_exc = intersect(L, DivisorClass::ruling(ctx) - e0);
    if (ctx.b >= 2) rep.deg_exc_diff = intersect(L, e0 - DivisorClass::exceptional(ctx, 1));
  }
  rep.self_intersection = intersect(L, L);
  rep.vertical_nef = rep.deg_ruling >= 0 && rep.deg_ruling_minus_exc >= 0 && rep.deg_exc >= 0 &&
                     rep.deg_exc_diff >= 0;
  rep.big = rep.self_intersection > 0;
  return rep;
}

/// Number of A1-singular fibers of the one-parameter K3 family, by the
/// Riemann-Hurwitz count on the degree-24 discriminant curve: with
/// Delta = 12 c1(L) and L the fundamental class,
///   a1 = Delta.(K + Delta) - 3 c1(L^4).c1(L^6) + 48(1-g).
/// Evaluated entirely in the intersection ring; this is the independent
/// oracle for the closed form 264 deg(L_M) + 528(1-g) - 60b.
inline std::int64_t a1_riemann_hurwitz(SurfaceContext ctx, std::int64_t deg_lm) {
  DivisorClass K = canonical_class(ctx);
  DivisorClass L = fundamental_class(ctx, deg_lm);
  DivisorClass disc = 12 * L;
  return intersect(disc, K + disc) - 3 * intersect(4 * L, 6 * L) + 48 * (1 - ctx.g);
}

/// Virtual dimension of the base moduli space of degree-k sections, which
/// also equals the geometric genus of the fibers: k + g - 1.
inline std::int64_t vdim_base(int g, int k) {
  if (k < 1) throw Error("vdim_base requires k >= 1");
  return k + g - 1;
}

}  // namespace nlq
