#pragma once

/**
 * @file serialize.hpp
 * @brief Canonical JSON encodings. All unbounded numbers travel as exact
 *        rational strings ("num" or "num/den"); only small structural
 *        integers (precisions, exponents, ranks) are JSON numbers.
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "nlq/lattice.hpp"
#include "nlq/modforms.hpp"
#include "nlq/pipeline.hpp"
#include "nlq/qseries.hpp"
#include "nlq/surface.hpp"

namespace nlq {

using Json = nlohmann::ordered_json;

/// {"prec": N, "coeffs": ["0", "1", "-24", ...]}
inline Json to_json(const QSeries& s) {
  Json coeffs = Json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(to_string(c));
  return Json{{"prec", s.prec()}, {"coeffs", std::move(coeffs)}};
}

inline QSeries qseries_from_json(const Json& j) {
  int prec = j.at("prec").get<int>();
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(rational_from_string(c.get<std::string>()));
  if (static_cast<int>(coeffs.size()) != prec)
    throw Error("QSeries JSON: coeffs length does not match prec");
  return QSeries(std::move(coeffs));
}

/// {"weight": 10, "terms": [{"e2": 1, "e4": 2, "e6": 0, "coeff": "2/3"}, ...]}
/// Terms appear in the fixed lexicographic monomial order.
inline Json to_json(const QuasiModularPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms())
    terms.push_back(Json{{"e2", m.e2}, {"e4", m.e4}, {"e6", m.e6}, {"coeff", to_string(c)}});
  return Json{{"weight", p.weight()}, {"terms", std::move(terms)}};
}

inline QuasiModularPoly qmpoly_from_json(const Json& j) {
  QuasiModularPoly p(j.at("weight").get<int>());
  for (const auto& t : j.at("terms"))
    p.add_term({t.at("e2").get<int>(), t.at("e4").get<int>(), t.at("e6").get<int>()},
               rational_from_string(t.at("coeff").get<std::string>()));
  return p;
}

/// Gram matrices arrive as JSON arrays of integer rows: [[2,-1],[-1,2]].
inline Lattice lattice_from_gram_json(const Json& j, const std::string& name = "") {
  GramMatrix g;
  for (const auto& row : j) {
    std::vector<std::int64_t> r;
    for (const auto& v : row) r.push_back(v.get<std::int64_t>());
    g.push_back(std::move(r));
  }
  return Lattice(std::move(g), name);
}

inline Json to_json(const SurfaceContext& ctx) {
  return Json{{"g", ctx.g}, {"zeta_sq", ctx.zeta_sq}, {"b", ctx.b}};
}

inline Json to_json(const DivisorClass& c) {
  Json exc = Json::array();
  for (std::int64_t e : c.exceptional_coeffs()) exc.push_back(e);
  return Json{{"zeta", c.zeta_coeff()}, {"ruling", c.ruling_coeff()}, {"exceptional", std::move(exc)}};
}

inline Json to_json(const NefDegreeReport& r) {
  return Json{{"deg_ruling", r.deg_ruling},
              {"deg_ruling_minus_exc", r.deg_ruling_minus_exc},
              {"deg_exc", r.deg_exc},
              {"deg_exc_diff", r.deg_exc_diff},
              {"self_intersection", r.self_intersection},
              {"vertical_nef", r.vertical_nef},
              {"big", r.big}};
}

inline Json to_json(const PipelineReport& rep) {
  Json rx = Json::array();
  for (const auto& n : rep.rx) rx.push_back(to_string(n));
  return Json{{"input", Json{{"g", rep.input.g},
                             {"deg_lm", rep.input.deg_lm},
                             {"b", rep.input.b},
                             {"prec", rep.input.prec}}},
              {"hodge_degree", std::to_string(rep.hodge_degree)},
              {"a1", std::to_string(rep.a1)},
              {"c", to_string(rep.c)},
              {"phi_series", to_json(rep.phi_series)},
              {"phi_poly", to_json(rep.phi_poly)},
              {"rx", std::move(rx)},
              {"potential", to_json(rep.potential)},
              {"degeneration_oracle", to_json(rep.oracle)},
              {"anomaly_ok", rep.anomaly_ok},
              {"oracle_ok", rep.oracle_ok},
              {"warnings", rep.warnings}};
}

}  // namespace nlq
