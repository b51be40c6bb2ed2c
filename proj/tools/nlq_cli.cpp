// Command-line front end. JSON is the machine format (exact rational
// strings everywhere); --table renders aligned columns for reading. Output
// is byte-deterministic for fixed arguments.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error.

#include <algorithm>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlq/nlq.hpp"
#include "nlq/serialize.hpp"

using namespace nlq;

namespace {

void print_series_table(const QSeries& s) {
  size_t width = 1;
  for (const auto& c : s.coeffs()) width = std::max(width, to_string(c).size());
  for (int n = 0; n < s.prec(); ++n)
    std::cout << std::setw(4) << n << "  " << std::setw(static_cast<int>(width)) << to_string(s[n]) << "\n";
}

void emit_series(const QSeries& s, bool table) {
  if (table)
    print_series_table(s);
  else
    std::cout << to_json(s).dump(2) << "\n";
}

Lattice resolve_lattice(const std::string& tag, const std::string& gram_json) {
  if (!gram_json.empty()) return lattice_from_gram_json(Json::parse(gram_json), "custom");
  return named_lattice(tag);
}

struct VerifyOptions {
  int prec = 10;
  int threads = 0;
  bool deep = false;
};

int run_verify(const VerifyOptions& opt) {
  std::vector<std::string> failed;
  auto check = [&](const std::string& name, bool ok) {
    std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    if (!ok) failed.push_back(name);
  };

  check("ramanujan identities", ramanujan_verify(opt.prec).all_ok());
  check("E8 = E4^2 and E10 = E4*E6", eisenstein_product_identities(opt.prec));

  int e8_prec = std::min(opt.prec, 11);
  check("theta(E8) = E4 to n<=" + std::to_string(e8_prec - 1),
        theta_series(named_lattice("E8"), e8_prec, opt.threads) == eisenstein(4, e8_prec));

  int rk16_prec = opt.deep ? 6 : 5;  // norm cap 2*(prec-1): 8 by default, 10 with --deep
  QSeries e8_series = eisenstein(8, rk16_prec);
  check("theta(E8xE8) = E8 to n<=" + std::to_string(rk16_prec - 1),
        theta_series(named_lattice("E8xE8"), rk16_prec, opt.threads) == e8_series);
  check("theta(D16plus) = E8 to n<=" + std::to_string(rk16_prec - 1),
        theta_series(named_lattice("D16plus"), rk16_prec, opt.threads) == e8_series);

  bool anomaly_ok = true, oracle_ok = true, zeros_ok = true, a1_ok = true;
  for (int g : {0, 1})
    for (std::int64_t d : {5LL, 10LL, 20LL})
      for (int b : {0, 1, 4, 8}) {
        GeometryInput in{g, d, b, std::max(opt.prec, 8)};
        anomaly_ok = anomaly_ok && anomaly_check(in).ok;
        oracle_ok = oracle_ok && gw_potential(in) == degeneration_oracle(in);
        auto rx = rx_series(in);
        zeros_ok = zeros_ok && rx[0] == 0 && rx[1] == 0;
        for (std::int64_t zsq = -2; zsq <= 2; ++zsq)
          a1_ok = a1_ok && a1_riemann_hurwitz({g, zsq, b}, d) == a1_closed_form(g, d, b);
      }
  check("holomorphic anomaly equation on the grid", anomaly_ok);
  check("potential = degeneration oracle on the grid", oracle_ok);
  check("structural zeros r_X(0) = r_X(1) = 0", zeros_ok);
  check("a1 two-path agreement", a1_ok);

  if (failed.empty()) {
    std::cout << "all verifications passed\n";
    return 0;
  }
  std::cout << "first failing identity: " << failed.front() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-series engine: quasi-modular forms, lattice theta series,\n"
               "and genus-0 Gromov-Witten potentials of elliptic fibrations over ruled surfaces"};
  app.require_subcommand(1);

  int k = 4, prec = 12, verify_prec = 10, threads = 0, g = 0, b = 0;
  std::int64_t deg_lm = 0, zeta_sq = 0;
  bool table = false, deep = false;
  std::string lattice_tag = "E8", gram_json;

  auto add_prec = [&](CLI::App* cmd, int minimum = 1) {
    cmd->add_option("--prec", prec, "series precision (coefficients q^0 .. q^{prec-1})")
        ->envname("NLQ_PREC")
        ->check(CLI::Range(minimum, 100000));
  };
  auto add_table = [&](CLI::App* cmd) { cmd->add_flag("--table", table, "aligned columns instead of JSON"); };
  auto add_threads = [&](CLI::App* cmd) {
    cmd->add_option("--threads", threads, "enumeration threads (0 = all cores)")->check(CLI::Range(0, 256));
  };

  CLI::App* c_eis = app.add_subcommand("eisenstein", "q-expansion of an Eisenstein series");
  c_eis->add_option("--k", k, "weight (2, 4, 6, 8 or 10)")->required();
  add_prec(c_eis);
  add_table(c_eis);

  CLI::App* c_delta = app.add_subcommand("delta", "q-expansion of the discriminant cusp form");
  add_prec(c_delta, 2);
  add_table(c_delta);

  CLI::App* c_theta = app.add_subcommand("theta", "theta series of a positive-definite even lattice");
  c_theta->add_option("--lattice", lattice_tag, "named lattice (A1, U, E8, E8xE8, D16plus, II_2_18)");
  c_theta->add_option("--gram", gram_json, "Gram matrix as a JSON array of integer rows");
  add_prec(c_theta);
  add_threads(c_theta);
  add_table(c_theta);

  CLI::App* c_wtheta = app.add_subcommand("weighted-theta", "norm-weighted theta series sum (v,v) q^{(v,v)/2}");
  c_wtheta->add_option("--lattice", lattice_tag, "named lattice tag");
  c_wtheta->add_option("--gram", gram_json, "Gram matrix as a JSON array of integer rows");
  add_prec(c_wtheta);
  add_threads(c_wtheta);
  add_table(c_wtheta);

  CLI::App* c_wp = app.add_subcommand("wp-weights", "weighted-projective weights from highest coroots");
  c_wp->add_option("--lattice", lattice_tag, "root system tag (A1, A2, D4, E8, E8xE8, ...)");

  CLI::App* c_inv = app.add_subcommand("invariant-forms", "basis of Weyl-invariant symmetric bilinear forms");
  c_inv->add_option("--lattice", lattice_tag, "root system tag (A1, A2, D4, E8, ...)");

  CLI::App* c_surf = app.add_subcommand("surface", "intersection theory on the blown-up ruled surface");
  c_surf->add_option("--g", g, "genus of the base curve")->required();
  c_surf->add_option("--deg-lm", deg_lm, "degree of L_M")->required();
  c_surf->add_option("--b", b, "number of blown-up points (broken fibers)")->required();
  c_surf->add_option("--zeta-sq", zeta_sq, "self-intersection of the tautological class");
  add_table(c_surf);

  CLI::App* c_pot = app.add_subcommand("potential", "full pipeline report for one geometry");
  c_pot->add_option("--g", g, "genus of the base curve")->required();
  c_pot->add_option("--deg-lm", deg_lm, "degree of L_M")->required();
  c_pot->add_option("--b", b, "number of broken fibers")->required();
  add_prec(c_pot, 8);
  add_table(c_pot);

  CLI::App* c_verify = app.add_subcommand("verify", "one-shot verification suite");
  c_verify->add_option("--prec", verify_prec, "series precision for the identity checks")
      ->envname("NLQ_PREC")
      ->check(CLI::Range(8, 100000));
  add_threads(c_verify);
  c_verify->add_flag("--deep", deep, "raise the rank-16 enumeration cap from norm 8 to norm 10");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_eis->parsed()) {
      emit_series(eisenstein(k, prec), table);
    } else if (c_delta->parsed()) {
      emit_series(delta(prec), table);
    } else if (c_theta->parsed()) {
      emit_series(theta_series(resolve_lattice(lattice_tag, gram_json), prec, threads), table);
    } else if (c_wtheta->parsed()) {
      emit_series(weighted_theta(resolve_lattice(lattice_tag, gram_json), prec, threads), table);
    } else if (c_wp->parsed()) {
      auto weights = wp_weights(root_system_from_name(lattice_tag));
      Json j{{"root_system", lattice_tag}, {"weights", weights}};
      std::cout << j.dump(2) << "\n";
    } else if (c_inv->parsed()) {
      auto basis = invariant_form_space(root_system_from_name(lattice_tag));
      Json jbasis = Json::array();
      for (const auto& m : basis) {
        Json rows = Json::array();
        for (const auto& row : m) {
          Json r = Json::array();
          for (const auto& v : row) r.push_back(to_string(v));
          rows.push_back(std::move(r));
        }
        jbasis.push_back(std::move(rows));
      }
      Json j{{"root_system", lattice_tag}, {"dimension", basis.size()}, {"basis", std::move(jbasis)}};
      std::cout << j.dump(2) << "\n";
    } else if (c_surf->parsed()) {
      SurfaceContext ctx{g, zeta_sq, b};
      DivisorClass kc = canonical_class(ctx);
      Json j{{"context", to_json(ctx)},
             {"canonical_class", to_json(kc)},
             {"K2", intersect(kc, kc)},
             {"K_dot_ruling", intersect(kc, DivisorClass::ruling(ctx))},
             {"fundamental_class", to_json(fundamental_class(ctx, deg_lm))},
             {"nef", to_json(nef_degree_report(ctx, deg_lm))},
             {"a1_riemann_hurwitz", a1_riemann_hurwitz(ctx, deg_lm)},
             {"a1_closed_form", a1_closed_form(g, deg_lm, b)},
             {"vdim_base_k2", vdim_base(g, 2)}};
      if (table) {
        for (const auto& [key, value] : j.items())
          std::cout << std::setw(20) << key << "  " << value.dump() << "\n";
      } else {
        std::cout << j.dump(2) << "\n";
      }
    } else if (c_pot->parsed()) {
      PipelineReport rep = run_pipeline({g, deg_lm, b, prec});
      if (table) {
        std::cout << "hodge_degree  " << rep.hodge_degree << "\n"
                  << "a1            " << rep.a1 << "\n"
                  << "c             " << to_string(rep.c) << "\n"
                  << "anomaly_ok    " << (rep.anomaly_ok ? "yes" : "no") << "\n"
                  << "oracle_ok     " << (rep.oracle_ok ? "yes" : "no") << "\n";
        std::cout << "phi:\n";
        print_series_table(rep.phi_series);
        std::cout << "potential:\n";
        print_series_table(rep.potential);
        for (const auto& w : rep.warnings) std::cout << "warning: " << w << "\n";
      } else {
        std::cout << to_json(rep).dump(2) << "\n";
      }
      return rep.all_ok() ? 0 : 1;
    } else if (c_verify->parsed()) {
      VerifyOptions opt;
      opt.prec = verify_prec;
      opt.threads = threads;
      opt.deep = deep;
      return run_verify(opt);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
