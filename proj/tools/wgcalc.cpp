// wgcalc: Weingarten tables, exact moments, Monte Carlo verification,
// character tables and brute-force oracles from the command line.
//
// Exit codes: 0 success / all checks pass, 1 a verification verdict failed,
// 2 usage or domain error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wgcalc/wgcalc.hpp"

namespace {

using namespace wgcalc;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct ClassFlags {
  std::string tag;
  std::string n;
  std::optional<int> a;
  std::optional<int> b;

  void attach(CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--class", tag, "U, O, Sp, AI, AII, AIII, BDI, CII, DIII, CI");
    if (required) opt->required();
    cmd->add_option("--n", n, "dimension parameter (integer or p/q)");
    cmd->add_option("--a", a, "chiral classes: size of the +1 block");
    cmd->add_option("--b", b, "chiral classes: size of the -1 block");
  }

  EnsembleClass resolve() const {
    const Ensemble e = parse_ensemble(tag);
    if (is_chiral(e)) {
      if (!a || !b) throw std::invalid_argument(to_string(e) + " needs --a and --b");
      EnsembleClass cls = EnsembleClass::chiral(e, *a, *b);
      if (!n.empty() && parse_rational(n) != cls.n) throw std::invalid_argument("--n must equal a + b");
      return cls;
    }
    if (a || b) throw std::invalid_argument(to_string(e) + " takes --n, not --a/--b");
    if (n.empty()) throw std::invalid_argument(to_string(e) + " needs --n");
    return EnsembleClass::make(e, parse_rational(n));
  }
};

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<int> parse_list(const std::string& s) {
  if (s.empty()) return {};
  return detail::parse_int_list(s);
}

// Tables are cached as JSON under $WGCALC_CACHE_DIR when it is set.
Json wg_table(const EnsembleClass& cls, int k) {
  std::optional<std::filesystem::path> file;
  if (const char* dir = std::getenv("WGCALC_CACHE_DIR"); dir != nullptr && *dir != '\0') {
    std::string name = cls.key() + "_k" + std::to_string(k) + ".json";
    std::replace(name.begin(), name.end(), '/', '_');
    file = std::filesystem::path(dir) / name;
    if (std::ifstream in(*file); in) {
      try {
        return Json::parse(in);
      } catch (const Json::parse_error&) {
        // fall through and rebuild a damaged entry
      }
    }
  }
  Json table = wg_table_json(*wg_function(cls, k));
  if (file) {
    std::error_code ec;
    std::filesystem::create_directories(file->parent_path(), ec);
    std::ofstream out(*file);
    if (out) out << table.dump(2) << '\n';
  }
  return table;
}

int run_verify(const std::vector<EnsembleClass>& classes, std::optional<int> k, std::optional<MomentQuery> single,
               const SamplerConfig& cfg, double tolerance) {
  Json reports = Json::array();
  bool all_pass = true;
  auto run = [&](const std::vector<MomentQuery>& queries) {
    if (queries.empty()) return;
    for (const auto& r : estimate_moments(queries, cfg, tolerance)) {
      Json j = report_to_json(r);
      const bool trivial = detail::validate_query(r.query, EvaluatorLimits{}) < 0;
      j["trivial"] = trivial;
      const bool ok = r.pass && r.residual <= kResidualLimit;
      all_pass = all_pass && ok;
      reports.push_back(std::move(j));
    }
  };
  if (single) {
    run({*single});
  } else {
    for (const auto& cls : classes) {
      std::vector<MomentQuery> battery;
      for (auto& q : default_battery(cls))
        if (!k || query_degree(q) == *k) battery.push_back(std::move(q));
      run(battery);
    }
  }
  Json out;
  out["reports"] = reports;
  out["pass"] = all_pass;
  out["tolerance"] = tolerance;
  print(out);
  return all_pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weingarten calculus for classical groups and symmetric-space random matrices"};
  app.require_subcommand(1);
  std::string format = "json";

  // wg-table
  auto* table_cmd = app.add_subcommand("wg-table", "Weingarten function values per cycle/coset type");
  ClassFlags table_class;
  table_class.attach(table_cmd, true);
  int table_k = 0;
  table_cmd->add_option("--k", table_k, "degree")->required();
  table_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // moment
  auto* moment_cmd = app.add_subcommand("moment", "exact moment of a product of matrix entries");
  ClassFlags moment_class;
  moment_class.attach(moment_cmd, false);
  std::string mi, mj, miconj, mjconj, mquery;
  bool plain_entries = false;
  moment_cmd->add_option("--i", mi, "comma-separated 1-based indices");
  moment_cmd->add_option("--j", mj, "comma-separated 1-based indices");
  moment_cmd->add_option("--iconj", miconj, "U: row indices of conjugated factors");
  moment_cmd->add_option("--jconj", mjconj, "U: column indices of conjugated factors");
  moment_cmd->add_option("--query", mquery, "query as JSON, e.g. {\"class\":\"AI\",\"n\":3,\"i\":[1,1],\"j\":[1,1]}");
  moment_cmd->add_flag("--plain", plain_entries, "AII/CII/DIII/CI: indices address plain entries instead of tilde entries");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo check of exact moments");
  ClassFlags verify_class;
  verify_class.attach(verify_cmd, false);
  std::optional<int> verify_k;
  SamplerConfig cfg;
  double tolerance = 5.0;
  std::string vi, vj, viconj, vjconj;
  verify_cmd->add_option("--k", verify_k, "restrict the battery to this degree");
  verify_cmd->add_option("--samples", cfg.samples, "number of samples")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", cfg.seed, "RNG seed");
  verify_cmd->add_option("--workers", cfg.workers, "worker threads (results do not depend on it)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--tolerance", tolerance, "pass threshold in standard errors");
  verify_cmd->add_option("--i", vi, "single query instead of the battery");
  verify_cmd->add_option("--j", vj);
  verify_cmd->add_option("--iconj", viconj);
  verify_cmd->add_option("--jconj", vjconj);

  // chartable
  auto* char_cmd = app.add_subcommand("chartable", "irreducible characters and (twisted) spherical functions");
  int char_k = 0;
  std::string char_kind = "chi";
  char_cmd->add_option("--k", char_k, "degree")->required()->check(CLI::Range(1, 12));
  char_cmd->add_option("--kind", char_kind, "chi, omega or pi")->check(CLI::IsMember({"chi", "omega", "pi"}));
  char_cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force oracles");
  oracle_cmd->require_subcommand(1);
  auto* gram_cmd = oracle_cmd->add_subcommand("gram", "pseudo-inverse of the symplectic Gram matrix over M_2k");
  int gram_k = 0, gram_n = 0;
  gram_cmd->add_option("--k", gram_k)->required();
  gram_cmd->add_option("--n", gram_n)->required();
  auto* contr_cmd = oracle_cmd->add_subcommand("contraction", "index contraction T_sigma(X, Y) vs. the closed form");
  ClassFlags contr_class;
  contr_class.attach(contr_cmd, true);
  std::string contr_sigma;
  contr_cmd->add_option("--sigma", contr_sigma, "permutation of S_2k, one-line 1-based")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*table_cmd) {
      const Json table = wg_table(table_class.resolve(), table_k);
      if (format == "csv") {
        std::cout << wg_table_csv(table);
        if (!table.at("pole_report").empty()) std::cerr << "pole_report: " << table.at("pole_report").dump() << '\n';
      } else {
        print(table);
      }
      return kExitPass;
    }

    if (*moment_cmd) {
      MomentQuery q;
      if (!mquery.empty()) {
        q = query_from_json(Json::parse(mquery));
      } else {
        if (moment_class.tag.empty()) throw std::invalid_argument("moment needs --class or --query");
        q = {moment_class.resolve(), parse_list(mi), parse_list(mj), parse_list(miconj), parse_list(mjconj)};
      }
      const Rational v = plain_entries ? evaluate_plain_moment(q) : evaluate_moment(q);
      print(Json{{"value", to_string(v)}});
      return kExitPass;
    }

    if (*verify_cmd) {
      std::vector<EnsembleClass> classes;
      std::optional<MomentQuery> single;
      if (!verify_class.tag.empty()) {
        const Ensemble e = parse_ensemble(verify_class.tag);
        const bool has_params = !verify_class.n.empty() || verify_class.a || verify_class.b;
        classes.push_back(has_params ? verify_class.resolve() : default_battery_class(e));
      } else {
        for (Ensemble e : kAllEnsembles) classes.push_back(default_battery_class(e));
      }
      if (!vi.empty()) {
        if (classes.size() != 1) throw std::invalid_argument("a single query needs --class");
        single = MomentQuery{classes.front(), parse_list(vi), parse_list(vj), parse_list(viconj), parse_list(vjconj)};
      }
      return run_verify(classes, verify_k, single, cfg, tolerance);
    }

    if (*char_cmd) {
      const Json table = character_table_json(char_k, parse_character_kind(char_kind));
      if (format == "csv") std::cout << character_table_csv(table); else print(table);
      return kExitPass;
    }

    if (*gram_cmd) {
      const GramOracle oracle = gram_pseudo_inverse_oracle(gram_k, gram_n);
      const auto wg = wg_function(EnsembleClass::make(Ensemble::Sp, gram_n), gram_k);
      bool matches = true;
      for (std::size_t r = 0; r < oracle.matchings.size(); ++r)
        for (std::size_t c = 0; c < oracle.matchings.size(); ++c)
          matches = matches && oracle.pseudo_inverse(r, c) == wg->at(oracle.matchings[r].inverse() * oracle.matchings[c]);
      Json out;
      Json names = Json::array();
      for (const auto& m : oracle.matchings) names.push_back(to_string(m));
      out["matchings"] = names;
      out["gram"] = matrix_json(oracle.gram);
      out["pseudo_inverse"] = matrix_json(oracle.pseudo_inverse);
      out["matches_wg"] = matches;
      print(out);
      return matches ? kExitPass : kExitFail;
    }

    if (*contr_cmd) {
      const EnsembleClass cls = contr_class.resolve();
      const Permutation sigma = parse_permutation(contr_sigma);
      const Rational brute = contraction_t_function(cls, sigma);
      const Rational closed = t_function(cls, sigma);
      print(Json{{"sigma", to_string(sigma)}, {"contraction", to_string(brute)}, {"closed_form", to_string(closed)}, {"equal", brute == closed}});
      return brute == closed ? kExitPass : kExitFail;
    }
  } catch (const Json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
