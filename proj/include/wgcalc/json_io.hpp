#pragma once

// JSON forms of queries, Weingarten tables, character tables and Monte Carlo
// reports. Rationals travel as "p/q" strings.

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wgcalc/montecarlo.hpp"

namespace wgcalc {

using Json = nlohmann::ordered_json;

inline Json class_to_json(const EnsembleClass& cls) {
  Json j;
  j["class"] = to_string(cls.tag);
  if (is_chiral(cls.tag)) {
    j["a"] = cls.a;
    j["b"] = cls.b;
  } else if (is_integer(cls.n)) {
    j["n"] = cls.n.get_num().get_si();
  } else {
    j["n"] = to_string(cls.n);
  }
  return j;
}

inline EnsembleClass class_from_json(const Json& j) {
  const Ensemble tag = parse_ensemble(j.at("class").get<std::string>());
  if (is_chiral(tag)) return EnsembleClass::chiral(tag, j.at("a").get<int>(), j.at("b").get<int>());
  const Json& n = j.at("n");
  return EnsembleClass::make(tag, n.is_string() ? parse_rational(n.get<std::string>()) : Rational(n.get<long>()));
}

inline Json query_to_json(const MomentQuery& q) {
  Json j = class_to_json(q.cls);
  j["i"] = q.i;
  if (!q.j.empty() || q.cls.tag == Ensemble::U || q.cls.tag == Ensemble::O || q.cls.tag == Ensemble::Sp ||
      q.cls.tag == Ensemble::AI || q.cls.tag == Ensemble::AII || q.cls.tag == Ensemble::AIII)
    j["j"] = q.j;
  if (q.cls.tag == Ensemble::U) {
    j["iconj"] = q.iconj;
    j["jconj"] = q.jconj;
  }
  return j;
}

inline MomentQuery query_from_json(const Json& j) {
  MomentQuery q{class_from_json(j), {}, {}, {}, {}};
  auto read = [&](const char* key, std::vector<int>& out) {
    if (j.contains(key)) out = j.at(key).get<std::vector<int>>();
  };
  read("i", q.i);
  read("j", q.j);
  read("iconj", q.iconj);
  read("jconj", q.jconj);
  return q;
}

inline Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

inline Json report_to_json(const EstimateReport& r) {
  Json j;
  j["query"] = query_to_json(r.query);
  j["exact"] = r.exact ? Json(to_string(*r.exact)) : Json(nullptr);
  j["mean"] = Json::array({r.mean.real(), r.mean.imag()});
  j["stderr"] = r.standard_error;
  j["sigmas"] = finite_or_null(r.sigmas);
  j["pass"] = r.pass;
  j["samples"] = r.samples;
  j["seed"] = r.seed;
  j["stderr_re"] = r.stderr_re;
  j["stderr_im"] = r.stderr_im;
  j["residual"] = r.residual;
  return j;
}

// Permutation of cycle type μ with cycles on consecutive blocks.
inline Permutation cycle_type_representative(const Partition& mu) {
  std::vector<int> images(static_cast<std::size_t>(mu.weight()));
  int start = 0;
  for (int part : mu.parts()) {
    for (int t = 0; t < part; ++t) images[static_cast<std::size_t>(start + t)] = start + (t + 1) % part;
    start += part;
  }
  return Permutation(images);
}

struct WgTableRow {
  Partition type;
  Permutation representative;
  Rational value;
};

// One row per cycle type (S_k classes) or coset type, in partitions_of order.
inline std::vector<WgTableRow> wg_table_rows(const WgEvaluation& wg) {
  std::vector<WgTableRow> rows;
  for (const auto& mu : partitions_of(wg.k)) {
    const Permutation rep = wg.is_class_function() ? cycle_type_representative(mu) : sigma_mu(mu);
    rows.push_back({mu, rep, wg.at(rep)});
  }
  return rows;
}

inline Json wg_table_json(const WgEvaluation& wg) {
  Json j = class_to_json(wg.cls);
  j["k"] = wg.k;
  j["indexed_by"] = wg.is_class_function() ? "cycle_type" : "coset_type";
  if (!wg.is_class_function()) j["twist"] = to_string(wg.coset_function().twist);
  Json rows = Json::array();
  for (const auto& row : wg_table_rows(wg))
    rows.push_back({{"type", to_string(row.type)}, {"representative", to_string(row.representative)}, {"value", to_string(row.value)}});
  j["rows"] = rows;
  Json poles = Json::array();
  for (const auto& p : wg.pole_report) poles.push_back(to_string(p));
  j["pole_report"] = poles;
  return j;
}

inline std::string csv_field(const std::string& s) { return "\"" + s + "\""; }

inline std::string wg_table_csv(const Json& table) {
  std::ostringstream out;
  out << "type,representative,value\n";
  for (const auto& row : table.at("rows"))
    out << csv_field(row.at("type").get<std::string>()) << ',' << csv_field(row.at("representative").get<std::string>()) << ','
        << row.at("value").get<std::string>() << '\n';
  return out.str();
}

enum class CharacterKind { chi, omega, pi };

inline CharacterKind parse_character_kind(std::string_view s) {
  if (s == "chi") return CharacterKind::chi;
  if (s == "omega") return CharacterKind::omega;
  if (s == "pi") return CharacterKind::pi;
  throw std::invalid_argument("unknown character kind '" + std::string(s) + "' (chi, omega, pi)");
}

// χ^λ(μ), ω^λ(σ_μ) or π^λ(σ_μ) for λ, μ ⊢ k.
inline Json character_table_json(int k, CharacterKind kind) {
  Json out = Json::array();
  const auto parts = partitions_of(k);
  for (const auto& lambda : parts)
    for (const auto& mu : parts) {
      Rational v;
      switch (kind) {
        case CharacterKind::chi: v = character(lambda, mu); break;
        case CharacterKind::omega: v = zonal_spherical(lambda, mu); break;
        case CharacterKind::pi: v = twisted_spherical(lambda, mu); break;
      }
      out.push_back({{"lambda", to_string(lambda)}, {"mu", to_string(mu)}, {"value", to_string(v)}});
    }
  return out;
}

inline std::string character_table_csv(const Json& table) {
  std::ostringstream out;
  out << "lambda,mu,value\n";
  for (const auto& row : table)
    out << csv_field(row.at("lambda").get<std::string>()) << ',' << csv_field(row.at("mu").get<std::string>()) << ','
        << row.at("value").get<std::string>() << '\n';
  return out.str();
}

inline Json matrix_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(row);
  }
  return out;
}

}  // namespace wgcalc
