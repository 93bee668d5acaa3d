#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "gaplab/case_table.hpp"
#include "gaplab/families.hpp"

namespace gaplab {

// All integers cross the file boundary as decimal strings, preserving
// arbitrary precision; array index bases are fixed by the schema
// (a, ap, bp from k=1; b from k=2; q, qp from k=-1; R, Q from k=1).
inline nlohmann::json construction_to_json(const PairConstruction& c) {
  nlohmann::json j;
  j["family"] = to_string(c.family);
  j["levels"] = c.levels;
  auto dump = [](const std::vector<Int>& v) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Int& x : v) arr.push_back(x.get_str());
    return arr;
  };
  j["a"] = dump(c.a);
  j["ap"] = dump(c.ap);
  j["b"] = dump(c.b);
  j["bp"] = dump(c.bp);
  j["q"] = dump(c.q);
  j["qp"] = dump(c.qp);
  j["R"] = dump(c.R);
  j["Q"] = dump(c.Q);
  return j;
}

inline PairConstruction construction_from_json(const nlohmann::json& j) {
  const std::string fam = j.at("family").get<std::string>();
  if (fam != "bounded" && fam != "unbounded")
    throw std::invalid_argument("construction_from_json: unknown family " + fam);
  const Family family = fam == "bounded" ? Family::bounded : Family::unbounded;
  const long levels = j.at("levels").get<long>();
  if (levels < 1) throw std::invalid_argument("construction_from_json: levels must be >= 1");

  auto load = [&](const char* key) {
    std::vector<Int> v;
    for (const auto& e : j.at(key)) {
      if (e.is_string())
        v.push_back(parse_int(e.get<std::string>()));
      else
        v.push_back(Int(e.get<long>()));
    }
    return v;
  };

  long max_index = family == Family::bounded ? levels : 4 * levels + 2;
  CFReal alpha = family == Family::bounded
                     ? bounded_alpha(std::make_shared<BoundedEngine>())
                     : unbounded_alpha(std::make_shared<UnboundedEngine>());
  CFReal beta = family == Family::bounded
                    ? bounded_beta(std::make_shared<BoundedEngine>())
                    : unbounded_beta(std::make_shared<UnboundedEngine>());
  PairConstruction c{family,    levels,     max_index, std::move(alpha), std::move(beta),
                     load("a"), load("ap"), load("b"), load("bp"),       load("q"),
                     load("qp"), load("R"), load("Q")};
  if (c.q.size() != static_cast<std::size_t>(max_index + 2) ||
      c.qp.size() != c.q.size() || c.a.size() != static_cast<std::size_t>(max_index) ||
      c.ap.size() != c.a.size())
    throw std::invalid_argument("construction_from_json: sequence lengths inconsistent");
  return c;
}

inline std::string construction_to_text(const PairConstruction& c) {
  return construction_to_json(c).dump(1) + "\n";
}

// Partial quotients as a JSON array of decimal strings.
inline std::vector<Int> quotients_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("quotients: expected a JSON array");
  std::vector<Int> v;
  for (const auto& e : j) {
    if (e.is_string())
      v.push_back(parse_int(e.get<std::string>()));
    else if (e.is_number_integer())
      v.push_back(Int(e.get<long>()));
    else
      throw std::invalid_argument("quotients: entries must be decimal strings");
  }
  return v;
}

// Convergent rows {k, a, p, q}; a is null for the seed rows k <= 0.
inline nlohmann::json convergents_to_json(const ConvergentTable& t, long max_k) {
  nlohmann::json rows = nlohmann::json::array();
  for (long k = -1; k <= std::min(max_k, t.max_index()); ++k) {
    nlohmann::json row;
    row["k"] = k;
    if (k >= 1)
      row["a"] = t.a(k).get_str();
    else
      row["a"] = nullptr;
    row["p"] = t.p(k).get_str();
    row["q"] = t.q(k).get_str();
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json case_table_to_json(const CaseTable& t) {
  nlohmann::json j;
  j["context"] = {{"kind", t.kind},
                  {"family", t.family_tag},
                  {"level", t.level},
                  {"q", t.q.get_str()},
                  {"qp", t.qp.get_str()}};
  nlohmann::json cases = nlohmann::json::array();
  auto offset_formula = [](const char* var, const Int& d) {
    if (d == 0) return std::string(var);
    if (d > 0) return std::string(var) + " + " + d.get_str();
    return std::string(var) + " - " + Int(-d).get_str();
  };
  for (const TableCase& c : t.cases) {
    nlohmann::json jc;
    jc["label"] = c.label;
    nlohmann::json rects = nlohmann::json::array();
    for (const Rect& r : c.rects)
      rects.push_back({r.n0.get_str(), r.n1.get_str(), r.m0.get_str(), r.m1.get_str()});
    jc["region_rects"] = std::move(rects);
    jc["offset"] = {{"dn_formula", offset_formula("n", c.dn)},
                    {"dm_formula", offset_formula("m", c.dm)}};
    jc["gap"] = {c.gap.dn.get_str(), c.gap.dm.get_str(), c.gap.dc.get_str()};
    cases.push_back(std::move(jc));
  }
  j["cases"] = std::move(cases);
  return j;
}

}  // namespace gaplab
