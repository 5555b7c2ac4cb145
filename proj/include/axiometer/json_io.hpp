#pragma once

// JSON readers and writers for the file formats used by the CLI.
//
//   collection  {"axioms": ["a1","a2"], "p": {"a1": 0.9, "a2": 0.8, "a1+a2": 0.7}}
//   capacity    {"axioms": [...], "u": {"a1": 1, ...}}
//   family      {"axioms": [...], "models": ["IC", ...], "collections": [{"p": {...}}, ...]}
//   experiment  {"rule": "plurality", "axioms": [...], "m": 3, "n": 7,
//                "sampler": {"kind": "mallows", "phi": 0.8, "sigma": [0,1,2]},
//                "N": 100000, "seed": 42}
//
// Subset keys are "+"-joined axiom names in any order. Every non-empty subset
// must appear exactly once; unknown or repeated subsets are parse errors.
// Writers emit keys in mask order and full double precision.

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "axiometer/capacities.hpp"
#include "axiometer/collections.hpp"
#include "axiometer/errors.hpp"
#include "axiometer/robustness.hpp"
#include "axiometer/simulation.hpp"
#include "axiometer/subset_lattice.hpp"

namespace axiometer::io {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline json parse_json(const std::string& text, const std::string& origin = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str(), path.string());
}

namespace detail {

inline const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) throw ParseError("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

inline double number(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + " must be a number");
  return v.get<double>();
}

template <typename Int>
Int integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + " must be an integer");
  if constexpr (std::is_unsigned_v<Int>) {
    if (v.is_number_unsigned()) return v.get<Int>();
    const auto x = v.get<long long>();
    if (x < 0) throw ParseError(where + " must be non-negative");
    return static_cast<Int>(x);
  } else {
    return v.get<Int>();
  }
}

}  // namespace detail

inline AxiomSet axioms_from_json(const json& v) {
  if (!v.is_array()) throw ParseError("'axioms' must be an array of names");
  std::vector<std::string> names;
  for (const auto& x : v) {
    if (!x.is_string()) throw ParseError("axiom names must be strings");
    names.push_back(x.get<std::string>());
  }
  try {
    return AxiomSet(std::move(names));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("axioms: ") + e.what());
  }
}

/// Reads a complete map over non-empty subsets into a SubsetVector
/// (entry 0 left at `empty_value`).
inline SubsetVector subset_map_from_json(const AxiomSet& axioms, const json& map, const std::string& what,
                                         double empty_value) {
  if (!map.is_object()) throw ParseError("'" + what + "' must be an object keyed by subsets");
  SubsetVector out(axioms.size());
  std::vector<bool> seen(axioms.subset_count(), false);
  for (auto it = map.begin(); it != map.end(); ++it) {
    const Mask s = parse_subset_key(axioms, it.key());
    if (seen[s]) throw ParseError(what + ": subset '" + it.key() + "' given twice");
    seen[s] = true;
    out[s] = detail::number(it.value(), what + "[" + it.key() + "]");
  }
  for (Mask s = 1; s < out.size(); ++s) {
    if (!seen[s]) throw ParseError(what + ": missing subset '" + axioms.name_of(s) + "'");
  }
  out[0] = empty_value;
  return out;
}

inline ordered_json subset_map_to_json(const AxiomSet& axioms, const SubsetVector& v) {
  ordered_json out = ordered_json::object();
  for (Mask s = 1; s < v.size(); ++s) out[axioms.name_of(s)] = v[s];
  return out;
}

inline ordered_json axioms_to_json(const AxiomSet& axioms) {
  ordered_json out = ordered_json::array();
  for (const auto& l : axioms.labels()) out.push_back(l);
  return out;
}

inline Collection collection_from_json(const json& v) {
  const auto axioms = axioms_from_json(detail::field(v, "axioms"));
  auto p = subset_map_from_json(axioms, detail::field(v, "p"), "p", 1.0);
  for (Mask s = 1; s < p.size(); ++s) {
    if (!(p[s] >= 0.0 && p[s] <= 1.0)) throw ParseError("p[" + axioms.name_of(s) + "] is outside [0, 1]");
  }
  return Collection(axioms, std::move(p));
}

/// Optional human-readable label carried next to a collection.
inline std::optional<std::string> name_from_json(const json& v) {
  if (!v.is_object()) return std::nullopt;
  auto it = v.find("name");
  if (it == v.end() || !it->is_string()) return std::nullopt;
  return it->get<std::string>();
}

inline ordered_json collection_to_json(const Collection& c) {
  ordered_json out;
  out["axioms"] = axioms_to_json(c.axioms());
  out["p"] = subset_map_to_json(c.axioms(), c.p());
  return out;
}

inline Capacity capacity_from_json(const json& v) {
  const auto axioms = axioms_from_json(detail::field(v, "axioms"));
  auto u = subset_map_from_json(axioms, detail::field(v, "u"), "u", 0.0);
  for (Mask s = 1; s < u.size(); ++s) {
    if (!(u[s] >= 0.0)) throw ParseError("u[" + axioms.name_of(s) + "] must be non-negative");
  }
  return Capacity(axioms, std::move(u));
}

inline ordered_json capacity_to_json(const Capacity& cap) {
  ordered_json out;
  out["axioms"] = axioms_to_json(cap.axioms());
  out["u"] = subset_map_to_json(cap.axioms(), cap.u());
  return out;
}

inline CollectionFamily family_from_json(const json& v, double tol = kDefaultTolerance) {
  const auto axioms = axioms_from_json(detail::field(v, "axioms"));
  const auto& list = detail::field(v, "collections");
  if (!list.is_array() || list.empty()) throw ParseError("'collections' must be a non-empty array");
  std::vector<Collection> members;
  for (const auto& item : list) {
    if (item.is_object() && item.contains("axioms")) {
      auto c = collection_from_json(item);
      if (!(c.axioms() == axioms)) throw ParseError("family member lists different axioms");
      members.push_back(std::move(c));
    } else {
      auto p = subset_map_from_json(axioms, detail::field(item, "p"), "p", 1.0);
      members.emplace_back(axioms, std::move(p));
    }
  }
  std::vector<std::string> models;
  if (v.contains("models")) {
    const auto& m = v["models"];
    if (!m.is_array()) throw ParseError("'models' must be an array of names");
    for (const auto& x : m) {
      if (!x.is_string()) throw ParseError("model names must be strings");
      models.push_back(x.get<std::string>());
    }
    if (models.size() != members.size()) throw ParseError("'models' and 'collections' differ in length");
  }
  return CollectionFamily(axioms, std::move(members), std::move(models), tol);
}

inline ordered_json family_to_json(const CollectionFamily& fam) {
  ordered_json out;
  out["axioms"] = axioms_to_json(fam.axioms());
  out["models"] = fam.model_names();
  ordered_json list = ordered_json::array();
  for (const auto& c : fam.members()) list.push_back({{"p", subset_map_to_json(fam.axioms(), c.p())}});
  out["collections"] = std::move(list);
  return out;
}

inline Sampler sampler_from_json(const json& v, int m) {
  if (v.is_string()) {
    const auto kind = v.get<std::string>();
    if (kind == "impartial_culture" || kind == "ic") return Sampler::impartial_culture();
    throw ParseError("sampler '" + kind + "' needs parameters; use an object");
  }
  const auto& kind_v = detail::field(v, "kind");
  if (!kind_v.is_string()) throw ParseError("sampler kind must be a string");
  const auto kind = kind_v.get<std::string>();
  if (kind == "impartial_culture" || kind == "ic") return Sampler::impartial_culture();
  if (kind != "mallows") throw ParseError("unknown sampler kind '" + kind + "'");
  const double phi = detail::number(detail::field(v, "phi"), "sampler.phi");
  std::vector<int> sigma;
  if (v.contains("sigma")) {
    if (!v["sigma"].is_array()) throw ParseError("sampler.sigma must be an array");
    for (const auto& x : v["sigma"]) sigma.push_back(detail::integer<int>(x, "sampler.sigma entry"));
  } else {
    for (int c = 0; c < m; ++c) sigma.push_back(c);
  }
  return Sampler::mallows(phi, std::move(sigma));
}

inline ordered_json sampler_to_json(const Sampler& s) {
  ordered_json out;
  out["kind"] = sampler_tag(s);
  if (s.kind == SamplerKind::mallows) {
    out["phi"] = s.phi;
    out["sigma"] = s.sigma;
  }
  return out;
}

inline AxiomSpec axiom_spec_from_json(const json& v) {
  if (v.is_string()) return AxiomSpec::named(parse_predicate(v.get<std::string>()));
  const auto& pred = detail::field(v, "predicate");
  if (!pred.is_string()) throw ParseError("axiom predicate must be a string");
  AxiomSpec spec = AxiomSpec::named(parse_predicate(pred.get<std::string>()));
  if (v.contains("name")) {
    if (!v["name"].is_string()) throw ParseError("axiom name must be a string");
    spec.name = v["name"].get<std::string>();
  }
  return spec;
}

/// Parses and validates an experiment. Range problems surface as ParseError
/// so that callers can treat every malformed spec alike.
inline Experiment experiment_from_json(const json& v) {
  Experiment ex;
  try {
    const auto& rule = detail::field(v, "rule");
    if (!rule.is_string()) throw ParseError("'rule' must be a string");
    ex.rule.kind = parse_rule(rule.get<std::string>());
    const auto& axioms = detail::field(v, "axioms");
    if (!axioms.is_array()) throw ParseError("'axioms' must be an array");
    for (const auto& a : axioms) ex.axioms.push_back(axiom_spec_from_json(a));
    ex.m = detail::integer<int>(detail::field(v, "m"), "m");
    ex.n = detail::integer<int>(detail::field(v, "n"), "n");
    ex.sampler = v.contains("sampler") ? sampler_from_json(v["sampler"], ex.m) : Sampler::impartial_culture();
    ex.samples = detail::integer<std::uint64_t>(detail::field(v, "N"), "N");
    if (v.contains("seed")) ex.seed = detail::integer<std::uint64_t>(v["seed"], "seed");
    ex.validate();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(std::string("experiment: ") + e.what());
  }
  return ex;
}

inline ordered_json experiment_to_json(const Experiment& ex) {
  ordered_json out;
  out["rule"] = std::string(to_string(ex.rule.kind));
  ordered_json axioms = ordered_json::array();
  for (const auto& a : ex.axioms) {
    if (a.name == to_string(a.predicate)) {
      axioms.push_back(a.name);
    } else {
      axioms.push_back({{"name", a.name}, {"predicate", std::string(to_string(a.predicate))}});
    }
  }
  out["axioms"] = std::move(axioms);
  out["m"] = ex.m;
  out["n"] = ex.n;
  out["sampler"] = sampler_to_json(ex.sampler);
  out["N"] = ex.samples;
  out["seed"] = ex.seed;
  return out;
}

/// Collection schema plus sample diagnostics; readable by collection_from_json.
inline ordered_json estimated_to_json(const EstimatedCollection& est, const Experiment& ex) {
  auto out = collection_to_json(est.collection);
  const auto& axioms = est.collection.axioms();
  out["N"] = est.samples;
  out["seed"] = est.seed;
  out["stderr"] = subset_map_to_json(axioms, est.standard_error);
  ordered_json counts = ordered_json::object();
  for (Mask s = 1; s < est.satisfied_counts.size(); ++s) counts[axioms.name_of(s)] = est.satisfied_counts[s];
  out["counts"] = std::move(counts);
  out["rule"] = std::string(to_string(est.rule.kind));
  out["sampler"] = sampler_to_json(est.sampler);
  out["m"] = ex.m;
  out["n"] = ex.n;
  return out;
}

inline ordered_json exact_to_json(const Collection& c, const Experiment& ex) {
  auto out = collection_to_json(c);
  out["exact"] = true;
  out["rule"] = std::string(to_string(ex.rule.kind));
  out["sampler"] = sampler_to_json(ex.sampler);
  out["m"] = ex.m;
  out["n"] = ex.n;
  return out;
}

inline ordered_json report_to_json(const FeasibilityReport& r, const Collection& c) {
  const auto& axioms = c.axioms();
  auto subset_name = [&](Mask s) { return s == 0 ? std::string("{}") : axioms.name_of(s); };
  ordered_json out;
  out["feasible"] = r.feasible;
  out["tolerance"] = r.tolerance;
  ordered_json frechet = ordered_json::array();
  for (const auto& v : r.frechet_violations) {
    frechet.push_back({{"subset", subset_name(v.subset)},
                       {"against", subset_name(v.subset ^ v.removed)},
                       {"removed", subset_name(v.removed)},
                       {"bound", to_string(v.bound)},
                       {"slack", v.slack}});
  }
  out["frechet_violations"] = std::move(frechet);
  ordered_json negative = ordered_json::array();
  for (const auto& n : r.negative_contributions) negative.push_back({{"subset", subset_name(n.subset)}, {"value", n.value}});
  out["negative_contributions"] = std::move(negative);

  auto alpha = moebius_superset(c.p());
  for (auto& a : alpha.values()) {
    if (a < 0.0 && a > -r.tolerance) a = 0.0;
  }
  ordered_json contrib = ordered_json::object();
  contrib["{}"] = alpha[0];
  for (Mask s = 1; s < alpha.size(); ++s) contrib[axioms.name_of(s)] = alpha[s];
  out["contributions"] = std::move(contrib);
  return out;
}

}  // namespace axiometer::io
