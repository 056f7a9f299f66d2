#pragma once

// JSON input documents and report serialization.
//
//   group:    {"kind":"group","order":n,"table":[[int]],"names":[string]?}
//   naring:   {"kind":"naring","rank":n,"sc":[[[int]]]}
//   csl:      {"n":int,"join":[[int]],"dot":[[int]],"bottom":int}
//   lattice:  {"n":int,"join":[[int]],"meet":[[int]]}
//   subgroup: {"generators":[int]}     submodule: {"vectors":[[int]]}
//   group hom: {"map":[int]}           ring hom:  {"matrix":[[int]]}
//
// Integers in ring documents may be JSON numbers or decimal strings; on
// output they are numbers when they fit in 64 bits and strings otherwise.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "hallcrit/bounds.hpp"
#include "hallcrit/catalog.hpp"
#include "hallcrit/csl.hpp"
#include "hallcrit/error.hpp"
#include "hallcrit/group.hpp"
#include "hallcrit/hnf.hpp"
#include "hallcrit/lattice.hpp"
#include "hallcrit/naring.hpp"
#include "hallcrit/nilpotence.hpp"

namespace hallcrit::io {

using nlohmann::json;

/// Schema or structural problem in an input document. `location` names the
/// offending field (or line/column for syntax errors).
class InputError : public Error {
 public:
  InputError(std::string location, const std::string& message)
      : Error(location + ": " + message), location(std::move(location)) {}
  std::string location;
};

inline json parse_json_text(const std::string& text, const std::string& source = "<input>") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    // e.byte is the 1-based offset of the offending character.
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col), "invalid JSON");
  }
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string(), "cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace detail {

inline const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw InputError("document", "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(std::string("field '") + name + "'", "missing");
  return *it;
}

inline Id to_id(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
    throw InputError(where, "expected a non-negative integer");
  auto x = v.get<std::int64_t>();
  if (x > UINT32_MAX) throw InputError(where, "id too large");
  return static_cast<Id>(x);
}

inline std::vector<Id> id_list(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where, "expected an array");
  std::vector<Id> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_id(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<std::vector<Id>> id_table(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where, "expected an array of rows");
  std::vector<std::vector<Id>> out;
  for (std::size_t r = 0; r < v.size(); ++r) out.push_back(id_list(v[r], where + "[" + std::to_string(r) + "]"));
  return out;
}

inline Integer to_integer(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Integer(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      throw InputError(where, "expected a decimal integer string");
    return Integer(s);
  }
  throw InputError(where, "expected an integer");
}

inline IntVector int_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where, "expected an array");
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(to_integer(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::vector<IntVector> int_rows(const json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where, "expected an array of vectors");
  std::vector<IntVector> out;
  for (std::size_t r = 0; r < v.size(); ++r) out.push_back(int_vector(v[r], where + "[" + std::to_string(r) + "]"));
  return out;
}

template <class F>
auto structural(const std::string& where, F&& build) {
  try {
    return build();
  } catch (const StructuralError& e) {
    throw InputError(where, e.what());
  }
}

}  // namespace detail

inline FiniteGroup parse_group(const json& j) {
  auto table = detail::id_table(detail::field(j, "table"), "table");
  if (j.contains("order")) {
    Id order = detail::to_id(j["order"], "order");
    if (order != table.size())
      throw InputError("order", "declared order " + std::to_string(order) + " but table has " +
                                    std::to_string(table.size()) + " rows");
  }
  std::vector<std::string> names;
  if (j.contains("names")) {
    if (!j["names"].is_array()) throw InputError("names", "expected an array of strings");
    for (const auto& s : j["names"]) {
      if (!s.is_string()) throw InputError("names", "expected an array of strings");
      names.push_back(s.get<std::string>());
    }
  }
  return detail::structural("table", [&] { return FiniteGroup(std::move(table), std::move(names)); });
}

inline NARing parse_naring(const json& j) {
  std::size_t rank = detail::to_id(detail::field(j, "rank"), "rank");
  const json& sc = detail::field(j, "sc");
  if (!sc.is_array() || sc.size() != rank) throw InputError("sc", "expected rank x rank x rank array");
  std::vector<std::vector<IntVector>> consts(rank);
  for (std::size_t i = 0; i < rank; ++i)
    consts[i] = detail::int_rows(sc[i], "sc[" + std::to_string(i) + "]");
  return detail::structural("sc", [&] { return NARing(rank, std::move(consts)); });
}

inline FiniteCsl parse_csl(const json& j) {
  auto join = detail::id_table(detail::field(j, "join"), "join");
  auto dot = detail::id_table(detail::field(j, "dot"), "dot");
  Id bottom = detail::to_id(detail::field(j, "bottom"), "bottom");
  if (j.contains("n") && detail::to_id(j["n"], "n") != join.size())
    throw InputError("n", "does not match the join table");
  return detail::structural("csl", [&] { return FiniteCsl::from_rows(join, dot, bottom); });
}

inline FiniteLattice parse_lattice(const json& j) {
  auto join = detail::id_table(detail::field(j, "join"), "join");
  auto meet = detail::id_table(detail::field(j, "meet"), "meet");
  const std::size_t n = join.size();
  if (j.contains("n") && detail::to_id(j["n"], "n") != n) throw InputError("n", "does not match the join table");
  if (meet.size() != n) throw InputError("meet", "must have the same size as join");
  std::vector<Id> fj, fm;
  for (std::size_t r = 0; r < n; ++r) {
    if (join[r].size() != n) throw InputError("join[" + std::to_string(r) + "]", "wrong row length");
    if (meet[r].size() != n) throw InputError("meet[" + std::to_string(r) + "]", "wrong row length");
    fj.insert(fj.end(), join[r].begin(), join[r].end());
    fm.insert(fm.end(), meet[r].begin(), meet[r].end());
  }
  return detail::structural("lattice", [&] { return FiniteLattice(n, std::move(fj), std::move(fm)); });
}

using InputDocument = std::variant<FiniteGroup, NARing, FiniteCsl, FiniteLattice>;

inline std::string kind_of(const InputDocument& d) {
  static const char* names[] = {"group", "naring", "csl", "lattice"};
  return names[d.index()];
}

/// Dispatches on "kind", or on the fields present when "kind" is absent.
inline InputDocument parse_input(const json& j) {
  if (!j.is_object()) throw InputError("document", "expected a JSON object");
  std::string kind;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) throw InputError("kind", "expected a string");
    kind = j["kind"].get<std::string>();
  } else if (j.contains("table")) {
    kind = "group";
  } else if (j.contains("sc")) {
    kind = "naring";
  } else if (j.contains("meet")) {
    kind = "lattice";
  } else if (j.contains("dot")) {
    kind = "csl";
  } else {
    throw InputError("kind", "missing and not inferable");
  }
  if (kind == "group") return parse_group(j);
  if (kind == "naring") return parse_naring(j);
  if (kind == "csl") return parse_csl(j);
  if (kind == "lattice") return parse_lattice(j);
  throw InputError("kind", "unknown kind '" + kind + "'");
}

inline InputDocument parse_input_text(const std::string& text, const std::string& source = "<input>") {
  return parse_input(parse_json_text(text, source));
}

inline Subgroup parse_subgroup(const json& j, const FiniteGroup& g) {
  auto gens = detail::id_list(detail::field(j, "generators"), "generators");
  return detail::structural("generators", [&] { return subgroup_generated(g, gens); });
}

inline Submodule parse_submodule(const json& j, std::size_t ambient) {
  auto rows = detail::int_rows(detail::field(j, "vectors"), "vectors");
  return detail::structural("vectors", [&] { return Submodule::span(ambient, std::move(rows)); });
}

inline GroupHom parse_group_hom(const json& j, const FiniteGroup& domain, const FiniteGroup& codomain) {
  auto map = detail::id_list(detail::field(j, "map"), "map");
  return detail::structural("map", [&] { return GroupHom(domain, codomain, std::move(map)); });
}

inline RingHom parse_ring_hom(const json& j, const NARing& domain, const NARing& codomain) {
  auto m = detail::int_rows(detail::field(j, "matrix"), "matrix");
  return detail::structural("matrix", [&] { return RingHom(domain, codomain, std::move(m)); });
}

/// Every *.json group document in `dir`, named by file stem, sorted by name.
inline std::vector<CatalogEntry> load_catalog_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<CatalogEntry> out;
  for (const auto& f : files) {
    json j = parse_json_text(read_file(f), f.string());
    try {
      out.push_back({f.stem().string(), parse_group(j)});
    } catch (const InputError& e) {
      throw InputError(f.string() + ": " + e.location, e.what());
    }
  }
  return out;
}

// --- serialization -----------------------------------------------------------

inline json to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return static_cast<std::int64_t>(x);
  return x.str();
}

inline json to_json(const IntVector& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline json to_json(const Submodule& s) {
  json rows = json::array();
  for (const auto& r : s.basis()) rows.push_back(to_json(r));
  return json{{"rank", s.rank()}, {"basis", rows}};
}

inline json to_json(const Subgroup& s) { return json{{"order", s.size()}, {"elements", s.elements}}; }

inline json to_json(Id x) { return x; }

inline json to_json(const FiniteGroup& g) {
  json j{{"kind", "group"}, {"order", g.order()}, {"table", g.rows()}};
  if (!g.names().empty()) j["names"] = g.names();
  return j;
}

inline json to_json(const NARing& r) {
  json sc = json::array();
  for (std::size_t i = 0; i < r.rank(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < r.rank(); ++k) row.push_back(to_json(r.structure(i, k)));
    sc.push_back(row);
  }
  return json{{"kind", "naring"}, {"rank", r.rank()}, {"sc", sc}};
}

inline json to_json(const FiniteCsl& c) {
  const std::size_t n = c.size();
  json join = json::array(), dot = json::array();
  for (Id a = 0; a < n; ++a) {
    json jr = json::array(), dr = json::array();
    for (Id b = 0; b < n; ++b) {
      jr.push_back(c.join(a, b));
      dr.push_back(c.dot(a, b));
    }
    join.push_back(jr);
    dot.push_back(dr);
  }
  return json{{"n", n}, {"join", join}, {"dot", dot}, {"bottom", c.bottom()}};
}

inline json to_json(const LawCheck& c) { return json{{"holds", c.holds}, {"witness", c.witness}}; }

inline json to_json(const AxiomReport& r) {
  json axioms = json::array();
  for (const auto& v : r.axioms)
    axioms.push_back(json{{"axiom", std::string(1, v.axiom)}, {"law", v.law}, {"holds", v.holds},
                          {"witness", v.witness}});
  return json{{"all_hold", r.all_hold()}, {"axioms", axioms}};
}

inline json to_json(const BoundReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) entries.push_back(json{{"k", e.k}, {"exponent", e.exponent}, {"holds", e.holds}});
  return json{{"m", r.m}, {"all_hold", r.all_hold()}, {"entries", entries}};
}

inline json to_json(const NilpotencyClass& c) {
  switch (c.kind) {
    case NilpotencyClass::Kind::Nilpotent: return json{{"status", "nilpotent"}, {"class", c.value}};
    case NilpotencyClass::Kind::NotNilpotent:
      return json{{"status", "not_nilpotent"}, {"stabilized_at", c.value}};
    case NilpotencyClass::Kind::Unknown: break;
  }
  return json{{"status", "unknown"}, {"max_steps", c.value}};
}

inline std::string to_string(const NilpotencyClass& c) {
  switch (c.kind) {
    case NilpotencyClass::Kind::Nilpotent: return "class " + std::to_string(c.value);
    case NilpotencyClass::Kind::NotNilpotent:
      return "not nilpotent (stabilizes at step " + std::to_string(c.value) + ")";
    case NilpotencyClass::Kind::Unknown: break;
  }
  return "unknown (cap " + std::to_string(c.value) + ")";
}

template <class Elem>
json to_json(const GammaChain<Elem>& chain) {
  static const char* status[] = {"nilpotent", "stabilized_nonzero", "cap_exceeded"};
  json terms = json::array();
  for (const auto& t : chain.terms) terms.push_back(to_json(t));
  return json{{"status", status[static_cast<int>(chain.status)]}, {"step", chain.step}, {"terms", terms}};
}

template <class Elem>
json to_json(const HallVerdict<Elem>& v) {
  json j{{"p_surjective", v.p_surjective},
         {"n_normal", v.n_normal},
         {"ker_contained", v.ker_contained},
         {"class_n", to_json(v.class_n)},
         {"class_b", to_json(v.class_b)},
         {"class_e", to_json(v.class_e)},
         {"bound", v.bound ? json(*v.bound) : json(nullptr)},
         {"hypotheses_hold", v.hypotheses_hold},
         {"failing_hypothesis", v.failing_hypothesis},
         {"theorem_holds", v.theorem_holds},
         {"gamma_e", to_json(v.gamma_e)}};
  json evidence{{"proof_step", v.proof_step ? json(*v.proof_step) : json(nullptr)},
                {"sample_size", v.sample_size},
                {"jacobi_on_sample", v.jacobi_on_sample},
                {"main_bound", v.main_bound ? to_json(*v.main_bound) : json(nullptr)}};
  if (!v.main_bound_error.empty()) evidence["main_bound_error"] = v.main_bound_error;
  j["evidence"] = evidence;
  return j;
}

inline json to_json(const ConditionSweep& s) {
  return json{{"holds", s.holds()}, {"checked", s.checked}, {"failures", s.failures},
              {"first_failure", s.first_failure}};
}

inline json to_json(const ConditionsReport& r) {
  return json{{"all_hold", r.all_hold()}, {"a", to_json(r.a)}, {"b_i", to_json(r.b_i)}, {"b_ii", to_json(r.b_ii)}};
}

}  // namespace hallcrit::io
