#pragma once

// Command dispatch for the hallcrit tool. Argument parsing lives in the
// executable; everything here takes a parsed Request and returns a Report,
// so commands can be exercised directly from tests.
//
// Exit codes: 0 success, 1 property failure, 2 input error, 3 internal error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hallcrit/bounds.hpp"
#include "hallcrit/catalog.hpp"
#include "hallcrit/csl.hpp"
#include "hallcrit/error.hpp"
#include "hallcrit/group.hpp"
#include "hallcrit/io.hpp"
#include "hallcrit/lattice.hpp"
#include "hallcrit/naring.hpp"
#include "hallcrit/nilpotence.hpp"

namespace hallcrit::cli {

using nlohmann::json;

inline const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"axioms", "jacobi",        "associative",   "class",
                                          "series", "hall",          "conditions",    "paper-example",
                                          "bounds-verify", "catalog"};
  return c;
}

struct Request {
  std::string command;
  /// A file path, or catalog:NAME for a catalog group.
  std::optional<std::string> input;
  std::vector<std::string> subobjects;
  std::optional<std::string> hom;
  std::optional<std::string> codomain;
  std::optional<std::string> quotient_by;
  std::size_t max_steps = kDefaultMaxSteps;
  std::string format = "json";
  std::uint64_t seed = 0x5eed;
  std::optional<std::size_t> sample;
  std::size_t cap = kExhaustiveCap;
  std::size_t k_max = 6;
  bool timing = false;
  std::optional<std::string> catalog_dir;
};

struct Report {
  int exit_code = 0;
  json body;
  std::string rendered;
};

inline std::uint64_t fnv1a(const std::string& s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Indented key/value rendering of a JSON report.
inline void render_text(const json& j, std::ostream& os, int indent = 0) {
  const std::string pad(indent, ' ');
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) {
      bool scalar_list = v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) {
                           return !e.is_object() && !(e.is_array() && !e.empty() && e[0].is_object());
                         });
      if (v.is_primitive() || scalar_list) {
        os << pad << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      } else {
        os << pad << k << ":\n";
        render_text(v, os, indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (v.is_object()) {
        os << pad << "-\n";
        render_text(v, os, indent + 2);
      } else {
        os << pad << "- " << v.dump() << '\n';
      }
    }
  } else {
    os << pad << j.dump() << '\n';
  }
}

namespace detail {

struct Context {
  const Request& req;
  std::vector<CatalogEntry> extra_catalog;
  std::string digest_material;

  json load(const std::string& source) {
    json doc;
    const std::string prefix = "catalog:";
    if (source.rfind(prefix, 0) == 0) {
      std::string name = source.substr(prefix.size());
      const FiniteGroup* g = nullptr;
      for (const auto& e : group_catalog())
        if (e.name == name) g = &e.group;
      for (const auto& e : extra_catalog)
        if (!g && e.name == name) g = &e.group;
      if (!g) throw io::InputError(source, "no catalog group with this name");
      doc = io::to_json(*g);
    } else {
      doc = io::parse_json_text(io::read_file(source), source);
    }
    digest_material += doc.dump();
    digest_material.push_back('\0');
    return doc;
  }

  io::InputDocument input() {
    if (!req.input) throw io::InputError("--input", "required for command '" + req.command + "'");
    return io::parse_input(load(*req.input));
  }

  CheckOptions check_options() const {
    CheckOptions o;
    o.samples = req.sample;
    o.seed = req.seed;
    o.exhaustive_cap = req.cap;
    return o;
  }
};

struct FiniteView {
  FiniteCsl csl;
  /// Element descriptions for materialized backends, null for explicit tables.
  json elements;
};

inline FiniteView finite_view(Context& cx, const io::InputDocument& doc) {
  if (auto* c = std::get_if<FiniteCsl>(&doc)) return {*c, nullptr};
  if (auto* l = std::get_if<FiniteLattice>(&doc)) {
    try {
      return {csl_from_distributive_lattice(*l), nullptr};
    } catch (const NotDistributive& e) {
      throw io::InputError("lattice", e.what());
    }
  }
  if (auto* g = std::get_if<FiniteGroup>(&doc)) {
    auto m = materialize_nsub(*g);
    json el = json::array();
    for (const auto& s : m.elements) el.push_back(io::to_json(s));
    return {m.csl, el};
  }
  const auto& r = std::get<NARing>(doc);
  std::vector<Submodule> seeds;
  for (const auto& s : cx.req.subobjects) seeds.push_back(io::parse_submodule(cx.load(s), r.rank()));
  for (std::size_t i = 0; i < seeds.size(); ++i)
    if (!is_ideal(r, seeds[i]))
      throw io::InputError("--subobject " + cx.req.subobjects[i], "not an ideal");
  IdealContext ctx(r);
  auto sample = closure(ctx, std::span<const Submodule>(seeds), cx.req.cap);
  auto m = materialize(ctx, std::move(sample));
  json el = json::array();
  for (const auto& s : m.elements) el.push_back(io::to_json(s));
  return {m.csl, el};
}

inline json law_json(const FiniteView& v, const LawCheck& c) {
  json j = io::to_json(c);
  if (!v.elements.is_null() && !c.witness.empty()) {
    json w = json::array();
    for (Id id : c.witness) w.push_back(v.elements[id]);
    j["witness_elements"] = w;
  }
  return j;
}

inline json view_header(const io::InputDocument& doc, const FiniteView& v) {
  json j{{"kind", io::kind_of(doc)}, {"size", v.csl.size()}};
  if (!v.elements.is_null()) j["elements"] = v.elements;
  return j;
}

struct Result {
  json result;
  int exit_code = 0;
};

inline Result cmd_axioms(Context& cx) {
  auto doc = cx.input();
  auto v = finite_view(cx, doc);
  auto r = check_csl_axioms(v.csl, cx.check_options());
  json j = view_header(doc, v);
  j["axioms"] = io::to_json(r);
  return {j, r.all_hold() ? 0 : 1};
}

inline Result cmd_law(Context& cx, bool jacobi) {
  auto doc = cx.input();
  auto v = finite_view(cx, doc);
  LawCheck c = jacobi ? check_jacobi(v.csl, cx.check_options()) : check_associative(v.csl, cx.check_options());
  json j = view_header(doc, v);
  j[jacobi ? "jacobi" : "associative"] = law_json(v, c);
  return {j, c.holds ? 0 : 1};
}

template <class F>
auto with_context(Context& cx, const io::InputDocument& doc, F&& f) {
  if (auto* g = std::get_if<FiniteGroup>(&doc)) return f(NSubContext(*g));
  if (auto* r = std::get_if<NARing>(&doc)) return f(IdealContext(*r));
  return f(finite_view(cx, doc).csl);
}

inline Result cmd_class(Context& cx) {
  auto doc = cx.input();
  auto c = with_context(cx, doc, [&](const auto& ctx) { return nilpotency_class(ctx, cx.req.max_steps); });
  json j{{"kind", io::kind_of(doc)}, {"class", io::to_json(c)}, {"summary", io::to_string(c)}};
  return {j, 0};
}

inline Result cmd_series(Context& cx) {
  auto doc = cx.input();
  json chain = with_context(cx, doc, [&](const auto& ctx) { return io::to_json(gamma_series(ctx, cx.req.max_steps)); });
  return {json{{"kind", io::kind_of(doc)}, {"series", chain}}, 0};
}

inline Result cmd_hall(Context& cx) {
  auto doc = cx.input();
  if (cx.req.subobjects.empty()) throw io::InputError("--subobject", "required for command 'hall'");
  if (cx.req.quotient_by && *cx.req.quotient_by != "commutator")
    throw io::InputError("--quotient-by", "only 'commutator' is supported");
  if (cx.req.quotient_by && cx.req.hom) throw io::InputError("--hom", "cannot be combined with --quotient-by");
  json j{{"kind", io::kind_of(doc)}};
  bool holds = false;
  if (auto* g = std::get_if<FiniteGroup>(&doc)) {
    Subgroup n = io::parse_subgroup(cx.load(cx.req.subobjects[0]), *g);
    std::optional<GroupHom> p;
    if (cx.req.quotient_by) {
      p = quotient_by_commutator(*g, n);
    } else {
      if (!cx.req.hom || !cx.req.codomain)
        throw io::InputError("--hom", "groups need --quotient-by commutator or --hom with --codomain");
      FiniteGroup b = io::parse_group(cx.load(*cx.req.codomain));
      p = io::parse_group_hom(cx.load(*cx.req.hom), *g, b);
    }
    auto v = hall_check(*g, n, *p, cx.req.max_steps);
    j["n"] = io::to_json(n);
    j["codomain_order"] = p->codomain().order();
    j["verdict"] = io::to_json(v);
    holds = v.theorem_holds;
  } else if (auto* r = std::get_if<NARing>(&doc)) {
    if (cx.req.quotient_by)
      throw io::InputError("--quotient-by", "not available for rings; pass --hom and --codomain");
    if (!cx.req.hom || !cx.req.codomain) throw io::InputError("--hom", "rings need --hom and --codomain");
    Submodule n = io::parse_submodule(cx.load(cx.req.subobjects[0]), r->rank());
    NARing b = io::parse_naring(cx.load(*cx.req.codomain));
    RingHom p = io::parse_ring_hom(cx.load(*cx.req.hom), *r, b);
    auto v = hall_check(*r, n, p, cx.req.max_steps);
    j["n"] = io::to_json(n);
    j["verdict"] = io::to_json(v);
    holds = v.theorem_holds;
  } else {
    throw io::InputError("--input", "hall needs a group or naring document");
  }
  return {j, holds ? 0 : 1};
}

inline Result cmd_conditions(Context& cx) {
  auto doc = cx.input();
  json j{{"kind", io::kind_of(doc)}};
  ConditionsReport rep;
  if (auto* g = std::get_if<FiniteGroup>(&doc)) {
    rep = check_conditions(*g);
    j["normal_subgroups"] = enumerate_normal_subgroups(*g).size();
    j["subgroups"] = enumerate_subgroups(*g).size();
  } else if (auto* r = std::get_if<NARing>(&doc)) {
    auto v = finite_view(cx, doc);
    std::vector<Submodule> ideals;
    for (const auto& e : v.elements) {
      std::vector<IntVector> rows;
      for (const auto& row : e["basis"]) rows.push_back(io::detail::int_vector(row, "basis"));
      ideals.push_back(Submodule::span(r->rank(), std::move(rows)));
    }
    rep = check_conditions(*r, ideals);
    j["sample"] = v.elements;
  } else {
    auto v = finite_view(cx, doc);
    auto ids = all_elements(v.csl);
    sweep_conditions_b(v.csl, std::span<const Id>(ids), rep);
    j["note"] = "condition (a) needs subobjects and is not checked on explicit tables";
  }
  j["conditions"] = io::to_json(rep);
  return {j, rep.all_hold() ? 0 : 1};
}

inline Result cmd_bounds(Context& cx) {
  auto doc = cx.input();
  auto v = finite_view(cx, doc);
  json j = view_header(doc, v);
  const FiniteCsl& csl = v.csl;
  const Id top = csl.top();
  FiniteMap f = inner_derivation(csl, top);
  json entries = json::array();
  bool ok = true;
  try {
    for (Id x = 0; x < csl.size(); ++x) {
      json e{{"x", x}};
      try {
        auto lemma = verify_lemma_bound(csl, f, x, cx.req.k_max);
        e["lemma"] = io::to_json(lemma);
        ok = ok && lemma.all_hold();
      } catch (const NoBaseIterate&) {
        e["lemma"] = nullptr;
      }
      try {
        auto main = verify_main_bound(csl, f, x, top, cx.req.k_max);
        e["main"] = io::to_json(main);
        ok = ok && main.all_hold();
      } catch (const NoBaseIterate&) {
        e["main"] = nullptr;
      }
      entries.push_back(e);
    }
  } catch (const PreconditionError& err) {
    j["preconditions"] = err.what();
    return {j, 1};
  }
  bool identity = true;
  for (std::uint64_t m = 1; m <= 8; ++m)
    for (std::uint64_t k = 1; k <= cx.req.k_max; ++k)
      identity = identity && main_exponent(k + 1, m) == lemma_exponent(k + 1, m) + main_exponent(k, m);
  j["derivation"] = "top.-";
  j["k_max"] = cx.req.k_max;
  j["entries"] = entries;
  j["exponent_identity"] = identity;
  j["all_hold"] = ok && identity;
  return {j, ok && identity ? 0 : 1};
}

inline Result cmd_catalog(Context& cx) {
  json list = json::array();
  auto add = [&](const CatalogEntry& e, const char* source) {
    auto c = nilpotency_class(NSubContext(e.group), cx.req.max_steps);
    list.push_back({{"name", e.name}, {"order", e.group.order()}, {"class", io::to_json(c)}, {"source", source}});
  };
  for (const auto& e : group_catalog()) add(e, "builtin");
  for (const auto& e : cx.extra_catalog) add(e, "directory");
  return {json{{"count", list.size()}, {"groups", list}}, 0};
}

inline Result cmd_paper_example() {
  auto ex = build_paper_example();
  IdealContext ectx(ex.E);
  auto sub = [&](const Submodule& a, const Submodule& b) { return huq_commutator_ring(ex.E, a, b).submodule; };
  Submodule ker = kernel_ring_hom(ex.p);
  Submodule nn_rel = relative_commutator_ring(ex.E, ex.N, ex.N, ex.N).submodule;
  Submodule top = Submodule::whole(3), zero = Submodule::zero(3);
  Submodule ee = sub(top, top), ex_ = sub(top, ex.X), nx = sub(ex.N, ex.X);
  Subring n_ring = subring_as_ring(ex.E, ex.N);
  auto class_n = nilpotency_class(IdealContext(n_ring.ring));
  auto class_b = nilpotency_class(IdealContext(ex.B));
  auto chain = gamma_series(ectx);
  auto verdict = hall_check(ex.E, ex.N, ex.p);

  const std::vector<Submodule> sample{zero, ex.X, ex.N, top};
  ConditionsReport cond;
  sweep_conditions_b(ectx, std::span<const Submodule>(sample), cond);
  auto a = check_condition_a(ex.E, ex.N, ex.N, ex.N);
  auto bii = check_condition_b_ii(ectx, top, ex.N, ex.N);

  json checks{{"ker_p_equals_X", ker == ex.X},
              {"NN_in_N_equals_X", nn_rel == ex.X},
              {"EE_equals_X", ee == ex.X},
              {"EX_equals_X", ex_ == ex.X},
              {"NX_is_zero", nx == zero},
              {"class_N_is_2", class_n == NilpotencyClass::of(2)},
              {"class_B_is_1", class_b == NilpotencyClass::of(1)},
              {"E_stabilizes_at_X", chain.status == ChainStatus::StabilizedNonzero && chain.terms.back() == ex.X},
              {"hypotheses_hold", verdict.hypotheses_hold},
              {"theorem_fails", !verdict.theorem_holds},
              {"bound_is_2", verdict.bound == std::optional<std::uint64_t>(2)},
              {"condition_a_on_N", a.holds},
              {"condition_b_i_on_sample", cond.b_i.holds()},
              {"condition_b_ii_fails_at_ENN", !bii.holds && bii.lhs == ex.X && bii.rhs == zero}};
  bool reproduced = true;
  for (const auto& [k, v] : checks.items()) reproduced = reproduced && v.get<bool>();

  json j{{"E", io::to_json(ex.E)},
         {"B", io::to_json(ex.B)},
         {"N", io::to_json(ex.N)},
         {"X", io::to_json(ex.X)},
         {"ker_p", io::to_json(ker)},
         {"NN_in_N", io::to_json(nn_rel)},
         {"EE", io::to_json(ee)},
         {"EX", io::to_json(ex_)},
         {"NX", io::to_json(nx)},
         {"class_N", io::to_json(class_n)},
         {"class_B", io::to_json(class_b)},
         {"gamma_E", io::to_json(chain)},
         {"hall", io::to_json(verdict)},
         {"condition_a_N_N_N", json{{"holds", a.holds}, {"lhs", io::to_json(a.lhs)}, {"rhs", io::to_json(a.rhs)}}},
         {"condition_b_i_over_0_X_N_E", io::to_json(cond.b_i)},
         {"condition_b_ii_E_N_N",
          json{{"holds", bii.holds}, {"lhs", io::to_json(bii.lhs)}, {"rhs", io::to_json(bii.rhs)}}},
         {"expected", "hypotheses hold and theorem_holds is false"},
         {"checks", checks},
         {"reproduced", reproduced}};
  return {j, reproduced ? 0 : 1};
}

inline Result dispatch(Context& cx) {
  const auto& c = cx.req.command;
  if (c == "axioms") return cmd_axioms(cx);
  if (c == "jacobi") return cmd_law(cx, true);
  if (c == "associative") return cmd_law(cx, false);
  if (c == "class") return cmd_class(cx);
  if (c == "series") return cmd_series(cx);
  if (c == "hall") return cmd_hall(cx);
  if (c == "conditions") return cmd_conditions(cx);
  if (c == "paper-example") return cmd_paper_example();
  if (c == "bounds-verify") return cmd_bounds(cx);
  if (c == "catalog") return cmd_catalog(cx);
  throw io::InputError("command", "unknown command '" + c + "'");
}

}  // namespace detail

/// Runs one command. Errors are reported in the body, never thrown.
inline Report run_command(const Request& req) {
  Report out;
  auto start = std::chrono::steady_clock::now();
  detail::Context cx{req, {}, req.command + '\0'};
  json body{{"command", req.command}};
  try {
    if (req.format != "json" && req.format != "text") throw io::InputError("--format", "must be json or text");
    if (req.max_steps < 1) throw io::InputError("--max-steps", "must be at least 1");
    if (req.catalog_dir && !req.catalog_dir->empty()) cx.extra_catalog = io::load_catalog_dir(*req.catalog_dir);
    auto r = detail::dispatch(cx);
    body["result"] = r.result;
    out.exit_code = r.exit_code;
  } catch (const io::InputError& e) {
    body["error"] = {{"kind", "input"}, {"location", e.location}, {"message", e.what()}};
    out.exit_code = 2;
  } catch (const InternalError& e) {
    body["error"] = {{"kind", "internal"}, {"message", e.what()}};
    out.exit_code = 3;
  } catch (const Error& e) {
    body["error"] = {{"kind", "input"}, {"message", e.what()}};
    out.exit_code = 2;
  } catch (const std::filesystem::filesystem_error& e) {
    body["error"] = {{"kind", "input"}, {"message", e.what()}};
    out.exit_code = 2;
  }
  body["input_digest"] = hex64(fnv1a(cx.digest_material));
  body["exit_code"] = out.exit_code;
  if (req.timing)
    body["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out.body = body;
  if (req.format == "text") {
    std::ostringstream os;
    render_text(body, os);
    out.rendered = os.str();
  } else {
    out.rendered = body.dump(2) + "\n";
  }
  return out;
}

}  // namespace hallcrit::cli
