#pragma once

// Finite groups given by multiplication tables, subgroup machinery, and the
// normal-subgroup lattice as a commutator context. For groups the Huq
// commutator of two subobjects is the normal closure of their commutators.

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hallcrit/context.hpp"
#include "hallcrit/csl.hpp"
#include "hallcrit/error.hpp"

namespace hallcrit {

class FiniteGroup {
 public:
  /// Validates the table: square, in range, Latin square, two-sided
  /// identity, associativity. Inverses are derived.
  explicit FiniteGroup(std::vector<std::vector<Id>> table,
                       std::vector<std::string> names = {})
      : n_(table.size()), names_(std::move(names)) {
    if (n_ == 0) throw StructuralError("group: empty table");
    table_.reserve(n_ * n_);
    for (std::size_t r = 0; r < n_; ++r) {
      if (table[r].size() != n_)
        throw StructuralError("group: row " + std::to_string(r) + " has length " +
                              std::to_string(table[r].size()) + ", expected " +
                              std::to_string(n_));
      for (Id v : table[r]) {
        if (v >= n_)
          throw StructuralError("group: row " + std::to_string(r) + " entry " +
                                std::to_string(v) + " out of range");
        table_.push_back(v);
      }
    }
    if (!names_.empty() && names_.size() != n_)
      throw StructuralError("group: names length does not match order");
    validate();
  }

  std::size_t order() const { return n_; }
  Id mul(Id a, Id b) const { return table_[a * n_ + b]; }
  Id inv(Id a) const { return inverse_[a]; }
  Id identity() const { return identity_; }
  Id conj(Id g, Id x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  Id commutator(Id s, Id t) const { return mul(mul(s, t), mul(inv(s), inv(t))); }
  const std::vector<std::string>& names() const { return names_; }
  std::vector<std::vector<Id>> rows() const {
    std::vector<std::vector<Id>> out(n_);
    for (std::size_t r = 0; r < n_; ++r)
      out[r].assign(table_.begin() + r * n_, table_.begin() + (r + 1) * n_);
    return out;
  }
  bool is_abelian() const {
    for (Id a = 0; a < n_; ++a)
      for (Id b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }
  std::size_t element_order(Id a) const {
    std::size_t k = 1;
    for (Id x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.table_ == b.table_;
  }

 private:
  void validate() {
    auto latin = [&](bool by_row) {
      for (std::size_t r = 0; r < n_; ++r) {
        std::vector<char> seen(n_, 0);
        for (std::size_t c = 0; c < n_; ++c) {
          Id v = by_row ? table_[r * n_ + c] : table_[c * n_ + r];
          if (seen[v])
            throw StructuralError(std::string("group: ") + (by_row ? "row " : "column ") +
                                  std::to_string(r) + " is not a permutation");
          seen[v] = 1;
        }
      }
    };
    latin(true);
    latin(false);
    bool found = false;
    for (Id e = 0; e < n_ && !found; ++e) {
      bool ok = true;
      for (Id a = 0; a < n_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
      if (ok) {
        identity_ = e;
        found = true;
      }
    }
    if (!found) throw StructuralError("group: no identity element");
    for (Id a = 0; a < n_; ++a)
      for (Id b = 0; b < n_; ++b)
        for (Id c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw StructuralError("group: not associative at (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ", " + std::to_string(c) + ")");
    inverse_.assign(n_, 0);
    for (Id a = 0; a < n_; ++a)
      for (Id b = 0; b < n_; ++b)
        if (mul(a, b) == identity_) inverse_[a] = b;
  }

  std::size_t n_;
  std::vector<Id> table_;
  std::vector<Id> inverse_;
  std::vector<std::string> names_;
  Id identity_ = 0;
};

/// A subgroup as its sorted element ids; equal iff the id lists are equal.
struct Subgroup {
  std::vector<Id> elements;

  std::size_t size() const { return elements.size(); }
  bool contains(Id x) const {
    return std::binary_search(elements.begin(), elements.end(), x);
  }
  bool includes(const Subgroup& other) const {
    return std::includes(elements.begin(), elements.end(), other.elements.begin(),
                         other.elements.end());
  }
  friend bool operator==(const Subgroup&, const Subgroup&) = default;
  /// Catalog order: by size, then lexicographically.
  friend bool operator<(const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements < b.elements;
  }
};

namespace detail {

inline void check_ids(const FiniteGroup& g, std::span<const Id> ids) {
  for (Id x : ids)
    if (x >= g.order())
      throw StructuralError("element id " + std::to_string(x) + " out of range for group of order " +
                            std::to_string(g.order()));
}

inline Subgroup from_mask(const std::vector<char>& in) {
  Subgroup s;
  for (Id i = 0; i < in.size(); ++i)
    if (in[i]) s.elements.push_back(i);
  return s;
}

}  // namespace detail

/// Least subgroup containing `gens`. In a finite group closure under right
/// multiplication by the generators suffices.
inline Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Id> gens) {
  detail::check_ids(g, gens);
  std::vector<char> in(g.order(), 0);
  std::vector<Id> queue{g.identity()};
  in[g.identity()] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Id s : gens) {
      Id y = g.mul(queue[head], s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  return detail::from_mask(in);
}

/// Least normal subgroup containing `gens`: the subgroup generated by all
/// conjugates, which is already conjugation-closed.
inline Subgroup normal_closure(const FiniteGroup& g, std::span<const Id> gens) {
  detail::check_ids(g, gens);
  std::vector<char> in(g.order(), 0);
  std::vector<Id> conjugates;
  for (Id s : gens)
    for (Id x = 0; x < g.order(); ++x) {
      Id c = g.conj(x, s);
      if (!in[c]) {
        in[c] = 1;
        conjugates.push_back(c);
      }
    }
  return subgroup_generated(g, conjugates);
}

inline bool is_subgroup(const FiniteGroup& g, const Subgroup& s) {
  if (!s.contains(g.identity())) return false;
  for (Id a : s.elements)
    for (Id b : s.elements)
      if (!s.contains(g.mul(a, g.inv(b)))) return false;
  return true;
}

inline bool is_normal(const FiniteGroup& g, const Subgroup& s) {
  if (!is_subgroup(g, s)) return false;
  for (Id x = 0; x < g.order(); ++x)
    for (Id a : s.elements)
      if (!s.contains(g.conj(x, a))) return false;
  return true;
}

inline Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup{{g.identity()}}; }

inline Subgroup whole_group(const FiniteGroup& g) {
  Subgroup s;
  for (Id i = 0; i < g.order(); ++i) s.elements.push_back(i);
  return s;
}

/// Subgroup generated by S u T.
inline Subgroup join_subgroups(const FiniteGroup& g, const Subgroup& s, const Subgroup& t) {
  std::vector<Id> gens = s.elements;
  gens.insert(gens.end(), t.elements.begin(), t.elements.end());
  return subgroup_generated(g, gens);
}

/// [S, T]: normal closure of { s t s^-1 t^-1 }.
inline Subgroup huq_commutator_grp(const FiniteGroup& g, const Subgroup& s, const Subgroup& t) {
  std::vector<char> seen(g.order(), 0);
  std::vector<Id> comms;
  for (Id a : s.elements)
    for (Id b : t.elements) {
      Id c = g.commutator(a, b);
      if (!seen[c]) {
        seen[c] = 1;
        comms.push_back(c);
      }
    }
  return normal_closure(g, comms);
}

/// A subgroup S re-presented as a group in its own right; local id i stands
/// for embedding[i] = S.elements[i].
struct SubgroupGroup {
  FiniteGroup group;
  std::vector<Id> embedding;

  Subgroup restrict(const Subgroup& t) const {
    Subgroup out;
    for (Id x : t.elements) {
      auto it = std::lower_bound(embedding.begin(), embedding.end(), x);
      if (it == embedding.end() || *it != x)
        throw PreconditionError("subgroup is not contained in the ambient subgroup");
      out.elements.push_back(static_cast<Id>(it - embedding.begin()));
    }
    return out;
  }
  Subgroup embed(const Subgroup& t) const {
    Subgroup out;
    for (Id x : t.elements) out.elements.push_back(embedding[x]);
    std::sort(out.elements.begin(), out.elements.end());
    return out;
  }
};

inline SubgroupGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& s) {
  if (!is_subgroup(g, s)) throw PreconditionError("subgroup_as_group: not a subgroup");
  const auto& emb = s.elements;
  std::vector<std::vector<Id>> table(emb.size(), std::vector<Id>(emb.size()));
  for (std::size_t i = 0; i < emb.size(); ++i)
    for (std::size_t j = 0; j < emb.size(); ++j) {
      Id p = g.mul(emb[i], emb[j]);
      table[i][j] = static_cast<Id>(std::lower_bound(emb.begin(), emb.end(), p) - emb.begin());
    }
  std::vector<std::string> names;
  if (!g.names().empty())
    for (Id x : emb) names.push_back(g.names()[x]);
  return {FiniteGroup(std::move(table), std::move(names)), emb};
}

/// [K, L] computed inside the subgroup S, re-embedded into G.
inline Subgroup relative_commutator_grp(const FiniteGroup& g, const Subgroup& s,
                                        const Subgroup& k, const Subgroup& l) {
  if (!s.includes(k) || !s.includes(l))
    throw PreconditionError("relative_commutator_grp: K and L must lie in S");
  SubgroupGroup sg = subgroup_as_group(g, s);
  return sg.embed(huq_commutator_grp(sg.group, sg.restrict(k), sg.restrict(l)));
}

inline std::vector<std::vector<Id>> conjugacy_classes(const FiniteGroup& g) {
  std::vector<char> done(g.order(), 0);
  std::vector<std::vector<Id>> classes;
  for (Id a = 0; a < g.order(); ++a) {
    if (done[a]) continue;
    std::set<Id> cls;
    for (Id x = 0; x < g.order(); ++x) cls.insert(g.conj(x, a));
    for (Id c : cls) done[c] = 1;
    classes.emplace_back(cls.begin(), cls.end());
  }
  return classes;
}

/// All normal subgroups, sorted by (size, elements). Every normal subgroup
/// is a join of normal closures of single conjugacy classes, so a search
/// that adjoins one class at a time from the trivial subgroup finds all.
inline std::vector<Subgroup> enumerate_normal_subgroups(const FiniteGroup& g) {
  auto classes = conjugacy_classes(g);
  std::set<Subgroup> found{trivial_subgroup(g)};
  std::vector<Subgroup> frontier{trivial_subgroup(g)};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& n : frontier)
      for (const auto& cls : classes) {
        if (n.contains(cls.front())) continue;
        std::vector<Id> gens = n.elements;
        gens.insert(gens.end(), cls.begin(), cls.end());
        Subgroup m = subgroup_generated(g, gens);
        if (found.insert(m).second) next.push_back(std::move(m));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

/// All subgroups, sorted by (size, elements), as joins of cyclic subgroups.
inline std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
  std::set<Subgroup> cyclic;
  for (Id a = 0; a < g.order(); ++a) {
    Id gen[] = {a};
    cyclic.insert(subgroup_generated(g, gen));
  }
  std::set<Subgroup> found{trivial_subgroup(g)};
  std::vector<Subgroup> frontier{trivial_subgroup(g)};
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& h : frontier)
      for (const auto& c : cyclic) {
        if (h.includes(c)) continue;
        Subgroup m = join_subgroups(g, h, c);
        if (found.insert(m).second) next.push_back(std::move(m));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

/// A homomorphism between two finite groups, validated on construction.
class GroupHom {
 public:
  GroupHom(FiniteGroup domain, FiniteGroup codomain, std::vector<Id> map)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(map)) {
    if (map_.size() != domain_.order())
      throw StructuralError("hom: map has " + std::to_string(map_.size()) +
                            " entries, domain has order " + std::to_string(domain_.order()));
    detail::check_ids(codomain_, map_);
    for (Id a = 0; a < domain_.order(); ++a)
      for (Id b = 0; b < domain_.order(); ++b)
        if (map_[domain_.mul(a, b)] != codomain_.mul(map_[a], map_[b]))
          throw StructuralError("hom: not multiplicative at (" + std::to_string(a) + ", " +
                                std::to_string(b) + ")");
  }

  const FiniteGroup& domain() const { return domain_; }
  const FiniteGroup& codomain() const { return codomain_; }
  const std::vector<Id>& map() const { return map_; }
  Id operator()(Id x) const { return map_[x]; }

  bool is_surjective() const {
    std::vector<char> hit(codomain_.order(), 0);
    for (Id y : map_) hit[y] = 1;
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  }

 private:
  FiniteGroup domain_;
  FiniteGroup codomain_;
  std::vector<Id> map_;
};

inline Subgroup kernel_grp(const GroupHom& p) {
  Subgroup k;
  for (Id x = 0; x < p.domain().order(); ++x)
    if (p(x) == p.codomain().identity()) k.elements.push_back(x);
  return k;
}

inline Subgroup image_grp(const GroupHom& p, const Subgroup& s) {
  std::set<Id> img;
  for (Id x : s.elements) img.insert(p(x));
  return Subgroup{{img.begin(), img.end()}};
}

struct QuotientGroup {
  FiniteGroup group;
  GroupHom projection;
};

/// G/N via cosets; cosets are numbered by their least element.
inline QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw PreconditionError("quotient_group: subgroup is not normal");
  std::vector<Id> coset(g.order(), static_cast<Id>(-1));
  std::vector<Id> reps;
  for (Id x = 0; x < g.order(); ++x) {
    if (coset[x] != static_cast<Id>(-1)) continue;
    Id id = static_cast<Id>(reps.size());
    reps.push_back(x);
    for (Id k : n.elements) coset[g.mul(x, k)] = id;
  }
  std::vector<std::vector<Id>> table(reps.size(), std::vector<Id>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) table[i][j] = coset[g.mul(reps[i], reps[j])];
  FiniteGroup q(std::move(table));
  GroupHom proj(g, q, coset);
  return {std::move(q), std::move(proj)};
}

/// The normal-subgroup lattice of G with dot = Huq commutator.
class NSubContext {
 public:
  using element_type = Subgroup;

  explicit NSubContext(FiniteGroup g) : g_(std::move(g)) {}

  const FiniteGroup& group() const { return g_; }
  bool leq(const Subgroup& a, const Subgroup& b) const { return b.includes(a); }
  Subgroup join(const Subgroup& a, const Subgroup& b) const { return join_subgroups(g_, a, b); }
  Subgroup dot(const Subgroup& a, const Subgroup& b) const { return huq_commutator_grp(g_, a, b); }
  Subgroup bottom() const { return trivial_subgroup(g_); }
  Subgroup top() const { return whole_group(g_); }
  std::vector<Subgroup> elements() const { return enumerate_normal_subgroups(g_); }

 private:
  FiniteGroup g_;
};

static_assert(CommutatorContext<NSubContext>);

inline NSubContext nsub_context(const FiniteGroup& g) { return NSubContext(g); }

/// A finite context collection re-expressed as an explicit FiniteCsl;
/// element i of the CSL is elements[i].
template <class Elem>
struct MaterializedCsl {
  FiniteCsl csl;
  std::vector<Elem> elements;

  Id id_of(const Elem& e) const {
    auto it = std::find(elements.begin(), elements.end(), e);
    if (it == elements.end()) throw PreconditionError("element not in the materialized carrier");
    return static_cast<Id>(it - elements.begin());
  }
};

/// Tabulates join and dot over a collection closed under both.
template <CommutatorContext Ctx>
MaterializedCsl<element_t<Ctx>> materialize(const Ctx& ctx, std::vector<element_t<Ctx>> elems) {
  const std::size_t n = elems.size();
  std::map<element_t<Ctx>, Id> index;
  for (Id i = 0; i < n; ++i) index.emplace(elems[i], i);
  auto lookup = [&](const element_t<Ctx>& e) {
    auto it = index.find(e);
    if (it == index.end())
      throw StructuralError("materialize: collection is not closed under join and dot");
    return it->second;
  };
  std::vector<Id> join(n * n), dot(n * n);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) {
      join[a * n + b] = lookup(ctx.join(elems[a], elems[b]));
      dot[a * n + b] = lookup(ctx.dot(elems[a], elems[b]));
    }
  Id bottom = lookup(ctx.bottom());
  return {FiniteCsl(n, std::move(join), std::move(dot), bottom), std::move(elems)};
}

/// NSub(G) as an explicit FiniteCsl, elements in enumerate_normal_subgroups order.
inline MaterializedCsl<Subgroup> materialize_nsub(const FiniteGroup& g) {
  NSubContext ctx(g);
  return materialize(ctx, ctx.elements());
}

}  // namespace hallcrit
