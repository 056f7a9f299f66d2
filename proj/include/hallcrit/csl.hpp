#pragma once

// Explicit finite commutator semi-lattices and the checkers for the laws
// they may satisfy: the four defining axioms, Jacobi, associativity, and
// the derivation conditions on self-maps.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hallcrit/context.hpp"
#include "hallcrit/error.hpp"

namespace hallcrit {

using Id = std::uint32_t;

/// A total self-map of a finite carrier, stored as its value table.
using FiniteMap = std::vector<Id>;

/// Carriers up to this size are checked over every triple.
inline constexpr std::size_t kExhaustiveCap = 128;

struct CheckOptions {
  /// When set, carriers above `exhaustive_cap` are checked on this many
  /// random triples instead of being rejected.
  std::optional<std::size_t> samples;
  std::uint64_t seed = 0x5eed;
  std::size_t exhaustive_cap = kExhaustiveCap;
};

/// A join semi-lattice with a binary operation, both given as n x n tables.
/// The order is not stored: a <= b iff join(a, b) == b.
///
/// Construction checks only shape and ranges; the axioms are checked by
/// check_csl_axioms so that candidate tables can be diagnosed.
class FiniteCsl {
 public:
  using element_type = Id;

  FiniteCsl(std::size_t n, std::vector<Id> join, std::vector<Id> dot,
            Id bottom)
      : n_(n), join_(std::move(join)), dot_(std::move(dot)), bottom_(bottom) {
    if (n_ == 0) throw StructuralError("csl: carrier must be non-empty");
    if (join_.size() != n_ * n_ || dot_.size() != n_ * n_)
      throw StructuralError("csl: tables must be " + std::to_string(n_) + "x" +
                            std::to_string(n_));
    for (std::size_t i = 0; i < n_ * n_; ++i) {
      if (join_[i] >= n_)
        throw StructuralError("csl: join[" + std::to_string(i / n_) + "][" +
                              std::to_string(i % n_) + "] out of range");
      if (dot_[i] >= n_)
        throw StructuralError("csl: dot[" + std::to_string(i / n_) + "][" +
                              std::to_string(i % n_) + "] out of range");
    }
    if (bottom_ >= n_) throw StructuralError("csl: bottom out of range");
    top_ = 0;
    for (Id a = 1; a < n_; ++a) top_ = this->join(top_, a);
  }

  static FiniteCsl from_rows(const std::vector<std::vector<Id>>& join,
                             const std::vector<std::vector<Id>>& dot,
                             Id bottom) {
    const std::size_t n = join.size();
    if (dot.size() != n)
      throw StructuralError("csl: join and dot tables differ in size");
    return FiniteCsl(n, flatten(join, n, "join"), flatten(dot, n, "dot"),
                     bottom);
  }

  std::size_t size() const { return n_; }
  Id join(Id a, Id b) const { return join_[a * n_ + b]; }
  Id dot(Id a, Id b) const { return dot_[a * n_ + b]; }
  bool leq(Id a, Id b) const { return join(a, b) == b; }
  Id bottom() const { return bottom_; }
  /// Join of the whole carrier.
  Id top() const { return top_; }

  const std::vector<Id>& join_table() const { return join_; }
  const std::vector<Id>& dot_table() const { return dot_; }

  /// Same semilattice, different operation.
  FiniteCsl with_dot(std::vector<Id> dot) const {
    return FiniteCsl(n_, join_, std::move(dot), bottom_);
  }

  friend bool operator==(const FiniteCsl&, const FiniteCsl&) = default;

 private:
  static std::vector<Id> flatten(const std::vector<std::vector<Id>>& rows,
                                 std::size_t n, const char* what) {
    std::vector<Id> flat;
    flat.reserve(n * n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != n)
        throw StructuralError(std::string("csl: ") + what + " row " +
                              std::to_string(r) + " has length " +
                              std::to_string(rows[r].size()) + ", expected " +
                              std::to_string(n));
      flat.insert(flat.end(), rows[r].begin(), rows[r].end());
    }
    return flat;
  }

  std::size_t n_;
  std::vector<Id> join_;
  std::vector<Id> dot_;
  Id bottom_;
  Id top_ = 0;
};

static_assert(CommutatorContext<FiniteCsl>);

namespace detail {

/// First triple (lexicographic when exhaustive) for which `bad` holds.
template <class Pred>
std::optional<std::array<Id, 3>> find_triple(std::size_t n,
                                             const CheckOptions& opts,
                                             Pred bad) {
  if (n <= opts.exhaustive_cap) {
    for (Id a = 0; a < n; ++a)
      for (Id b = 0; b < n; ++b)
        for (Id c = 0; c < n; ++c)
          if (bad(a, b, c)) return std::array<Id, 3>{a, b, c};
    return std::nullopt;
  }
  if (!opts.samples)
    throw CapError("carrier of " + std::to_string(n) +
                   " elements exceeds exhaustive cap " +
                   std::to_string(opts.exhaustive_cap) +
                   "; request sampled checking");
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Id> pick(0, static_cast<Id>(n - 1));
  for (std::size_t s = 0; s < *opts.samples; ++s) {
    Id a = pick(rng), b = pick(rng), c = pick(rng);
    if (bad(a, b, c)) return std::array<Id, 3>{a, b, c};
  }
  return std::nullopt;
}

template <class Pred>
std::optional<std::array<Id, 2>> find_pair(std::size_t n, Pred bad) {
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      if (bad(a, b)) return std::array<Id, 2>{a, b};
  return std::nullopt;
}

inline void check_map(const FiniteCsl& csl, const FiniteMap& f) {
  if (f.size() != csl.size())
    throw StructuralError("map has " + std::to_string(f.size()) +
                          " entries, carrier has " +
                          std::to_string(csl.size()));
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f[i] >= csl.size())
      throw StructuralError("map value at " + std::to_string(i) +
                            " out of range");
}

}  // namespace detail

/// Outcome of a universally quantified law; `witness` is empty when it holds.
struct LawCheck {
  bool holds = true;
  std::vector<Id> witness;

  static LawCheck from(const auto& found) {
    if (!found) return {};
    return {false, std::vector<Id>(found->begin(), found->end())};
  }
};

struct AxiomVerdict {
  char axiom;       // 'a'..'d'
  std::string law;  // which law was tested (or which sub-law failed)
  bool holds;
  std::vector<Id> witness;
};

struct AxiomReport {
  std::vector<AxiomVerdict> axioms;

  bool all_hold() const {
    for (const auto& v : axioms)
      if (!v.holds) return false;
    return true;
  }
  const AxiomVerdict& at(char axiom) const {
    for (const auto& v : axioms)
      if (v.axiom == axiom) return v;
    throw PreconditionError(std::string("no axiom '") + axiom + "'");
  }
};

/// (a) join semi-lattice with least element `bottom`, (b) dot commutative,
/// (c) a.b <= b, (d) a.(b v c) = a.b v a.c.
inline AxiomReport check_csl_axioms(const FiniteCsl& x,
                                    const CheckOptions& opts = {}) {
  const std::size_t n = x.size();
  AxiomReport report;

  auto verdict_a = [&]() -> AxiomVerdict {
    for (Id a = 0; a < n; ++a)
      if (x.join(a, a) != a) return {'a', "join idempotent", false, {a}};
    if (auto w = detail::find_pair(
            n, [&](Id a, Id b) { return x.join(a, b) != x.join(b, a); }))
      return {'a', "join commutative", false, {(*w)[0], (*w)[1]}};
    if (auto w = detail::find_triple(n, opts, [&](Id a, Id b, Id c) {
          return x.join(a, x.join(b, c)) != x.join(x.join(a, b), c);
        }))
      return {'a', "join associative", false, {(*w)[0], (*w)[1], (*w)[2]}};
    for (Id a = 0; a < n; ++a)
      if (!x.leq(x.bottom(), a)) return {'a', "bottom least", false, {a}};
    return {'a', "join semi-lattice with bottom", true, {}};
  };
  report.axioms.push_back(verdict_a());

  auto pair_verdict = [&](char axiom, std::string law, auto bad) {
    auto w = detail::find_pair(n, bad);
    LawCheck lc = LawCheck::from(w);
    return AxiomVerdict{axiom, std::move(law), lc.holds, lc.witness};
  };
  report.axioms.push_back(pair_verdict(
      'b', "dot commutative", [&](Id a, Id b) { return x.dot(a, b) != x.dot(b, a); }));
  report.axioms.push_back(pair_verdict(
      'c', "a.b <= b", [&](Id a, Id b) { return !x.leq(x.dot(a, b), b); }));

  auto w = detail::find_triple(n, opts, [&](Id a, Id b, Id c) {
    return x.dot(a, x.join(b, c)) != x.join(x.dot(a, b), x.dot(a, c));
  });
  LawCheck d = LawCheck::from(w);
  report.axioms.push_back({'d', "a.(b v c) = a.b v a.c", d.holds, d.witness});
  return report;
}

/// Remark following the definition: every x.- is order preserving.
/// Witness (x, a, b) with a <= b and x.a not <= x.b.
inline LawCheck check_order_preserving(const FiniteCsl& x,
                                       const CheckOptions& opts = {}) {
  return LawCheck::from(detail::find_triple(x.size(), opts, [&](Id s, Id a, Id b) {
    return x.leq(a, b) && !x.leq(x.dot(s, a), x.dot(s, b));
  }));
}

/// a.(b.c) <= ((a.b).c) v (b.(a.c)) for all triples.
inline LawCheck check_jacobi(const FiniteCsl& x, const CheckOptions& opts = {}) {
  return LawCheck::from(detail::find_triple(x.size(), opts, [&](Id a, Id b, Id c) {
    Id lhs = x.dot(a, x.dot(b, c));
    Id rhs = x.join(x.dot(x.dot(a, b), c), x.dot(b, x.dot(a, c)));
    return !x.leq(lhs, rhs);
  }));
}

inline LawCheck check_associative(const FiniteCsl& x,
                                  const CheckOptions& opts = {}) {
  return LawCheck::from(detail::find_triple(x.size(), opts, [&](Id a, Id b, Id c) {
    return x.dot(a, x.dot(b, c)) != x.dot(x.dot(a, b), c);
  }));
}

// --- derivations ----------------------------------------------------------

enum class DerivationFailure { None, NotJoinPreserving, LeibnizViolated };

struct DerivationCheck {
  bool holds = true;
  DerivationFailure failure = DerivationFailure::None;
  /// (a) for f(bottom) != bottom, (a, b) otherwise.
  std::vector<Id> witness;
};

/// f(a v b) = f(a) v f(b) and f(bottom) = bottom.
inline LawCheck preserves_joins(const FiniteCsl& x, const FiniteMap& f) {
  detail::check_map(x, f);
  if (f[x.bottom()] != x.bottom()) return {false, {x.bottom()}};
  return LawCheck::from(detail::find_pair(x.size(), [&](Id a, Id b) {
    return f[x.join(a, b)] != x.join(f[a], f[b]);
  }));
}

/// f(s) <= s for every s.
inline LawCheck bounded_by_identity(const FiniteCsl& x, const FiniteMap& f) {
  detail::check_map(x, f);
  for (Id s = 0; s < x.size(); ++s)
    if (!x.leq(f[s], s)) return {false, {s}};
  return {};
}

/// Join preserving and f(a.b) <= f(a).b v a.f(b).
inline DerivationCheck is_derivation(const FiniteCsl& x, const FiniteMap& f) {
  LawCheck joins = preserves_joins(x, f);
  if (!joins.holds)
    return {false, DerivationFailure::NotJoinPreserving, joins.witness};
  auto w = detail::find_pair(x.size(), [&](Id a, Id b) {
    return !x.leq(f[x.dot(a, b)], x.join(x.dot(f[a], b), x.dot(a, f[b])));
  });
  if (w) return {false, DerivationFailure::LeibnizViolated, {(*w)[0], (*w)[1]}};
  return {};
}

/// The map y -> x.y.
inline FiniteMap inner_derivation(const FiniteCsl& csl, Id x) {
  if (x >= csl.size()) throw PreconditionError("inner_derivation: x out of range");
  FiniteMap f(csl.size());
  for (Id y = 0; y < csl.size(); ++y) f[y] = csl.dot(x, y);
  return f;
}

struct InnerDerivationEquivalence {
  bool jacobi = false;
  bool all_inner_derivations = false;
  bool order_preserving = false;
  bool equivalent() const { return jacobi == all_inner_derivations; }
};

/// Jacobi holds iff every x.- is a derivation; also records whether every
/// x.- is order preserving (true whenever the axioms hold).
inline InnerDerivationEquivalence check_inner_derivation_equivalence(
    const FiniteCsl& csl, const CheckOptions& opts = {}) {
  InnerDerivationEquivalence r;
  r.jacobi = check_jacobi(csl, opts).holds;
  r.all_inner_derivations = true;
  for (Id s = 0; s < csl.size(); ++s)
    if (!is_derivation(csl, inner_derivation(csl, s)).holds) {
      r.all_inner_derivations = false;
      break;
    }
  r.order_preserving = check_order_preserving(csl, opts).holds;
  return r;
}

struct SufficientConditionCheck {
  /// f(a.b) <= f(a).f(b) for all a, b.
  bool applies = false;
  bool derivation = false;
  bool consistent() const { return !applies || derivation; }
};

/// For f join preserving and bounded by the identity: if
/// f(a.b) <= f(a).f(b) everywhere then f is a derivation.
inline SufficientConditionCheck check_derivation_sufficient(const FiniteCsl& x,
                                                            const FiniteMap& f) {
  LawCheck joins = preserves_joins(x, f);
  if (!joins.holds)
    throw PreconditionError("check_derivation_sufficient: map does not preserve joins");
  if (!bounded_by_identity(x, f).holds)
    throw PreconditionError(
        "check_derivation_sufficient: map is not bounded by the identity");
  SufficientConditionCheck r;
  r.applies = !detail::find_pair(x.size(), [&](Id a, Id b) {
    return !x.leq(f[x.dot(a, b)], x.dot(f[a], f[b]));
  });
  r.derivation = is_derivation(x, f).holds;
  return r;
}

// --- idempotent operations -------------------------------------------------

enum class IdempotentStatus { NotApplicable, Confirmed, Refuted };

struct IdempotentMeetCheck {
  IdempotentStatus status = IdempotentStatus::NotApplicable;
  std::string reason;
  std::vector<Id> witness;
};

/// When dot is idempotent, confirms that a.b is the greatest lower bound of
/// a and b and that the order is a distributive lattice.
inline IdempotentMeetCheck check_idempotent_meet(const FiniteCsl& x) {
  const std::size_t n = x.size();
  for (Id a = 0; a < n; ++a)
    if (x.dot(a, a) != a)
      return {IdempotentStatus::NotApplicable, "dot not idempotent", {a}};

  // Greatest lower bounds computed from the order alone.
  std::vector<Id> glb(n * n);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) {
      std::optional<Id> best;
      for (Id w = 0; w < n; ++w) {
        if (!x.leq(w, a) || !x.leq(w, b)) continue;
        if (!best || x.leq(*best, w)) best = w;
      }
      bool greatest = best.has_value();
      for (Id w = 0; greatest && w < n; ++w)
        if (x.leq(w, a) && x.leq(w, b) && !x.leq(w, *best)) greatest = false;
      if (!greatest)
        return {IdempotentStatus::Refuted, "no greatest lower bound", {a, b}};
      glb[a * n + b] = *best;
      if (x.dot(a, b) != *best)
        return {IdempotentStatus::Refuted, "a.b is not the meet", {a, b}};
    }
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      for (Id c = 0; c < n; ++c) {
        Id lhs = glb[a * n + x.join(b, c)];
        Id rhs = x.join(glb[a * n + b], glb[a * n + c]);
        if (lhs != rhs)
          return {IdempotentStatus::Refuted, "lattice not distributive", {a, b, c}};
      }
  return {IdempotentStatus::Confirmed, "dot is the meet of a distributive lattice", {}};
}

}  // namespace hallcrit
