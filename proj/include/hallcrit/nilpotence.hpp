#pragma once

// Lower central series, nilpotency class, and the Hall-criterion check
// with its explicit class bound, written once against CommutatorContext
// and instantiated for groups and non-associative rings.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hallcrit/bounds.hpp"
#include "hallcrit/context.hpp"
#include "hallcrit/error.hpp"
#include "hallcrit/group.hpp"
#include "hallcrit/naring.hpp"

namespace hallcrit {

inline constexpr std::size_t kDefaultMaxSteps = 64;

enum class ChainStatus { Nilpotent, StabilizedNonzero, CapExceeded };

/// gamma^0 = top, gamma^{k+1} = top . gamma^k.
template <class Elem>
struct GammaChain {
  std::vector<Elem> terms;
  ChainStatus status = ChainStatus::CapExceeded;
  /// Nilpotent: the class. StabilizedNonzero: the first k with
  /// gamma^{k+1} = gamma^k. CapExceeded: the step cap.
  std::size_t step = 0;
};

template <CommutatorContext Ctx>
GammaChain<element_t<Ctx>> gamma_series(const Ctx& ctx, std::size_t max_steps = kDefaultMaxSteps) {
  if (max_steps < 1) throw PreconditionError("gamma_series: max_steps must be at least 1");
  GammaChain<element_t<Ctx>> chain;
  const auto top = ctx.top();
  const auto bottom = ctx.bottom();
  chain.terms.push_back(top);
  if (top == bottom) {
    chain.status = ChainStatus::Nilpotent;
    chain.step = 0;
    return chain;
  }
  for (std::size_t k = 1; k <= max_steps; ++k) {
    auto next = ctx.dot(top, chain.terms.back());
    bool repeat = next == chain.terms.back();
    chain.terms.push_back(std::move(next));
    if (chain.terms.back() == bottom) {
      chain.status = ChainStatus::Nilpotent;
      chain.step = k;
      return chain;
    }
    if (repeat) {
      chain.status = ChainStatus::StabilizedNonzero;
      chain.step = k - 1;
      return chain;
    }
  }
  chain.status = ChainStatus::CapExceeded;
  chain.step = max_steps;
  return chain;
}

struct NilpotencyClass {
  enum class Kind { Nilpotent, NotNilpotent, Unknown };
  Kind kind = Kind::Unknown;
  /// The class when nilpotent, otherwise the step at which the search ended.
  std::size_t value = 0;

  bool nilpotent() const { return kind == Kind::Nilpotent; }
  static NilpotencyClass of(std::size_t c) { return {Kind::Nilpotent, c}; }
  static NilpotencyClass not_nilpotent(std::size_t at) { return {Kind::NotNilpotent, at}; }
  static NilpotencyClass unknown(std::size_t steps) { return {Kind::Unknown, steps}; }
  friend bool operator==(const NilpotencyClass&, const NilpotencyClass&) = default;
};

template <class Elem>
NilpotencyClass class_of(const GammaChain<Elem>& chain) {
  switch (chain.status) {
    case ChainStatus::Nilpotent: return NilpotencyClass::of(chain.step);
    case ChainStatus::StabilizedNonzero: return NilpotencyClass::not_nilpotent(chain.step);
    case ChainStatus::CapExceeded: break;
  }
  return NilpotencyClass::unknown(chain.step);
}

/// The trivial object has class 0; nontrivial abelian objects class 1.
template <CommutatorContext Ctx>
NilpotencyClass nilpotency_class(const Ctx& ctx, std::size_t max_steps = kDefaultMaxSteps) {
  return class_of(gamma_series(ctx, max_steps));
}

/// c(c + 1)/2 (d - 1) + c.
inline std::uint64_t hall_bound(std::int64_t c, std::int64_t d) {
  if (c < 1 || d < 1) throw PreconditionError("hall_bound: c and d must be positive");
  auto uc = static_cast<std::uint64_t>(c), ud = static_cast<std::uint64_t>(d);
  return uc * (uc + 1) / 2 * (ud - 1) + uc;
}

template <class Elem>
struct HallVerdict {
  bool p_surjective = false;
  bool n_normal = false;
  bool ker_contained = false;
  NilpotencyClass class_n;
  NilpotencyClass class_b;
  NilpotencyClass class_e;
  /// hall_bound(max(c, 1), max(d, 1)); present when c and d are finite.
  /// A trivial N forces E = B, and a trivial B forces E = [N,N]_N <= N,
  /// so the clamped bound is still valid at the edges.
  std::optional<std::uint64_t> bound;
  bool hypotheses_hold = false;
  std::string failing_hypothesis;
  bool theorem_holds = false;

  GammaChain<Elem> gamma_e;
  /// f^d(E) <= g(N) with f = [E, -] and g = [N, -].
  std::optional<bool> proof_step;
  std::size_t sample_size = 0;
  bool jacobi_on_sample = false;
  /// f^{m_k}(E) <= g^k(N) for 1 <= k <= max(c, 1), run only when Jacobi
  /// holds on the sample.
  std::optional<BoundReport> main_bound;
  std::string main_bound_error;
};

/// Backend-independent inputs to the Hall check, all expressed in E's context.
template <class Elem>
struct HallInputs {
  Elem n;
  Elem kernel;
  /// [N, N]_N re-embedded in E; absent when N is not a subobject.
  std::optional<Elem> nn_relative;
  bool p_surjective = false;
  bool n_normal = false;
  NilpotencyClass class_n;
  NilpotencyClass class_b;
};

template <CommutatorContext Ctx>
HallVerdict<element_t<Ctx>> hall_check_core(const Ctx& ctx, const HallInputs<element_t<Ctx>>& in,
                                            std::size_t max_steps = kDefaultMaxSteps) {
  using Elem = element_t<Ctx>;
  HallVerdict<Elem> v;
  v.p_surjective = in.p_surjective;
  v.n_normal = in.n_normal;
  v.class_n = in.class_n;
  v.class_b = in.class_b;
  v.ker_contained = in.nn_relative && ctx.leq(in.kernel, *in.nn_relative);
  v.gamma_e = gamma_series(ctx, max_steps);
  v.class_e = class_of(v.gamma_e);

  if (!v.p_surjective) v.failing_hypothesis = "p is not surjective";
  else if (!v.n_normal) v.failing_hypothesis = "N is not normal in E";
  else if (!v.class_n.nilpotent()) v.failing_hypothesis = "N is not nilpotent";
  else if (!v.class_b.nilpotent()) v.failing_hypothesis = "B is not nilpotent";
  else if (!v.ker_contained) v.failing_hypothesis = "ker p is not contained in [N,N]_N";
  v.hypotheses_hold = v.failing_hypothesis.empty();

  if (v.class_n.nilpotent() && v.class_b.nilpotent()) {
    std::size_t c = v.class_n.value, d = v.class_b.value;
    v.bound = hall_bound(static_cast<std::int64_t>(std::max<std::size_t>(c, 1)),
                         static_cast<std::int64_t>(std::max<std::size_t>(d, 1)));
  }
  v.theorem_holds = !v.hypotheses_hold || (v.class_e.nilpotent() && v.class_e.value <= *v.bound);
  if (!v.hypotheses_hold) return v;

  const Elem top = ctx.top();
  auto f = [&](const Elem& k) { return ctx.dot(top, k); };
  auto g = [&](const Elem& k) { return ctx.dot(in.n, k); };
  const Elem gn = g(in.n);
  v.proof_step = ctx.leq(iterate(f, top, v.class_b.value), gn);

  std::vector<Elem> sample;
  try {
    std::array<Elem, 3> seeds{in.n, in.kernel, gn};
    sample = closure(ctx, std::span<const Elem>(seeds));
  } catch (const CapError& e) {
    v.main_bound_error = e.what();
    return v;
  }
  v.sample_size = sample.size();
  v.jacobi_on_sample = !jacobi_violation(ctx, std::span<const Elem>(sample));
  if (!v.jacobi_on_sample) return v;
  try {
    v.main_bound = verify_main_bound(ctx, f, in.n, top, std::max<std::size_t>(v.class_n.value, 1),
                                     std::span<const Elem>(sample));
  } catch (const Error& e) {
    v.main_bound_error = e.what();
  }
  return v;
}

/// Hall check for a group extension p: E -> B with candidate N.
inline HallVerdict<Subgroup> hall_check(const FiniteGroup& e, const Subgroup& n, const GroupHom& p,
                                        std::size_t max_steps = kDefaultMaxSteps) {
  if (!(p.domain() == e)) throw PreconditionError("hall_check: p must have domain E");
  HallInputs<Subgroup> in{n, kernel_grp(p), std::nullopt, p.is_surjective(), is_normal(e, n),
                          NilpotencyClass::unknown(0), NilpotencyClass::unknown(0)};
  if (is_subgroup(e, n)) {
    SubgroupGroup sub = subgroup_as_group(e, n);
    in.class_n = nilpotency_class(NSubContext(sub.group), max_steps);
    in.nn_relative = relative_commutator_grp(e, n, n, n);
  }
  in.class_b = nilpotency_class(NSubContext(p.codomain()), max_steps);
  return hall_check_core(NSubContext(e), in, max_steps);
}

/// Hall check for a ring extension p: E -> B with candidate ideal N.
inline HallVerdict<Submodule> hall_check(const NARing& e, const Submodule& n, const RingHom& p,
                                         std::size_t max_steps = kDefaultMaxSteps) {
  if (!(p.domain() == e)) throw PreconditionError("hall_check: p must have domain E");
  if (n.ambient_rank() != e.rank()) throw StructuralError("hall_check: N has the wrong ambient rank");
  HallInputs<Submodule> in{n, kernel_ring_hom(p), std::nullopt, p.is_surjective(), is_ideal(e, n),
                           NilpotencyClass::unknown(0), NilpotencyClass::unknown(0)};
  if (is_subring(e, n)) {
    Subring sub = subring_as_ring(e, n);
    in.class_n = nilpotency_class(IdealContext(sub.ring), max_steps);
    in.nn_relative = relative_commutator_ring(e, n, n, n).submodule;
  }
  in.class_b = nilpotency_class(IdealContext(p.codomain()), max_steps);
  return hall_check_core(IdealContext(e), in, max_steps);
}

/// The canonical extension E -> E/[N,N] for a normal subgroup N.
inline GroupHom quotient_by_commutator(const FiniteGroup& e, const Subgroup& n) {
  return quotient_group(e, huq_commutator_grp(e, n, n)).projection;
}

/// Hall verdicts for every normal subgroup N of E, with p = E -> E/[N,N].
inline std::vector<HallVerdict<Subgroup>> hall_sweep(const FiniteGroup& e,
                                                     std::size_t max_steps = kDefaultMaxSteps) {
  std::vector<HallVerdict<Subgroup>> out;
  for (const auto& n : enumerate_normal_subgroups(e))
    out.push_back(hall_check(e, n, quotient_by_commutator(e, n), max_steps));
  return out;
}

// --- commutator conditions ---------------------------------------------------

template <class Elem>
struct ConditionCheck {
  bool holds = false;
  Elem lhs;
  Elem rhs;
};

/// [K, L]_S = [K, L]_G for K, L normal in G and K, L <= S <= G.
inline ConditionCheck<Subgroup> check_condition_a(const FiniteGroup& g, const Subgroup& s,
                                                  const Subgroup& k, const Subgroup& l) {
  if (!is_subgroup(g, s)) throw PreconditionError("condition (a): S is not a subgroup");
  if (!is_normal(g, k) || !is_normal(g, l))
    throw PreconditionError("condition (a): K and L must be normal in G");
  if (!s.includes(k) || !s.includes(l)) throw PreconditionError("condition (a): K and L must lie in S");
  auto lhs = relative_commutator_grp(g, s, k, l);
  auto rhs = huq_commutator_grp(g, k, l);
  return {lhs == rhs, lhs, rhs};
}

/// [K, L]_S = [K, L]_R for K, L ideals of R and K, L <= S, S a subring.
inline ConditionCheck<Submodule> check_condition_a(const NARing& r, const Submodule& s,
                                                   const Submodule& k, const Submodule& l) {
  if (!is_subring(r, s)) throw PreconditionError("condition (a): S is not a subring");
  if (!is_ideal(r, k) || !is_ideal(r, l)) throw PreconditionError("condition (a): K and L must be ideals");
  if (!s.includes(k) || !s.includes(l)) throw PreconditionError("condition (a): K and L must lie in S");
  auto lhs = relative_commutator_ring(r, s, k, l).submodule;
  auto rhs = huq_commutator_ring(r, k, l).submodule;
  return {lhs == rhs, lhs, rhs};
}

/// [K, L v M] = [K, L] v [K, M].
template <CommutatorContext Ctx>
ConditionCheck<element_t<Ctx>> check_condition_b_i(const Ctx& ctx, const element_t<Ctx>& k,
                                                   const element_t<Ctx>& l, const element_t<Ctx>& m) {
  auto lhs = ctx.dot(k, ctx.join(l, m));
  auto rhs = ctx.join(ctx.dot(k, l), ctx.dot(k, m));
  bool holds = lhs == rhs;
  return {holds, std::move(lhs), std::move(rhs)};
}

/// [K, [L, M]] <= [[K, L], M] v [L, [K, M]].
template <CommutatorContext Ctx>
ConditionCheck<element_t<Ctx>> check_condition_b_ii(const Ctx& ctx, const element_t<Ctx>& k,
                                                    const element_t<Ctx>& l, const element_t<Ctx>& m) {
  auto lhs = ctx.dot(k, ctx.dot(l, m));
  auto rhs = ctx.join(ctx.dot(ctx.dot(k, l), m), ctx.dot(l, ctx.dot(k, m)));
  bool holds = ctx.leq(lhs, rhs);
  return {holds, std::move(lhs), std::move(rhs)};
}

struct ConditionSweep {
  std::size_t checked = 0;
  std::size_t failures = 0;
  /// Positions of the first failing tuple in the swept collection.
  std::vector<std::size_t> first_failure;
  bool holds() const { return failures == 0; }
};

struct ConditionsReport {
  ConditionSweep a;
  ConditionSweep b_i;
  ConditionSweep b_ii;
  bool all_hold() const { return a.holds() && b_i.holds() && b_ii.holds(); }
};

/// (b)(i) and (b)(ii) over all triples of a collection of normal subobjects.
template <CommutatorContext Ctx>
void sweep_conditions_b(const Ctx& ctx, std::span<const element_t<Ctx>> elems, ConditionsReport& out) {
  auto record = [](ConditionSweep& s, bool ok, std::vector<std::size_t> pos) {
    ++s.checked;
    if (!ok && s.failures++ == 0) s.first_failure = std::move(pos);
  };
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      for (std::size_t k = 0; k < elems.size(); ++k) {
        record(out.b_i, check_condition_b_i(ctx, elems[i], elems[j], elems[k]).holds, {i, j, k});
        record(out.b_ii, check_condition_b_ii(ctx, elems[i], elems[j], elems[k]).holds, {i, j, k});
      }
}

/// All three conditions on G: (a) over every subgroup S and normal K, L <= S,
/// (b) over every triple of normal subgroups. Positions for (a) are
/// (subgroup index, normal index, normal index).
inline ConditionsReport check_conditions(const FiniteGroup& g) {
  ConditionsReport r;
  auto normals = enumerate_normal_subgroups(g);
  auto subs = enumerate_subgroups(g);
  for (std::size_t s = 0; s < subs.size(); ++s)
    for (std::size_t k = 0; k < normals.size(); ++k)
      for (std::size_t l = 0; l < normals.size(); ++l) {
        if (!subs[s].includes(normals[k]) || !subs[s].includes(normals[l])) continue;
        ++r.a.checked;
        if (!check_condition_a(g, subs[s], normals[k], normals[l]).holds && r.a.failures++ == 0)
          r.a.first_failure = {s, k, l};
      }
  sweep_conditions_b(NSubContext(g), std::span<const Subgroup>(normals), r);
  return r;
}

/// Conditions on a ring over a finite sample of ideals (closed under join
/// and dot): (a) is checked with S ranging over the sample as well.
inline ConditionsReport check_conditions(const NARing& ring, std::span<const Submodule> ideals) {
  ConditionsReport r;
  for (std::size_t s = 0; s < ideals.size(); ++s)
    for (std::size_t k = 0; k < ideals.size(); ++k)
      for (std::size_t l = 0; l < ideals.size(); ++l) {
        if (!ideals[s].includes(ideals[k]) || !ideals[s].includes(ideals[l])) continue;
        ++r.a.checked;
        if (!check_condition_a(ring, ideals[s], ideals[k], ideals[l]).holds && r.a.failures++ == 0)
          r.a.first_failure = {s, k, l};
      }
  sweep_conditions_b(IdealContext(ring), ideals, r);
  return r;
}

}  // namespace hallcrit
