#pragma once

// Exact verification of the iterated-derivation bounds. Everything here is
// written against CommutatorContext, so the same checks run on explicit
// finite instances and on the group and ring backends.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hallcrit/context.hpp"
#include "hallcrit/csl.hpp"
#include "hallcrit/error.hpp"

namespace hallcrit {

/// n_k = k(m - 1) + 1.
constexpr std::uint64_t lemma_exponent(std::uint64_t k, std::uint64_t m) {
  return k * (m - 1) + 1;
}

/// m_k = k(k + 1)/2 (m - 1) + k.
constexpr std::uint64_t main_exponent(std::uint64_t k, std::uint64_t m) {
  return k * (k + 1) / 2 * (m - 1) + k;
}

struct LeibnizReport {
  /// holds[n] for 0 <= n <= n_max.
  std::vector<bool> holds;
  bool all_hold() const {
    for (bool h : holds)
      if (!h) return false;
    return true;
  }
};

/// f^n(a.b) <= V_{i=0..n} f^i(a).f^{n-i}(b) for each n <= n_max.
template <CommutatorContext Ctx, class F>
LeibnizReport verify_leibniz_iterate(const Ctx& ctx, const F& f,
                                     const element_t<Ctx>& a,
                                     const element_t<Ctx>& b, std::size_t n_max) {
  std::vector<element_t<Ctx>> fa{a}, fb{b};
  for (std::size_t i = 1; i <= n_max; ++i) {
    fa.push_back(f(fa.back()));
    fb.push_back(f(fb.back()));
  }
  LeibnizReport r;
  auto lhs = ctx.dot(a, b);
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) lhs = f(lhs);
    auto rhs = ctx.dot(fa[0], fb[n]);
    for (std::size_t i = 1; i <= n; ++i) rhs = ctx.join(rhs, ctx.dot(fa[i], fb[n - i]));
    r.holds.push_back(ctx.leq(lhs, rhs));
  }
  return r;
}

struct BoundEntry {
  std::uint64_t k;
  std::uint64_t exponent;
  bool holds;
};

struct BoundReport {
  /// Least m >= 1 with f^m(base) <= x.x.
  std::uint64_t m = 0;
  std::vector<BoundEntry> entries;
  bool all_hold() const {
    for (const auto& e : entries)
      if (!e.holds) return false;
    return true;
  }
};

struct BoundOptions {
  /// Largest m tried when searching for the base iterate.
  std::size_t iteration_cap = 64;
};

namespace detail {

/// Derivation, bounded-by-identity and Jacobi preconditions, evaluated on
/// the caller's sample.
template <CommutatorContext Ctx, class F>
void require_bound_preconditions(const Ctx& ctx, const F& f,
                                 std::span<const element_t<Ctx>> sample) {
  if (!(f(ctx.bottom()) == ctx.bottom()))
    throw PreconditionError("f does not fix bottom");
  for (const auto& s : sample)
    if (!ctx.leq(f(s), s)) throw PreconditionError("f is not bounded by the identity");
  for (const auto& a : sample)
    for (const auto& b : sample) {
      if (!(f(ctx.join(a, b)) == ctx.join(f(a), f(b))))
        throw PreconditionError("f does not preserve joins");
      if (!ctx.leq(f(ctx.dot(a, b)), ctx.join(ctx.dot(f(a), b), ctx.dot(a, f(b)))))
        throw PreconditionError("f violates the Leibniz inequality");
    }
  if (jacobi_violation(ctx, sample))
    throw PreconditionError("Jacobi inequality fails on the sample");
}

template <CommutatorContext Ctx, class F>
std::uint64_t least_base_iterate(const Ctx& ctx, const F& f, const element_t<Ctx>& base,
                                 const element_t<Ctx>& target, std::size_t cap) {
  auto cur = base;
  for (std::uint64_t m = 1; m <= cap; ++m) {
    cur = f(cur);
    if (ctx.leq(cur, target)) return m;
  }
  throw NoBaseIterate("no m <= " + std::to_string(cap) + " with f^m(base) <= x.x");
}

}  // namespace detail

/// With g = x.- and m least such that f^m(x) <= g(x), checks
/// f^{n_k}(g^{k-1}(x)) <= g^k(x) for 1 <= k <= k_max.
template <CommutatorContext Ctx, class F>
BoundReport verify_lemma_bound(const Ctx& ctx, const F& f, const element_t<Ctx>& x,
                               std::size_t k_max, std::span<const element_t<Ctx>> sample,
                               const BoundOptions& opts = {}) {
  detail::require_bound_preconditions(ctx, f, sample);
  auto g = [&](const element_t<Ctx>& s) { return ctx.dot(x, s); };
  BoundReport r;
  r.m = detail::least_base_iterate(ctx, f, x, g(x), opts.iteration_cap);
  auto g_prev = x;  // g^{k-1}(x)
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    auto g_k = g(g_prev);
    std::uint64_t e = lemma_exponent(k, r.m);
    r.entries.push_back({k, e, ctx.leq(iterate(f, g_prev, e), g_k)});
    g_prev = g_k;
  }
  return r;
}

/// With x <= y, g = x.- and m least such that f^m(y) <= g(x), checks
/// f^{m_k}(y) <= g^k(x) for 1 <= k <= k_max.
template <CommutatorContext Ctx, class F>
BoundReport verify_main_bound(const Ctx& ctx, const F& f, const element_t<Ctx>& x,
                              const element_t<Ctx>& y, std::size_t k_max,
                              std::span<const element_t<Ctx>> sample,
                              const BoundOptions& opts = {}) {
  if (!ctx.leq(x, y)) throw PreconditionError("verify_main_bound requires x <= y");
  detail::require_bound_preconditions(ctx, f, sample);
  auto g = [&](const element_t<Ctx>& s) { return ctx.dot(x, s); };
  BoundReport r;
  r.m = detail::least_base_iterate(ctx, f, y, g(x), opts.iteration_cap);
  auto g_k = x;
  auto f_y = y;  // f^{exponent so far}(y)
  std::uint64_t applied = 0;
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    g_k = g(g_k);
    std::uint64_t e = main_exponent(k, r.m);
    f_y = iterate(f, f_y, e - applied);
    applied = e;
    r.entries.push_back({k, e, ctx.leq(f_y, g_k)});
  }
  return r;
}

// FiniteCsl conveniences: the sample is the whole carrier.

inline std::vector<Id> all_elements(const FiniteCsl& csl) {
  std::vector<Id> ids(csl.size());
  for (Id i = 0; i < csl.size(); ++i) ids[i] = i;
  return ids;
}

inline BoundReport verify_lemma_bound(const FiniteCsl& csl, const FiniteMap& f, Id x,
                                      std::size_t k_max, const BoundOptions& opts = {}) {
  detail::check_map(csl, f);
  auto ids = all_elements(csl);
  auto fn = [&](Id s) { return f[s]; };
  return verify_lemma_bound(csl, fn, x, k_max, std::span<const Id>(ids), opts);
}

inline BoundReport verify_main_bound(const FiniteCsl& csl, const FiniteMap& f, Id x, Id y,
                                     std::size_t k_max, const BoundOptions& opts = {}) {
  detail::check_map(csl, f);
  auto ids = all_elements(csl);
  auto fn = [&](Id s) { return f[s]; };
  return verify_main_bound(csl, fn, x, y, k_max, std::span<const Id>(ids), opts);
}

inline LeibnizReport verify_leibniz_iterate(const FiniteCsl& csl, const FiniteMap& f, Id a,
                                            Id b, std::size_t n_max) {
  detail::check_map(csl, f);
  auto fn = [&](Id s) { return f[s]; };
  return verify_leibniz_iterate(csl, fn, a, b, n_max);
}

}  // namespace hallcrit
