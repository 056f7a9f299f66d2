#pragma once

// The abstract commutator context: a join semi-lattice of (normal)
// subobjects with a commutator-like product. Backends supply elements as
// canonical values, so equality of handles is equality of subobjects.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hallcrit/error.hpp"

namespace hallcrit {

template <class C>
concept CommutatorContext =
    requires(const C& ctx, const typename C::element_type& a) {
      typename C::element_type;
      { ctx.leq(a, a) } -> std::convertible_to<bool>;
      { ctx.join(a, a) } -> std::convertible_to<typename C::element_type>;
      { ctx.dot(a, a) } -> std::convertible_to<typename C::element_type>;
      { ctx.bottom() } -> std::convertible_to<typename C::element_type>;
      { ctx.top() } -> std::convertible_to<typename C::element_type>;
    } && std::equality_comparable<typename C::element_type>;

template <CommutatorContext Ctx>
using element_t = typename Ctx::element_type;

/// Positions, within a caller-supplied sample, of elements violating a law.
struct SampleWitness {
  std::vector<std::size_t> positions;
};

/// Smallest subset of the context containing the seeds, bottom and top that
/// is closed under join and dot. Insertion order is deterministic.
template <CommutatorContext Ctx>
std::vector<element_t<Ctx>> closure(const Ctx& ctx,
                                    std::span<const element_t<Ctx>> seeds,
                                    std::size_t cap = 64) {
  std::vector<element_t<Ctx>> out;
  auto add = [&](const element_t<Ctx>& e) {
    if (std::find(out.begin(), out.end(), e) != out.end()) return false;
    if (out.size() >= cap)
      throw CapError("closure exceeds cap of " + std::to_string(cap) +
                     " elements");
    out.push_back(e);
    return true;
  };
  add(ctx.bottom());
  add(ctx.top());
  for (const auto& s : seeds) add(s);
  std::size_t done = 0;
  // Pairs (i, j) with max(i, j) < done have already been combined.
  while (done < out.size()) {
    std::size_t end = out.size();
    for (std::size_t i = 0; i < end; ++i) {
      for (std::size_t j = (i < done ? done : 0); j < end; ++j) {
        auto a = out[i];
        auto b = out[j];
        add(ctx.join(a, b));
        add(ctx.dot(a, b));
      }
    }
    done = end;
  }
  return out;
}

/// Jacobi inequality a(bc) <= ((ab)c) v (b(ac)) over all triples of a
/// sample. Returns the lexicographically least violating positions.
template <CommutatorContext Ctx>
std::optional<SampleWitness> jacobi_violation(
    const Ctx& ctx, std::span<const element_t<Ctx>> sample) {
  const std::size_t n = sample.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const auto& a = sample[i];
        const auto& b = sample[j];
        const auto& c = sample[k];
        auto lhs = ctx.dot(a, ctx.dot(b, c));
        auto rhs = ctx.join(ctx.dot(ctx.dot(a, b), c), ctx.dot(b, ctx.dot(a, c)));
        if (!ctx.leq(lhs, rhs)) return SampleWitness{{i, j, k}};
      }
  return std::nullopt;
}

/// f^n(x).
template <class F, class E>
E iterate(const F& f, E x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x = f(x);
  return x;
}

}  // namespace hallcrit
