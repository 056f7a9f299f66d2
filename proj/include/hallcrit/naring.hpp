#pragma once

// Non-associative rings on Z^n given by structure constants, their ideal
// lattices as commutator contexts, and the rank-3 counterexample ring.
//
// Ideal closure only adjoins products with the generators e_i: every ring
// element is an integer combination of generators and multiplication is
// bilinear, so a submodule closed under e_i * - and - * e_i for all i is a
// two-sided ideal.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hallcrit/context.hpp"
#include "hallcrit/error.hpp"
#include "hallcrit/hnf.hpp"

namespace hallcrit {

/// Z^rank with e_i * e_j = sc[i][j], extended bilinearly. No associativity
/// or commutativity is assumed.
class NARing {
 public:
  NARing(std::size_t rank, std::vector<std::vector<IntVector>> sc) : rank_(rank), sc_(std::move(sc)) {
    if (sc_.size() != rank_) throw StructuralError("naring: sc must have rank rows");
    for (std::size_t i = 0; i < rank_; ++i) {
      if (sc_[i].size() != rank_)
        throw StructuralError("naring: sc row " + std::to_string(i) + " has wrong length");
      for (std::size_t j = 0; j < rank_; ++j)
        if (sc_[i][j].size() != rank_)
          throw StructuralError("naring: sc[" + std::to_string(i) + "][" + std::to_string(j) +
                                "] must have length " + std::to_string(rank_));
    }
  }

  /// The zero multiplication on Z^rank.
  static NARing zero_ring(std::size_t rank) {
    return NARing(rank, std::vector<std::vector<IntVector>>(
                            rank, std::vector<IntVector>(rank, zero_vector(rank))));
  }

  std::size_t rank() const { return rank_; }
  const IntVector& structure(std::size_t i, std::size_t j) const { return sc_[i][j]; }
  const std::vector<std::vector<IntVector>>& structure_constants() const { return sc_; }
  IntVector generator(std::size_t i) const { return unit_vector(rank_, i); }

  IntVector multiply(const IntVector& u, const IntVector& v) const {
    if (u.size() != rank_ || v.size() != rank_)
      throw StructuralError("multiply: vectors must have length " + std::to_string(rank_));
    IntVector out = zero_vector(rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < rank_; ++j) {
        if (v[j] == 0) continue;
        Integer c = u[i] * v[j];
        for (std::size_t k = 0; k < rank_; ++k) out[k] += c * sc_[i][j][k];
      }
    }
    return out;
  }

  friend bool operator==(const NARing&, const NARing&) = default;

 private:
  std::size_t rank_;
  std::vector<std::vector<IntVector>> sc_;
};

struct Ideal {
  Submodule submodule;
  bool ideal_verified = false;
};

/// Closed under e_i * b and b * e_i for every basis row b and generator e_i.
inline bool is_ideal(const NARing& r, const Submodule& s) {
  for (const auto& b : s.basis())
    for (std::size_t i = 0; i < r.rank(); ++i) {
      IntVector e = r.generator(i);
      if (!s.contains(r.multiply(e, b)) || !s.contains(r.multiply(b, e))) return false;
    }
  return true;
}

/// Closed under multiplication of basis rows.
inline bool is_subring(const NARing& r, const Submodule& s) {
  for (const auto& a : s.basis())
    for (const auto& b : s.basis())
      if (!s.contains(r.multiply(a, b))) return false;
  return true;
}

/// Least two-sided ideal containing `vectors`.
inline Ideal ideal_generated(const NARing& r, std::vector<IntVector> vectors,
                             std::size_t iteration_cap = 1000) {
  Submodule s = Submodule::span(r.rank(), std::move(vectors));
  for (std::size_t iter = 0;; ++iter) {
    if (iter > iteration_cap)
      throw InternalError("ideal_generated: closure did not stabilise within " +
                          std::to_string(iteration_cap) + " rounds");
    std::vector<IntVector> rows = s.basis();
    for (const auto& b : s.basis())
      for (std::size_t i = 0; i < r.rank(); ++i) {
        IntVector e = r.generator(i);
        rows.push_back(r.multiply(e, b));
        rows.push_back(r.multiply(b, e));
      }
    Submodule next = Submodule::span(r.rank(), std::move(rows));
    if (next == s) break;
    s = std::move(next);
  }
  return {s, is_ideal(r, s)};
}

/// [S, T]_R: the ideal generated by all s t and t s. Basis products suffice
/// by bilinearity.
inline Ideal huq_commutator_ring(const NARing& r, const Submodule& s, const Submodule& t) {
  std::vector<IntVector> products;
  for (const auto& a : s.basis())
    for (const auto& b : t.basis()) {
      products.push_back(r.multiply(a, b));
      products.push_back(r.multiply(b, a));
    }
  return ideal_generated(r, std::move(products));
}

/// A multiplicatively closed submodule S as a ring on Z^rank(S), in the
/// coordinates of S's canonical basis.
struct Subring {
  NARing ring;
  Submodule carrier;

  IntVector embed(const IntVector& coords) const { return carrier.combine(coords); }
  Submodule embed(const Submodule& t) const {
    std::vector<IntVector> rows;
    for (const auto& b : t.basis()) rows.push_back(embed(b));
    return Submodule::span(carrier.ambient_rank(), std::move(rows));
  }
  Submodule restrict(const Submodule& t) const {
    std::vector<IntVector> rows;
    for (const auto& b : t.basis()) {
      auto c = carrier.coordinates(b);
      if (!c) throw PreconditionError("submodule is not contained in the subring");
      rows.push_back(std::move(*c));
    }
    return Submodule::span(carrier.rank(), std::move(rows));
  }
};

inline Subring subring_as_ring(const NARing& r, const Submodule& s) {
  if (s.ambient_rank() != r.rank()) throw StructuralError("subring_as_ring: rank mismatch");
  const std::size_t k = s.rank();
  std::vector<std::vector<IntVector>> sc(k, std::vector<IntVector>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      auto c = s.coordinates(r.multiply(s.basis()[i], s.basis()[j]));
      if (!c)
        throw PreconditionError("submodule is not multiplicatively closed at basis pair (" +
                                std::to_string(i) + ", " + std::to_string(j) + ")");
      sc[i][j] = std::move(*c);
    }
  return {NARing(k, std::move(sc)), s};
}

/// [K, L] computed inside the subring S and re-embedded into R.
inline Ideal relative_commutator_ring(const NARing& r, const Submodule& s, const Submodule& k,
                                      const Submodule& l) {
  Subring sub = subring_as_ring(r, s);
  Ideal inner = huq_commutator_ring(sub.ring, sub.restrict(k), sub.restrict(l));
  return {sub.embed(inner.submodule), inner.ideal_verified};
}

/// A ring homomorphism acting on coordinates: the image of e_j is column j
/// of the m x n matrix.
class RingHom {
 public:
  RingHom(NARing domain, NARing codomain, std::vector<IntVector> matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.size() != codomain_.rank())
      throw StructuralError("ring hom: matrix must have " + std::to_string(codomain_.rank()) + " rows");
    for (const auto& row : matrix_)
      if (row.size() != domain_.rank())
        throw StructuralError("ring hom: matrix rows must have length " + std::to_string(domain_.rank()));
    for (std::size_t i = 0; i < domain_.rank(); ++i)
      for (std::size_t j = 0; j < domain_.rank(); ++j) {
        IntVector lhs = apply(domain_.structure(i, j));
        IntVector rhs = codomain_.multiply(apply(domain_.generator(i)), apply(domain_.generator(j)));
        if (lhs != rhs)
          throw StructuralError("ring hom: not multiplicative at generator pair (" + std::to_string(i) +
                                ", " + std::to_string(j) + ")");
      }
  }

  const NARing& domain() const { return domain_; }
  const NARing& codomain() const { return codomain_; }
  const std::vector<IntVector>& matrix() const { return matrix_; }

  IntVector apply(const IntVector& v) const {
    if (v.size() != domain_.rank()) throw StructuralError("ring hom: vector length mismatch");
    IntVector out = zero_vector(codomain_.rank());
    for (std::size_t i = 0; i < matrix_.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) out[i] += matrix_[i][j] * v[j];
    return out;
  }

  bool is_surjective() const {
    std::vector<IntVector> cols;
    for (std::size_t j = 0; j < domain_.rank(); ++j) cols.push_back(apply(domain_.generator(j)));
    return Submodule::span(codomain_.rank(), std::move(cols)) == Submodule::whole(codomain_.rank());
  }

 private:
  NARing domain_;
  NARing codomain_;
  std::vector<IntVector> matrix_;
};

inline Submodule kernel_ring_hom(const RingHom& p) {
  return integer_kernel(p.matrix(), p.domain().rank());
}

/// The ideal lattice of R with dot = Huq commutator. Never enumerated.
class IdealContext {
 public:
  using element_type = Submodule;

  explicit IdealContext(NARing r) : r_(std::move(r)) {}

  const NARing& ring() const { return r_; }
  bool leq(const Submodule& a, const Submodule& b) const { return b.includes(a); }
  Submodule join(const Submodule& a, const Submodule& b) const { return join_submodules(a, b); }
  Submodule dot(const Submodule& a, const Submodule& b) const {
    return huq_commutator_ring(r_, a, b).submodule;
  }
  Submodule bottom() const { return Submodule::zero(r_.rank()); }
  Submodule top() const { return Submodule::whole(r_.rank()); }

 private:
  NARing r_;
};

static_assert(CommutatorContext<IdealContext>);

inline IdealContext ideal_context(const NARing& r) { return IdealContext(r); }

/// E on Z^3 with e2 e2 = e3, e3 e1 = e3 and all other generator products
/// zero; B = Z^2 with zero multiplication; p(e1) = b1, p(e2) = b2,
/// p(e3) = 0; N = <e2, e3>; X = <e3>.
struct PaperExample {
  NARing E;
  NARing B;
  RingHom p;
  Submodule N;
  Submodule X;
};

inline PaperExample build_paper_example() {
  auto v = [](int a, int b, int c) { return IntVector{a, b, c}; };
  const IntVector z = v(0, 0, 0);
  NARing e(3, {{z, z, z},  //
               {z, v(0, 0, 1), z},
               {v(0, 0, 1), z, z}});
  NARing b = NARing::zero_ring(2);
  RingHom p(e, b, {IntVector{1, 0, 0}, IntVector{0, 1, 0}});
  Submodule n = Submodule::span(3, {v(0, 1, 0), v(0, 0, 1)});
  Submodule x = Submodule::span(3, {v(0, 0, 1)});
  return {std::move(e), std::move(b), std::move(p), std::move(n), std::move(x)};
}

}  // namespace hallcrit
