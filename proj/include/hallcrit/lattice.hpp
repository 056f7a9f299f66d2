#pragma once

// Finite lattices and semi-lattices: standard constructions, distributivity,
// join-preserving self-maps, and exhaustive enumeration of small
// semi-lattices together with every commutator operation on them.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hallcrit/csl.hpp"
#include "hallcrit/error.hpp"

namespace hallcrit {

/// A finite lattice given by join and meet tables.
class FiniteLattice {
 public:
  FiniteLattice(std::size_t n, std::vector<Id> join, std::vector<Id> meet,
                std::vector<std::string> labels = {})
      : n_(n), join_(std::move(join)), meet_(std::move(meet)), labels_(std::move(labels)) {
    if (n_ == 0) throw StructuralError("lattice: carrier must be non-empty");
    if (join_.size() != n_ * n_ || meet_.size() != n_ * n_)
      throw StructuralError("lattice: tables must be n x n");
    for (std::size_t i = 0; i < n_ * n_; ++i)
      if (join_[i] >= n_ || meet_[i] >= n_)
        throw StructuralError("lattice: table entry out of range at [" +
                              std::to_string(i / n_) + "][" +
                              std::to_string(i % n_) + "]");
    if (!labels_.empty() && labels_.size() != n_)
      throw StructuralError("lattice: label count does not match carrier");
    validate();
    bottom_ = 0;
    top_ = 0;
    for (Id a = 1; a < n_; ++a) {
      bottom_ = this->meet(bottom_, a);
      top_ = this->join(top_, a);
    }
  }

  std::size_t size() const { return n_; }
  Id join(Id a, Id b) const { return join_[a * n_ + b]; }
  Id meet(Id a, Id b) const { return meet_[a * n_ + b]; }
  bool leq(Id a, Id b) const { return join(a, b) == b; }
  Id bottom() const { return bottom_; }
  Id top() const { return top_; }
  const std::vector<Id>& join_table() const { return join_; }
  const std::vector<Id>& meet_table() const { return meet_; }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Element carrying `label`, for lattices built with labels.
  Id id_of(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw PreconditionError("no element labelled " + label);
    return static_cast<Id>(it - labels_.begin());
  }

 private:
  void validate() const {
    auto fail = [](const std::string& law, Id a, Id b) {
      throw StructuralError("lattice: " + law + " fails at (" + std::to_string(a) +
                            ", " + std::to_string(b) + ")");
    };
    for (Id a = 0; a < n_; ++a)
      for (Id b = 0; b < n_; ++b) {
        if (join(a, b) != join(b, a)) fail("join commutativity", a, b);
        if (meet(a, b) != meet(b, a)) fail("meet commutativity", a, b);
        if (join(a, meet(a, b)) != a) fail("absorption", a, b);
        if (meet(a, join(a, b)) != a) fail("absorption", a, b);
        for (Id c = 0; c < n_; ++c) {
          if (join(a, join(b, c)) != join(join(a, b), c)) fail("join associativity", a, b);
          if (meet(a, meet(b, c)) != meet(meet(a, b), c)) fail("meet associativity", a, b);
        }
      }
  }

  std::size_t n_;
  std::vector<Id> join_;
  std::vector<Id> meet_;
  std::vector<std::string> labels_;
  Id bottom_ = 0;
  Id top_ = 0;
};

namespace detail {

template <class JoinFn, class MeetFn>
FiniteLattice lattice_from_ops(std::size_t n, JoinFn j, MeetFn m,
                               std::vector<std::string> labels) {
  std::vector<Id> join(n * n), meet(n * n);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) {
      join[a * n + b] = j(a, b);
      meet[a * n + b] = m(a, b);
    }
  return FiniteLattice(n, std::move(join), std::move(meet), std::move(labels));
}

}  // namespace detail

/// Divisors of `n` under divisibility; element ids follow increasing value
/// and labels are the decimal divisors.
inline FiniteLattice divisor_lattice(std::uint64_t n) {
  if (n == 0) throw PreconditionError("divisor_lattice: n must be positive");
  std::vector<std::uint64_t> divs;
  for (std::uint64_t d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  auto index = [&](std::uint64_t v) {
    return static_cast<Id>(std::lower_bound(divs.begin(), divs.end(), v) - divs.begin());
  };
  std::vector<std::string> labels;
  for (auto d : divs) labels.push_back(std::to_string(d));
  return detail::lattice_from_ops(
      divs.size(),
      [&](Id a, Id b) { return index(std::lcm(divs[a], divs[b])); },
      [&](Id a, Id b) { return index(std::gcd(divs[a], divs[b])); },
      std::move(labels));
}

/// Subsets of a k-element set; element id is the subset bitmask.
inline FiniteLattice boolean_lattice(unsigned k) {
  if (k > 6) throw CapError("boolean_lattice: at most 6 atoms");
  const std::size_t n = std::size_t{1} << k;
  return detail::lattice_from_ops(
      n, [](Id a, Id b) { return a | b; }, [](Id a, Id b) { return a & b; }, {});
}

/// 0 < 1 < ... < k-1.
inline FiniteLattice chain_lattice(std::size_t k) {
  return detail::lattice_from_ops(
      k, [](Id a, Id b) { return std::max(a, b); },
      [](Id a, Id b) { return std::min(a, b); }, {});
}

/// M3: bottom 0, atoms 1, 2, 3, top 4.
inline FiniteLattice diamond_m3() {
  auto j = [](Id a, Id b) -> Id {
    if (a == b || b == 0) return a;
    if (a == 0) return b;
    return 4;
  };
  auto m = [](Id a, Id b) -> Id {
    if (a == b || b == 4) return a;
    if (a == 4) return b;
    return 0;
  };
  return detail::lattice_from_ops(5, j, m, {});
}

/// N5: 0 < 1 < 2 < 4 and 0 < 3 < 4 with 3 incomparable to 1 and 2.
inline FiniteLattice pentagon_n5() {
  // Explicit order: leq[a][b].
  static constexpr bool le[5][5] = {{1, 1, 1, 1, 1},
                                    {0, 1, 1, 0, 1},
                                    {0, 0, 1, 0, 1},
                                    {0, 0, 0, 1, 1},
                                    {0, 0, 0, 0, 1}};
  auto j = [](Id a, Id b) -> Id {
    for (Id u : {0u, 1u, 2u, 3u, 4u})
      if (le[a][u] && le[b][u]) {
        bool least = true;
        for (Id v = 0; v < 5; ++v)
          if (le[a][v] && le[b][v] && !le[u][v]) least = false;
        if (least) return u;
      }
    return 4;
  };
  auto m = [](Id a, Id b) -> Id {
    for (Id u : {4u, 3u, 2u, 1u, 0u})
      if (le[u][a] && le[u][b]) {
        bool greatest = true;
        for (Id v = 0; v < 5; ++v)
          if (le[v][a] && le[v][b] && !le[v][u]) greatest = false;
        if (greatest) return u;
      }
    return 0;
  };
  return detail::lattice_from_ops(5, j, m, {});
}

/// a ^ (b v c) = (a ^ b) v (a ^ c); witness (a, b, c) on failure.
inline LawCheck check_distributive(const FiniteLattice& l) {
  for (Id a = 0; a < l.size(); ++a)
    for (Id b = 0; b < l.size(); ++b)
      for (Id c = 0; c < l.size(); ++c)
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)))
          return {false, {a, b, c}};
  return {};
}

class NotDistributive : public PreconditionError {
 public:
  explicit NotDistributive(std::array<Id, 3> w)
      : PreconditionError("lattice is not distributive at (" + std::to_string(w[0]) + ", " +
                          std::to_string(w[1]) + ", " + std::to_string(w[2]) + ")"),
        witness(w) {}
  std::array<Id, 3> witness;
};

/// The lattice with dot = meet, an associative commutator lattice.
inline FiniteCsl csl_from_distributive_lattice(const FiniteLattice& l) {
  LawCheck d = check_distributive(l);
  if (!d.holds) throw NotDistributive({d.witness[0], d.witness[1], d.witness[2]});
  return FiniteCsl(l.size(), l.join_table(), l.meet_table(), l.bottom());
}

/// Non-bottom elements with exactly one lower cover, in increasing id order.
inline std::vector<Id> join_irreducibles(const FiniteLattice& l) {
  std::vector<Id> out;
  for (Id j = 0; j < l.size(); ++j) {
    if (j == l.bottom()) continue;
    // j is join irreducible iff the join of everything strictly below j is
    // strictly below j.
    Id below = l.bottom();
    for (Id a = 0; a < l.size(); ++a)
      if (a != j && l.leq(a, j)) below = l.join(below, a);
    if (below != j) out.push_back(j);
  }
  return out;
}

/// Every join-preserving self-map (with f(bottom) = bottom), built by
/// assigning monotone values to the join irreducibles and extending by
/// joins. Extensions that fail to preserve joins (possible only on
/// non-distributive lattices) are discarded.
inline std::vector<FiniteMap> enumerate_join_preserving_maps(const FiniteLattice& l,
                                                             std::size_t cap = 1'000'000) {
  std::vector<Id> irr = join_irreducibles(l);
  // Linear extension: sort by number of elements below.
  auto height = [&](Id a) {
    std::size_t h = 0;
    for (Id b = 0; b < l.size(); ++b) h += l.leq(b, a);
    return h;
  };
  std::stable_sort(irr.begin(), irr.end(),
                   [&](Id a, Id b) { return height(a) < height(b); });

  std::vector<FiniteMap> out;
  std::vector<Id> value(irr.size());
  std::size_t visited = 0;
  const FiniteCsl as_csl(l.size(), l.join_table(), l.meet_table(), l.bottom());

  auto emit = [&] {
    FiniteMap f(l.size(), l.bottom());
    for (Id x = 0; x < l.size(); ++x)
      for (std::size_t i = 0; i < irr.size(); ++i)
        if (l.leq(irr[i], x)) f[x] = l.join(f[x], value[i]);
    if (preserves_joins(as_csl, f).holds) out.push_back(std::move(f));
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (++visited > cap)
      throw CapError("join-preserving map enumeration exceeds cap " + std::to_string(cap));
    if (i == irr.size()) {
      emit();
      return;
    }
    for (Id v = 0; v < l.size(); ++v) {
      bool monotone = true;
      for (std::size_t k = 0; k < i && monotone; ++k)
        if (l.leq(irr[k], irr[i]) && !l.leq(value[k], v)) monotone = false;
      if (!monotone) continue;
      value[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct DerivationCriterionReport {
  std::size_t join_preserving = 0;
  std::size_t derivations = 0;
  std::size_t bounded = 0;
  bool equivalence_holds = true;
  /// First join-preserving map on which "derivation" and "bounded by the
  /// identity" disagree.
  std::optional<FiniteMap> counterexample;
};

/// On a distributive lattice with dot = meet, a join-preserving map is a
/// derivation iff f(x) <= x for all x. Checked over every such map.
inline DerivationCriterionReport check_distributive_derivation_criterion(
    const FiniteLattice& l, std::size_t cap = 1'000'000) {
  const FiniteCsl csl = csl_from_distributive_lattice(l);
  DerivationCriterionReport r;
  for (const auto& f : enumerate_join_preserving_maps(l, cap)) {
    ++r.join_preserving;
    bool der = is_derivation(csl, f).holds;
    bool bnd = bounded_by_identity(csl, f).holds;
    r.derivations += der;
    r.bounded += bnd;
    if (der != bnd && r.equivalence_holds) {
      r.equivalence_holds = false;
      r.counterexample = f;
    }
  }
  return r;
}

// --- small semi-lattices ----------------------------------------------------

/// A finite join semi-lattice (not necessarily with a least element).
struct JoinSemilattice {
  std::size_t n = 0;
  std::vector<Id> join;  // n x n
  std::optional<Id> bottom;

  Id join_of(Id a, Id b) const { return join[a * n + b]; }
  bool leq(Id a, Id b) const { return join_of(a, b) == b; }
};

namespace detail {

inline std::vector<Id> relabel(const std::vector<Id>& join, std::size_t n,
                               const std::vector<Id>& perm) {
  std::vector<Id> out(n * n);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) out[perm[a] * n + perm[b]] = perm[join[a * n + b]];
  return out;
}

}  // namespace detail

/// Every join semi-lattice on n elements up to isomorphism (n <= 5), each
/// in the lexicographically least labelling of its join table.
inline std::vector<JoinSemilattice> enumerate_join_semilattices(std::size_t n) {
  if (n == 0 || n > 5) throw CapError("enumerate_join_semilattices: 1 <= n <= 5");
  // Strict relations among ordered pairs a != b.
  std::vector<std::pair<Id, Id>> pairs;
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b)
      if (a != b) pairs.emplace_back(a, b);
  std::set<std::vector<Id>> seen;
  std::vector<Id> perm(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
    std::vector<char> le(n * n, 0);
    for (Id a = 0; a < n; ++a) le[a * n + a] = 1;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      if (mask >> p & 1) le[pairs[p].first * n + pairs[p].second] = 1;
    bool ok = true;
    for (Id a = 0; a < n && ok; ++a)
      for (Id b = 0; b < n && ok; ++b) {
        if (a != b && le[a * n + b] && le[b * n + a]) ok = false;
        for (Id c = 0; c < n && ok; ++c)
          if (le[a * n + b] && le[b * n + c] && !le[a * n + c]) ok = false;
      }
    if (!ok) continue;
    std::vector<Id> join(n * n);
    for (Id a = 0; a < n && ok; ++a)
      for (Id b = 0; b < n && ok; ++b) {
        std::optional<Id> lub;
        for (Id u = 0; u < n; ++u) {
          if (!le[a * n + u] || !le[b * n + u]) continue;
          bool least = true;
          for (Id v = 0; v < n; ++v)
            if (le[a * n + v] && le[b * n + v] && !le[u * n + v]) least = false;
          if (least) lub = u;
        }
        if (!lub) ok = false;
        else join[a * n + b] = *lub;
      }
    if (!ok) continue;
    std::iota(perm.begin(), perm.end(), Id{0});
    std::vector<Id> best;
    do {
      auto r = detail::relabel(join, n, perm);
      if (best.empty() || r < best) best = std::move(r);
    } while (std::next_permutation(perm.begin(), perm.end()));
    seen.insert(std::move(best));
  }
  std::vector<JoinSemilattice> out;
  for (const auto& join : seen) {
    JoinSemilattice s{n, join, std::nullopt};
    for (Id b = 0; b < n; ++b) {
      bool least = true;
      for (Id a = 0; a < n; ++a)
        if (!s.leq(b, a)) least = false;
      if (least) s.bottom = b;
    }
    out.push_back(std::move(s));
  }
  return out;
}

/// Every dot table making the semi-lattice a commutator semi-lattice
/// (commutative, a.b <= b, distributive over joins), by backtracking over
/// unordered pairs with values restricted to common lower bounds.
inline std::vector<std::vector<Id>> enumerate_commutator_operations(const JoinSemilattice& s) {
  const std::size_t n = s.n;
  std::vector<std::pair<Id, Id>> cells;
  for (Id a = 0; a < n; ++a)
    for (Id b = a; b < n; ++b) cells.emplace_back(a, b);
  std::vector<Id> dot(n * n, 0);
  std::vector<char> set(n * n, 0);
  std::vector<std::vector<Id>> out;

  // Distributivity instances that become decidable once (a, b) is set.
  auto consistent = [&](Id a, Id b) {
    auto check = [&](Id x, Id y, Id z) {
      Id yz = s.join_of(y, z);
      if (!set[x * n + yz] || !set[x * n + y] || !set[x * n + z]) return true;
      return dot[x * n + yz] == s.join_of(dot[x * n + y], dot[x * n + z]);
    };
    for (Id x : {a, b}) {
      Id other = x == a ? b : a;
      for (Id y = 0; y < n; ++y)
        for (Id z = 0; z < n; ++z) {
          if ((y == other || z == other || s.join_of(y, z) == other) && !check(x, y, z))
            return false;
        }
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == cells.size()) {
      out.push_back(dot);
      return;
    }
    auto [a, b] = cells[i];
    for (Id v = 0; v < n; ++v) {
      if (!s.leq(v, a) || !s.leq(v, b)) continue;
      dot[a * n + b] = dot[b * n + a] = v;
      set[a * n + b] = set[b * n + a] = 1;
      if (consistent(a, b)) self(self, i + 1);
      set[a * n + b] = set[b * n + a] = 0;
    }
  };
  rec(rec, 0);
  return out;
}

/// Wraps a semi-lattice with bottom and a dot table as a FiniteCsl.
inline FiniteCsl make_csl(const JoinSemilattice& s, std::vector<Id> dot) {
  if (!s.bottom) throw PreconditionError("semi-lattice has no least element");
  return FiniteCsl(s.n, s.join, std::move(dot), *s.bottom);
}

}  // namespace hallcrit
