#pragma once

// Built-in catalog: every group of order at most 16 up to isomorphism
// (42 groups), each built from a small presentation-style construction.
// Dihedral groups are named by the polygon, so D4 has order 8.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hallcrit/error.hpp"
#include "hallcrit/group.hpp"

namespace hallcrit {

namespace detail {

inline std::string power(const std::string& sym, std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return sym;
  return sym + "^" + std::to_string(k);
}

inline std::string word(std::string a, const std::string& b) {
  a += b;
  return a.empty() ? "e" : a;
}

}  // namespace detail

/// Closure of `gens` under `mul`, numbered in breadth-first order from the
/// identity.
template <class T, class Mul>
FiniteGroup group_from_generators(const T& identity, const std::vector<T>& gens, Mul mul) {
  std::vector<T> elems{identity};
  std::map<T, Id> index{{identity, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head)
    for (const auto& s : gens) {
      T y = mul(elems[head], s);
      if (index.emplace(y, static_cast<Id>(elems.size())).second) elems.push_back(y);
      if (elems.size() > 4096) throw CapError("group_from_generators: more than 4096 elements");
    }
  std::vector<std::vector<Id>> table(elems.size(), std::vector<Id>(elems.size()));
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j) table[i][j] = index.at(mul(elems[i], elems[j]));
  return FiniteGroup(std::move(table));
}

inline FiniteGroup cyclic_group(std::size_t n) {
  if (n == 0) throw PreconditionError("cyclic_group: n must be positive");
  std::vector<std::vector<Id>> t(n, std::vector<Id>(n));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(detail::word(detail::power("a", i), ""));
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<Id>((i + j) % n);
  }
  return FiniteGroup(std::move(t), std::move(names));
}

/// G x H with (g, h) numbered g |H| + h.
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t n = g.order() * h.order();
  std::vector<std::vector<Id>> t(n, std::vector<Id>(n));
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) {
      Id ga = a / h.order(), ha = a % h.order();
      Id gb = b / h.order(), hb = b % h.order();
      t[a][b] = static_cast<Id>(g.mul(ga, gb) * h.order() + h.mul(ha, hb));
    }
  std::vector<std::string> names;
  if (!g.names().empty() && !h.names().empty())
    for (Id a = 0; a < n; ++a)
      names.push_back("(" + g.names()[a / h.order()] + "," + h.names()[a % h.order()] + ")");
  return FiniteGroup(std::move(t), std::move(names));
}

/// C_m x| C_n where the generator b of C_n acts by a -> a^r. Element
/// a^i b^j is numbered j m + i.
inline FiniteGroup semidirect_cyclic(std::size_t m, std::size_t n, std::size_t r) {
  std::size_t rn = 1;
  for (std::size_t k = 0; k < n; ++k) rn = rn * r % m;
  if (rn != 1 % m) throw PreconditionError("semidirect_cyclic: r^n must be 1 mod m");
  std::vector<std::size_t> rpow(n, 1);
  for (std::size_t k = 1; k < n; ++k) rpow[k] = rpow[k - 1] * r % m;
  const std::size_t order = m * n;
  std::vector<std::vector<Id>> t(order, std::vector<Id>(order));
  std::vector<std::string> names;
  for (std::size_t x = 0; x < order; ++x) {
    std::size_t i1 = x % m, j1 = x / m;
    names.push_back(detail::word(detail::power("a", i1), detail::power("b", j1)));
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t i2 = y % m, j2 = y / m;
      std::size_t i = (i1 + rpow[j1] * i2) % m;
      std::size_t j = (j1 + j2) % n;
      t[x][y] = static_cast<Id>(j * m + i);
    }
  }
  return FiniteGroup(std::move(t), std::move(names));
}

/// H x| C_n where the generator of C_n acts by the automorphism `phi`
/// (given as a permutation of H's ids). (h, k) is numbered k |H| + h.
inline FiniteGroup semidirect_product(const FiniteGroup& h, std::size_t n,
                                      const std::vector<Id>& phi) {
  const std::size_t m = h.order();
  if (phi.size() != m) throw PreconditionError("semidirect_product: phi has wrong length");
  for (Id a = 0; a < m; ++a)
    for (Id b = 0; b < m; ++b)
      if (phi[h.mul(a, b)] != h.mul(phi[a], phi[b]))
        throw PreconditionError("semidirect_product: phi is not a homomorphism");
  std::vector<std::vector<Id>> phipow(n, std::vector<Id>(m));
  for (Id a = 0; a < m; ++a) phipow[0][a] = a;
  for (std::size_t k = 1; k < n; ++k)
    for (Id a = 0; a < m; ++a) phipow[k][a] = phi[phipow[k - 1][a]];
  for (Id a = 0; a < m; ++a)
    if (phi[phipow[n - 1][a]] != a) throw PreconditionError("semidirect_product: phi^n != 1");
  const std::size_t order = m * n;
  std::vector<std::vector<Id>> t(order, std::vector<Id>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      Id h1 = x % m, k1 = x / m, h2 = y % m, k2 = y / m;
      t[x][y] = static_cast<Id>(((k1 + k2) % n) * m + h.mul(h1, phipow[k1][h2]));
    }
  return FiniteGroup(std::move(t));
}

/// Dicyclic group of order 4n: <a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>.
/// Element a^k x^j is numbered j 2n + k. Dic_2 = Q8, Dic_4 = Q16.
inline FiniteGroup dicyclic_group(std::size_t n) {
  const std::size_t m = 2 * n;
  std::vector<std::vector<Id>> t(2 * m, std::vector<Id>(2 * m));
  std::vector<std::string> names;
  for (std::size_t u = 0; u < 2 * m; ++u) {
    std::size_t k1 = u % m, j1 = u / m;
    names.push_back(detail::word(detail::power("a", k1), detail::power("x", j1)));
    for (std::size_t v = 0; v < 2 * m; ++v) {
      std::size_t k2 = v % m, j2 = v / m;
      std::size_t k, j;
      if (j1 == 0) {
        k = (k1 + k2) % m;
        j = j2;
      } else if (j2 == 0) {  // a^k1 x a^k2 = a^(k1-k2) x
        k = (k1 + m - k2) % m;
        j = 1;
      } else {  // a^k1 x a^k2 x = a^(k1-k2) x^2 = a^(k1-k2+n)
        k = (k1 + m - k2 + n) % m;
        j = 0;
      }
      t[u][v] = static_cast<Id>(j * m + k);
    }
  }
  return FiniteGroup(std::move(t), std::move(names));
}

inline FiniteGroup dihedral_group(std::size_t n) { return semidirect_cyclic(n, 2, n - 1); }

/// A4 as even permutations of {0, 1, 2, 3}.
inline FiniteGroup alternating_a4() {
  using Perm = std::array<int, 4>;
  auto compose = [](const Perm& p, const Perm& q) {  // p then q
    Perm r{};
    for (int i = 0; i < 4; ++i) r[i] = q[p[i]];
    return r;
  };
  return group_from_generators(Perm{0, 1, 2, 3}, {Perm{1, 2, 0, 3}, Perm{1, 0, 3, 2}}, compose);
}

/// The Pauli group generated by X, Z and iI, as 2x2 matrices over F_5
/// (where 2 plays the role of i).
inline FiniteGroup pauli_group() {
  using Mat = std::array<int, 4>;
  auto mul = [](const Mat& a, const Mat& b) {
    return Mat{(a[0] * b[0] + a[1] * b[2]) % 5, (a[0] * b[1] + a[1] * b[3]) % 5,
               (a[2] * b[0] + a[3] * b[2]) % 5, (a[2] * b[1] + a[3] * b[3]) % 5};
  };
  return group_from_generators(Mat{1, 0, 0, 1}, {Mat{0, 1, 1, 0}, Mat{1, 0, 0, 4}, Mat{2, 0, 0, 2}},
                               mul);
}

/// C2^2 x| C4 with the generator of C4 swapping the two C2 factors.
inline FiniteGroup klein_by_c4() {
  FiniteGroup v = direct_product(cyclic_group(2), cyclic_group(2));
  // ids: (x, y) -> 2x + y; swap x and y.
  return semidirect_product(v, 4, {0, 2, 1, 3});
}

struct CatalogEntry {
  std::string name;
  FiniteGroup group;
};

/// All 42 isomorphism types of order <= 16, ordered by order.
inline const std::vector<CatalogEntry>& group_catalog() {
  static const std::vector<CatalogEntry> catalog = [] {
    auto c = cyclic_group;
    auto x = [](const FiniteGroup& a, const FiniteGroup& b) { return direct_product(a, b); };
    std::vector<CatalogEntry> v;
    v.push_back({"C1", c(1)});
    v.push_back({"C2", c(2)});
    v.push_back({"C3", c(3)});
    v.push_back({"C4", c(4)});
    v.push_back({"C2xC2", x(c(2), c(2))});
    v.push_back({"C5", c(5)});
    v.push_back({"C6", c(6)});
    v.push_back({"S3", dihedral_group(3)});
    v.push_back({"C7", c(7)});
    v.push_back({"C8", c(8)});
    v.push_back({"C4xC2", x(c(4), c(2))});
    v.push_back({"C2^3", x(x(c(2), c(2)), c(2))});
    v.push_back({"D4", dihedral_group(4)});
    v.push_back({"Q8", dicyclic_group(2)});
    v.push_back({"C9", c(9)});
    v.push_back({"C3xC3", x(c(3), c(3))});
    v.push_back({"C10", c(10)});
    v.push_back({"D5", dihedral_group(5)});
    v.push_back({"C11", c(11)});
    v.push_back({"C12", c(12)});
    v.push_back({"C6xC2", x(c(6), c(2))});
    v.push_back({"A4", alternating_a4()});
    v.push_back({"D6", dihedral_group(6)});
    v.push_back({"Dic3", dicyclic_group(3)});
    v.push_back({"C13", c(13)});
    v.push_back({"C14", c(14)});
    v.push_back({"D7", dihedral_group(7)});
    v.push_back({"C15", c(15)});
    v.push_back({"C16", c(16)});
    v.push_back({"C8xC2", x(c(8), c(2))});
    v.push_back({"C4xC4", x(c(4), c(4))});
    v.push_back({"C4xC2^2", x(x(c(4), c(2)), c(2))});
    v.push_back({"C2^4", x(x(x(c(2), c(2)), c(2)), c(2))});
    v.push_back({"D8", dihedral_group(8)});
    v.push_back({"Q16", dicyclic_group(4)});
    v.push_back({"SD16", semidirect_cyclic(8, 2, 3)});
    v.push_back({"M16", semidirect_cyclic(8, 2, 5)});
    v.push_back({"C4:C4", semidirect_cyclic(4, 4, 3)});
    v.push_back({"C2^2:C4", klein_by_c4()});
    v.push_back({"D4xC2", x(dihedral_group(4), c(2))});
    v.push_back({"Q8xC2", x(dicyclic_group(2), c(2))});
    v.push_back({"Pauli", pauli_group()});
    return v;
  }();
  return catalog;
}

inline const FiniteGroup& catalog_group(const std::string& name) {
  for (const auto& e : group_catalog())
    if (e.name == name) return e.group;
  throw PreconditionError("no catalog group named '" + name + "'");
}

}  // namespace hallcrit
