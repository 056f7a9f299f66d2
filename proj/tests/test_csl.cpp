#include <gtest/gtest.h>

#include <numeric>

#include "hallcrit/csl.hpp"
#include "hallcrit/lattice.hpp"
#include "oracles.hpp"

using namespace hallcrit;

namespace {

FiniteCsl chain(std::size_t k, std::vector<Id> dot) {
  std::vector<Id> join(k * k);
  for (Id a = 0; a < k; ++a)
    for (Id b = 0; b < k; ++b) join[a * k + b] = std::max(a, b);
  return FiniteCsl(k, join, std::move(dot), 0);
}

FiniteCsl divisors_csl(std::uint64_t n) { return csl_from_distributive_lattice(divisor_lattice(n)); }

/// Every commutator semi-lattice on at most `n` elements, from the enumerator.
std::vector<FiniteCsl> small_csls(std::size_t max_n) {
  std::vector<FiniteCsl> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (const auto& s : enumerate_join_semilattices(n)) {
      if (!s.bottom) continue;
      for (auto& d : enumerate_commutator_operations(s)) out.push_back(make_csl(s, d));
    }
  return out;
}

// Direct evaluation of each axiom, for cross-checking the report.
bool oracle_b(const FiniteCsl& x) {
  for (Id a = 0; a < x.size(); ++a)
    for (Id b = 0; b < x.size(); ++b)
      if (x.dot(a, b) != x.dot(b, a)) return false;
  return true;
}
bool oracle_c(const FiniteCsl& x) {
  for (Id a = 0; a < x.size(); ++a)
    for (Id b = 0; b < x.size(); ++b)
      if (!x.leq(x.dot(a, b), b)) return false;
  return true;
}
bool oracle_d(const FiniteCsl& x) {
  for (Id a = 0; a < x.size(); ++a)
    for (Id b = 0; b < x.size(); ++b)
      for (Id c = 0; c < x.size(); ++c)
        if (x.dot(a, x.join(b, c)) != x.join(x.dot(a, b), x.dot(a, c))) return false;
  return true;
}

}  // namespace

TEST(CslAxioms, DivisorLatticeOf12WithGcdPasses) {
  auto r = check_csl_axioms(divisors_csl(12));
  EXPECT_TRUE(r.all_hold());
  ASSERT_EQ(r.axioms.size(), 4u);
  for (char a : {'a', 'b', 'c', 'd'}) EXPECT_TRUE(r.at(a).holds) << a;
}

TEST(CslAxioms, TwoChainWithConstantBottomPasses) {
  EXPECT_TRUE(check_csl_axioms(chain(2, {0, 0, 0, 0})).all_hold());
}

TEST(CslAxioms, MalformedTablesAreStructuralErrors) {
  EXPECT_THROW(FiniteCsl::from_rows({{0, 1}, {1}}, {{0, 0}, {0, 0}}, 0), StructuralError);
  EXPECT_THROW(FiniteCsl(2, {0, 1, 1, 1}, {0, 0, 0, 5}, 0), StructuralError);
  EXPECT_THROW(FiniteCsl(2, {0, 1, 1, 1}, {0, 0, 0, 0}, 2), StructuralError);
  EXPECT_THROW(FiniteCsl(2, {0, 1, 1}, {0, 0, 0, 0}, 0), StructuralError);
}

TEST(CslAxioms, ReportAgreesWithDirectEvaluationOnEveryCommutativeTableOnThe3Chain) {
  // All 3^6 commutative dot tables on 0 < 1 < 2.
  std::size_t c_failures_with_b_and_d = 0;
  std::vector<Id> upper(6);
  for (int code = 0; code < 729; ++code) {
    int v = code;
    for (auto& u : upper) u = static_cast<Id>(v % 3), v /= 3;
    std::vector<Id> dot(9);
    int k = 0;
    for (Id a = 0; a < 3; ++a)
      for (Id b = a; b < 3; ++b) dot[a * 3 + b] = dot[b * 3 + a] = upper[k++];
    auto x = chain(3, dot);
    auto r = check_csl_axioms(x);
    EXPECT_TRUE(r.at('a').holds);
    EXPECT_EQ(r.at('b').holds, oracle_b(x));
    EXPECT_EQ(r.at('c').holds, oracle_c(x));
    EXPECT_EQ(r.at('d').holds, oracle_d(x));
    if (!r.at('c').holds) {
      const auto& w = r.at('c').witness;
      ASSERT_EQ(w.size(), 2u);
      EXPECT_FALSE(x.leq(x.dot(w[0], w[1]), w[1]));
      // Lexicographically least witness.
      for (Id a = 0; a < 3; ++a)
        for (Id b = 0; b < 3; ++b)
          if (std::make_pair(a, b) < std::make_pair(w[0], w[1])) EXPECT_TRUE(x.leq(x.dot(a, b), b));
      if (oracle_d(x)) ++c_failures_with_b_and_d;
    }
  }
  // Tables that are commutative and distributive yet violate a.b <= b exist.
  EXPECT_GT(c_failures_with_b_and_d, 0u);
}

TEST(CslAxioms, DetectsNonSemilatticeJoin) {
  // join not idempotent at 1.
  FiniteCsl x(2, {0, 1, 1, 0}, {0, 0, 0, 0}, 0);
  auto r = check_csl_axioms(x);
  EXPECT_FALSE(r.at('a').holds);
  EXPECT_EQ(r.at('a').witness, std::vector<Id>{1});
}

TEST(CslAxioms, LargeCarrierNeedsSamplingFlag) {
  const std::size_t n = kExhaustiveCap + 1;
  std::vector<Id> dot(n * n, 0);
  auto x = chain(n, dot);
  EXPECT_THROW(check_jacobi(x), CapError);
  CheckOptions o;
  o.samples = 1000;
  EXPECT_TRUE(check_jacobi(x, o).holds);
  EXPECT_TRUE(check_csl_axioms(x, o).all_hold());
}

TEST(CslAxioms, SampledWitnessIsReproducibleForAFixedSeed) {
  const std::size_t n = kExhaustiveCap + 8;
  std::vector<Id> dot(n * n, 0);
  for (Id a = 0; a < n; ++a)
    for (Id b = 0; b < n; ++b) dot[a * n + b] = std::min<Id>(a, b) == 0 ? 0 : std::max(a, b);  // violates a.b <= b
  auto x = chain(n, dot);
  CheckOptions o;
  o.samples = 5000;
  o.seed = 42;
  auto r1 = check_csl_axioms(x, o), r2 = check_csl_axioms(x, o);
  EXPECT_FALSE(r1.at('c').holds);
  EXPECT_EQ(r1.at('c').witness, r2.at('c').witness);
}

TEST(Jacobi, DivisorLatticeOf30Holds) { EXPECT_TRUE(check_jacobi(divisors_csl(30)).holds); }

TEST(Jacobi, SomeFourElementCommutatorSemilatticeViolatesJacobi) {
  bool found = false;
  for (const auto& s : enumerate_join_semilattices(4)) {
    if (!s.bottom) continue;
    for (const auto& d : enumerate_commutator_operations(s)) {
      auto x = make_csl(s, d);
      auto j = check_jacobi(x);
      EXPECT_EQ(j.holds, oracle::jacobi(x));
      if (j.holds) continue;
      found = true;
      auto [a, b, c] = std::array<Id, 3>{j.witness[0], j.witness[1], j.witness[2]};
      EXPECT_FALSE(x.leq(x.dot(a, x.dot(b, c)), x.join(x.dot(x.dot(a, b), c), x.dot(b, x.dot(a, c)))));
      auto eq = check_inner_derivation_equivalence(x);
      EXPECT_FALSE(eq.jacobi);
      EXPECT_FALSE(eq.all_inner_derivations);
      EXPECT_TRUE(eq.equivalent());
    }
  }
  EXPECT_TRUE(found);
}

TEST(Associative, DivisorLatticeAndConstantBottom) {
  EXPECT_TRUE(check_associative(divisors_csl(12)).holds);
  EXPECT_TRUE(check_associative(chain(4, std::vector<Id>(16, 0))).holds);
}

TEST(Associative, WitnessIsAGenuineViolation) {
  for (const auto& x : small_csls(4)) {
    auto r = check_associative(x);
    if (r.holds) continue;
    Id a = r.witness[0], b = r.witness[1], c = r.witness[2];
    EXPECT_NE(x.dot(a, x.dot(b, c)), x.dot(x.dot(a, b), c));
  }
}

TEST(Derivations, IdentityAndConstantBottomAreDerivations) {
  for (const auto& x : small_csls(4)) {
    FiniteMap id(x.size()), zero(x.size(), x.bottom());
    std::iota(id.begin(), id.end(), Id{0});
    EXPECT_TRUE(is_derivation(x, id).holds);
    EXPECT_TRUE(is_derivation(x, zero).holds);
  }
}

TEST(Derivations, AgreesWithDirectDefinitionOnAllMapsOfSmallInstances) {
  for (const auto& x : small_csls(3))
    oracle::for_each_map(x.size(), [&](const std::vector<Id>& f) {
      auto d = is_derivation(x, f);
      EXPECT_EQ(d.holds, oracle::is_derivation(x, f));
      EXPECT_EQ(d.failure == DerivationFailure::NotJoinPreserving, !oracle::is_join_preserving(x, f));
    });
}

TEST(Derivations, FailureReasonsAreDistinguished) {
  auto x = divisors_csl(12);
  // Not join preserving: moves bottom.
  FiniteMap bad(x.size(), x.top());
  auto r = is_derivation(x, bad);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.failure, DerivationFailure::NotJoinPreserving);
  // Join preserving but above the identity on the 3-chain with dot = meet.
  auto three = chain(3, {0, 0, 0, 0, 1, 1, 0, 1, 2});
  r = is_derivation(three, FiniteMap{0, 2, 2});
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.failure, DerivationFailure::LeibnizViolated);
  EXPECT_EQ(r.witness, (std::vector<Id>{1, 1}));
}

TEST(InnerDerivation, BottomGivesConstantBottom) {
  auto x = divisors_csl(12);
  EXPECT_EQ(inner_derivation(x, x.bottom()), FiniteMap(x.size(), x.bottom()));
}

TEST(InnerDerivation, SixInDivisorsOf12IsGcdWithSix) {
  auto l = divisor_lattice(12);
  auto x = csl_from_distributive_lattice(l);
  auto f = inner_derivation(x, l.id_of("6"));
  for (Id y = 0; y < x.size(); ++y) {
    auto v = std::stoull(l.labels()[y]);
    EXPECT_EQ(l.labels()[f[y]], std::to_string(std::gcd<std::uint64_t>(6, v)));
  }
  EXPECT_THROW(inner_derivation(x, 99), PreconditionError);
}

TEST(InnerDerivation, EquivalenceWithJacobiOnEveryGeneratedInstance) {
  for (const auto& x : small_csls(5)) {
    auto eq = check_inner_derivation_equivalence(x);
    EXPECT_TRUE(eq.equivalent());
    EXPECT_TRUE(eq.order_preserving);
    EXPECT_EQ(eq.jacobi, oracle::jacobi(x));
  }
  auto d30 = check_inner_derivation_equivalence(divisors_csl(30));
  EXPECT_TRUE(d30.jacobi && d30.all_inner_derivations);
}

TEST(SufficientCondition, IdentityConstantAndGcdWithSix) {
  auto l = divisor_lattice(12);
  auto x = csl_from_distributive_lattice(l);
  FiniteMap id(x.size());
  std::iota(id.begin(), id.end(), Id{0});
  auto r = check_derivation_sufficient(x, id);
  EXPECT_TRUE(r.applies && r.derivation);
  r = check_derivation_sufficient(x, FiniteMap(x.size(), x.bottom()));
  EXPECT_TRUE(r.applies && r.derivation);

  auto g6 = inner_derivation(x, l.id_of("6"));
  ASSERT_TRUE(oracle::is_join_preserving(x, g6));
  r = check_derivation_sufficient(x, g6);
  EXPECT_TRUE(r.applies);
  EXPECT_TRUE(r.derivation);
}

TEST(SufficientCondition, PreconditionViolationsAreReported) {
  auto x = divisors_csl(12);
  EXPECT_THROW(check_derivation_sufficient(x, FiniteMap(x.size(), x.top())), PreconditionError);
  // Join preserving but not bounded by the identity.
  auto three = chain(3, {0, 0, 0, 0, 1, 1, 0, 1, 2});
  EXPECT_THROW(check_derivation_sufficient(three, FiniteMap{0, 2, 2}), PreconditionError);
}

TEST(SufficientCondition, ConsistentOnEveryAdmissibleMapOfSmallInstances) {
  for (const auto& x : small_csls(4))
    oracle::for_each_map(x.size(), [&](const std::vector<Id>& f) {
      if (!oracle::is_join_preserving(x, f) || !bounded_by_identity(x, f).holds) return;
      EXPECT_TRUE(check_derivation_sufficient(x, f).consistent());
    });
}

TEST(IdempotentMeet, DivisorLatticeConfirmedAndConstantBottomNotApplicable) {
  EXPECT_EQ(check_idempotent_meet(divisors_csl(12)).status, IdempotentStatus::Confirmed);
  auto r = check_idempotent_meet(chain(3, std::vector<Id>(9, 0)));
  EXPECT_EQ(r.status, IdempotentStatus::NotApplicable);
  EXPECT_EQ(r.witness, std::vector<Id>{1});
}

TEST(OrderPreserving, EveryInnerMapOfAnAxiomaticInstance) {
  for (const auto& x : small_csls(5)) EXPECT_TRUE(check_order_preserving(x).holds);
}
