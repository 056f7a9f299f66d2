// Acceptance run: one PASS/FAIL line per criterion, with wall time.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "hallcrit/hallcrit.hpp"
#include "oracles.hpp"

using namespace hallcrit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) {
    o.pass = false;
    o.detail = what;
  }
}

// 1: exact values in the counterexample ring.
Outcome counterexample_values() {
  Outcome o;
  auto ex = build_paper_example();
  auto comm = [&](const Submodule& a, const Submodule& b) { return huq_commutator_ring(ex.E, a, b).submodule; };
  const Submodule top = Submodule::whole(3), zero = Submodule::zero(3);
  require(o, kernel_ring_hom(ex.p) == ex.X, "ker p != X");
  require(o, relative_commutator_ring(ex.E, ex.N, ex.N, ex.N).submodule == ex.X, "[N,N]_N != X");
  require(o, comm(top, top) == ex.X, "[E,E] != X");
  require(o, comm(top, ex.X) == ex.X, "[E,X] != X");
  require(o, comm(ex.N, ex.X) == zero, "[N,X] != 0");
  require(o, nilpotency_class(IdealContext(subring_as_ring(ex.E, ex.N).ring)) == NilpotencyClass::of(2),
          "class(N) != 2");
  require(o, nilpotency_class(IdealContext(ex.B)) == NilpotencyClass::of(1), "class(B) != 1");
  auto chain = gamma_series(IdealContext(ex.E));
  require(o, chain.status == ChainStatus::StabilizedNonzero && chain.terms.back() == ex.X,
          "gamma series of E does not stabilize at X");
  o.detail = o.pass ? "ker p = [N,N]_N = [E,E] = [E,X] = X, [N,X] = 0, class N 2, class B 1, E stabilizes at X"
                    : o.detail;
  return o;
}

// 2: the Hall verdict on the counterexample.
Outcome counterexample_verdict() {
  Outcome o;
  auto ex = build_paper_example();
  auto v = hall_check(ex.E, ex.N, ex.p);
  require(o, v.hypotheses_hold, "hypotheses fail: " + v.failing_hypothesis);
  require(o, !v.theorem_holds, "theorem_holds is true");
  require(o, v.bound == std::optional<std::uint64_t>(2), "bound != 2");
  require(o, v.class_n == NilpotencyClass::of(2) && v.class_b == NilpotencyClass::of(1), "c, d != 2, 1");
  if (o.pass) o.detail = "hypotheses hold, theorem fails, bound 2 (c=2, d=1)";
  return o;
}

// 3: which commutator condition breaks.
Outcome jacobi_localization() {
  Outcome o;
  auto ex = build_paper_example();
  IdealContext ctx(ex.E);
  auto b = check_condition_b_ii(ctx, ctx.top(), ex.N, ex.N);
  require(o, !b.holds, "(b)(ii) holds at (E,N,N)");
  require(o, b.lhs == ex.X, "(b)(ii) left side != X");
  require(o, b.rhs == Submodule::zero(3), "(b)(ii) right side != 0");
  const std::vector<Submodule> sample{Submodule::zero(3), ex.X, ex.N, Submodule::whole(3)};
  std::size_t triples = 0;
  for (const auto& k : sample)
    for (const auto& l : sample)
      for (const auto& m : sample) {
        require(o, check_condition_b_i(ctx, k, l, m).holds, "(b)(i) fails on a triple");
        ++triples;
      }
  if (o.pass) o.detail = "(b)(ii) fails at (E,N,N) with X vs 0; (b)(i) holds on " + std::to_string(triples) + " triples";
  return o;
}

// 4: class(E) <= hall_bound(c, d) over the catalog, d from E/[N,N].
Outcome hall_sweep_catalog() {
  Outcome o;
  std::size_t groups = 0, checked = 0;
  for (const auto& entry : group_catalog()) {
    const auto& e = entry.group;
    ++groups;
    auto normals = enumerate_normal_subgroups(e);
    auto verdicts = hall_sweep(e);
    auto class_e = oracle::nilpotency_class(e);
    for (std::size_t i = 0; i < normals.size(); ++i) {
      const auto& v = verdicts[i];
      require(o, v.theorem_holds, entry.name + ": theorem_holds false");
      if (!v.class_n.nilpotent() || !v.class_b.nilpotent()) continue;
      ++checked;
      require(o, class_e.has_value(), entry.name + ": N and B nilpotent but E is not");
      if (class_e) require(o, *class_e <= *v.bound, entry.name + ": class exceeds bound");
    }
  }
  require(o, groups >= 28, "catalog too small");
  if (o.pass)
    o.detail = std::to_string(groups) + " groups, " + std::to_string(checked) + " nilpotent N, 0 violations";
  return o;
}

// 5: NSub(G) is a Jacobi commutator semi-lattice for every catalog group.
Outcome nsub_is_jacobi() {
  Outcome o;
  std::size_t triples = 0;
  for (const auto& entry : group_catalog()) {
    auto m = materialize_nsub(entry.group);
    require(o, check_csl_axioms(m.csl).all_hold(), entry.name + ": axioms fail");
    require(o, check_jacobi(m.csl).holds, entry.name + ": Jacobi fails");
    require(o, oracle::jacobi(m.csl), entry.name + ": Jacobi fails (direct)");
    triples += m.csl.size() * m.csl.size() * m.csl.size();
  }
  if (o.pass) o.detail = std::to_string(group_catalog().size()) + " groups, " + std::to_string(triples) + " triples";
  return o;
}

// 6: lemma and main bounds on NSub of three small groups, each entry also
// recomputed with brute-force commutators.
Outcome bounds_at_desk_scale() {
  Outcome o;
  std::size_t entries = 0;
  for (const char* name : {"D4", "Q8", "D4xC2"}) {
    const auto& g = catalog_group(name);
    NSubContext ctx(g);
    auto sample = ctx.elements();
    const auto all = oracle::all_of(g);
    auto f = [&](const Subgroup& k) { return ctx.dot(ctx.top(), k); };
    auto of = [&](const std::vector<Id>& k) { return oracle::commutator(g, all, k); };
    auto incl = [](const std::vector<Id>& a, const std::vector<Id>& b) {
      return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    auto of_iter = [&](std::vector<Id> k, std::uint64_t n) {
      for (std::uint64_t i = 0; i < n; ++i) k = of(k);
      return k;
    };
    for (const auto& n : sample) {
      auto og = [&](const std::vector<Id>& k) { return oracle::commutator(g, n.elements, k); };
      std::vector<Id> gn = og(n.elements);
      try {
        auto lemma = verify_lemma_bound(ctx, f, n, 6, std::span<const Subgroup>(sample));
        auto main = verify_main_bound(ctx, f, n, ctx.top(), 6, std::span<const Subgroup>(sample));
        require(o, lemma.all_hold(), std::string(name) + ": lemma bound fails");
        require(o, main.all_hold(), std::string(name) + ": main bound fails");
        // Least m, recomputed.
        std::uint64_t ml = 1, mm = 1;
        while (!incl(of_iter(n.elements, ml), gn)) ++ml;
        while (!incl(of_iter(all, mm), gn)) ++mm;
        require(o, lemma.m == ml && main.m == mm, std::string(name) + ": least m differs from brute force");
        std::vector<Id> gprev = n.elements;
        for (std::uint64_t k = 1; k <= 6; ++k) {
          std::vector<Id> gk = og(gprev);
          bool lemma_ok = incl(of_iter(gprev, lemma_exponent(k, ml)), gk);
          bool main_ok = incl(of_iter(all, main_exponent(k, mm)), gk);
          require(o, lemma_ok && main_ok, std::string(name) + ": brute-force bound fails at k=" + std::to_string(k));
          require(o, lemma.entries[k - 1].holds == lemma_ok && main.entries[k - 1].holds == main_ok,
                  std::string(name) + ": entry disagrees with brute force");
          gprev = gk;
          entries += 2;
        }
      } catch (const NoBaseIterate&) {
        // no least m for this N
      }
    }
  }
  for (std::uint64_t m = 1; m <= 16; ++m)
    for (std::uint64_t k = 1; k <= 6; ++k)
      require(o, main_exponent(k + 1, m) == lemma_exponent(k + 1, m) + main_exponent(k, m),
              "exponent identity fails");
  if (o.pass) o.detail = std::to_string(entries) + " bound entries, exponent identity for k <= 6";
  return o;
}

// 7: idempotent commutator operations are distributive meets.
Outcome idempotent_is_meet() {
  Outcome o;
  std::size_t ops = 0, idempotent = 0;
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& s : enumerate_join_semilattices(n)) {
      if (!s.bottom) continue;
      for (const auto& d : enumerate_commutator_operations(s)) {
        ++ops;
        auto r = check_idempotent_meet(make_csl(s, d));
        require(o, r.status != IdempotentStatus::Refuted, "idempotent operation refuted: " + r.reason);
        idempotent += r.status == IdempotentStatus::Confirmed;
      }
    }
  if (o.pass) o.detail = std::to_string(ops) + " operations, " + std::to_string(idempotent) + " idempotent, all meets";
  return o;
}

// 8: derivations on divisor lattices are the maps below the identity.
Outcome derivation_criterion() {
  Outcome o;
  std::string counts;
  for (std::uint64_t n : {12u, 30u, 60u}) {
    auto l = divisor_lattice(n);
    auto x = csl_from_distributive_lattice(l);
    auto r = check_distributive_derivation_criterion(l);
    require(o, r.equivalence_holds, "criterion fails on divisors of " + std::to_string(n));
    std::size_t der = 0, bnd = 0;
    for (const auto& f : enumerate_join_preserving_maps(l)) {
      bool d = oracle::is_derivation(x, f);
      bool b = true;
      for (Id e = 0; e < l.size(); ++e) b = b && l.leq(f[e], e);
      require(o, d == b, "direct check disagrees on divisors of " + std::to_string(n));
      der += d;
      bnd += b;
    }
    require(o, r.derivations == der && r.bounded == bnd, "counts disagree on divisors of " + std::to_string(n));
    counts += (counts.empty() ? "" : ", ") + std::to_string(n) + ": " + std::to_string(der) + "/" +
              std::to_string(r.join_preserving);
  }
  if (o.pass) o.detail = "derivations / join-preserving maps: " + counts;
  return o;
}

// 9: library enumerations against brute force.
Outcome backend_oracles() {
  Outcome o;
  std::size_t groups = 0;
  for (const auto& entry : group_catalog()) {
    if (entry.group.order() > 12) continue;
    ++groups;
    std::vector<std::vector<Id>> lib;
    for (const auto& n : enumerate_normal_subgroups(entry.group)) lib.push_back(n.elements);
    require(o, lib == oracle::normal_subgroups(entry.group), entry.name + ": normal subgroups differ");
  }
  // Rank <= 3 lattices with upper-triangular generators, pivots 1..3 and
  // off-diagonal entries in [-1, 1]; probes with entries in [-1, 1] need
  // coefficients of magnitude at most 4, inside the oracle's [-5, 5].
  std::size_t probes = 0;
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  auto next = [&](int lo, int hi) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return lo + static_cast<int>((state >> 33) % static_cast<std::uint64_t>(hi - lo + 1));
  };
  for (std::size_t rank = 1; rank <= 3; ++rank)
    for (int trial = 0; trial < 12; ++trial) {
      std::vector<IntVector> gens;
      for (std::size_t r = 0; r < rank; ++r) {
        IntVector v(3, Integer(0));
        v[r] = next(1, 3);
        for (std::size_t c = r + 1; c < 3; ++c) v[c] = next(-1, 1);
        gens.push_back(v);
      }
      auto s = Submodule::span(3, gens);
      for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
          for (int c = -1; c <= 1; ++c) {
            IntVector v{Integer(a), Integer(b), Integer(c)};
            require(o, s.contains(v) == oracle::small_combination(gens, v, 5), "membership differs");
            ++probes;
          }
      // Members built from coefficients in [-5, 5] are found by both.
      for (int t = 0; t < 10; ++t) {
        IntVector v(3, Integer(0));
        for (const auto& g : gens) {
          int coef = next(-5, 5);
          for (std::size_t j = 0; j < 3; ++j) v[j] += coef * g[j];
        }
        require(o, s.contains(v) && oracle::small_combination(gens, v, 5), "constructed member missed");
        ++probes;
      }
    }
  if (o.pass)
    o.detail = std::to_string(groups) + " groups of order <= 12, " + std::to_string(probes) + " membership probes";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no time limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "counterexample values", 1, counterexample_values},
      {2, "counterexample verdict", 0, counterexample_verdict},
      {3, "Jacobi failure localization", 0, jacobi_localization},
      {4, "Hall sweep over group catalog", 60, hall_sweep_catalog},
      {5, "NSub is a Jacobi commutator semi-lattice", 30, nsub_is_jacobi},
      {6, "lemma and main bounds on D4, Q8, D4xC2", 0, bounds_at_desk_scale},
      {7, "idempotent operations are meets", 120, idempotent_is_meet},
      {8, "distributive derivation criterion", 0, derivation_criterion},
      {9, "backend oracle equivalence", 0, backend_oracles},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs >= c.limit_s && out.pass) {
      out.pass = false;
      out.detail = "over time limit of " + std::to_string(c.limit_s) + " s";
    }
    failures += !out.pass;
    std::printf("[%s] criterion %d: %s (%.3f s) - %s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                out.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
