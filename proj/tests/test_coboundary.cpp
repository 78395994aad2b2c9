#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "koszulhh/coboundary.hpp"

using namespace koszulhh;

namespace {

Cochain stable_fixture(const CoefficientPair& pair) {
  auto f = zero_cochain(pair, 3, -1);
  f.set_value(*f.basis->find(pair.alphabet().parse("x1,x2,x1")), BitVector::from_string("100"));
  return f;
}

}  // namespace

TEST_CASE("orbit examples") {
  const Alphabet three(0, 3);
  const auto orbits = orbit_decomposition(three, 2);
  REQUIRE(orbits.size() == 3);
  for (const auto& o : orbits) {
    CHECK(o.members.size() == 2);
    CHECK_FALSE(o.stable);
  }
  const auto length3 = orbit_decomposition(three, 3);
  const auto stable = std::find_if(length3.begin(), length3.end(),
                                   [&](const Orbit& o) { return o.representative() == three.parse("x1,x2,x1"); });
  REQUIRE(stable != length3.end());
  CHECK(stable->stable);
  CHECK(stable->members.size() == 1);

  const Alphabet mixed(1, 1);
  const auto vv = orbit_decomposition(mixed, 2);
  const auto it = std::find_if(vv.begin(), vv.end(),
                               [&](const Orbit& o) { return o.representative() == mixed.parse("v1,v1"); });
  REQUIRE(it != vv.end());
  CHECK(it->members.size() == 1);
  CHECK_FALSE(it->stable);
  CHECK(it->fixed_unstable);
}

TEST_CASE("orbits partition the admissible words") {
  for (std::size_t m = 0; m <= 2; ++m) {
    for (std::size_t n = 0; n <= 3; ++n) {
      const Alphabet a(m, n);
      for (int k = 1; k <= 4; ++k) {
        std::set<Word> seen;
        std::size_t total = 0;
        for (const auto& o : orbit_decomposition(a, k)) {
          CHECK(o.representative() == *std::min_element(o.members.begin(), o.members.end()));
          for (std::size_t i = 0; i < o.members.size(); ++i) {
            CHECK(a.is_admissible(o.members[i]));
            CHECK(right_translate(a, o.members[i]) == o.members[(i + 1) % o.members.size()]);
            seen.insert(o.members[i]);
          }
          CHECK(o.stable == (o.members.size() == 1 && a.is_stable(o.members.front())));
          total += o.members.size();
        }
        CHECK(seen.size() == total);
        CHECK(total == admissible_count(a, k));
      }
    }
  }
}

TEST_CASE("translations are inverse to each other") {
  const Alphabet a(1, 3);
  for (int k = 1; k <= 4; ++k) {
    const auto basis = admissible_sequences(ConnectedSumAlgebra(1, 3), k);
    for (const auto& w : basis.words()) {
      CHECK(left_translate(a, right_translate(a, w)) == w);
      CHECK(right_translate(a, left_translate(a, w)) == w);
    }
  }
  CHECK(right_translate(a, a.parse("x1,x2,x3")) == a.parse("x3,x1,x2"));
  CHECK(left_truncate(a.parse("x1,x2,x3")) == a.parse("x1,x2"));
  CHECK(right_truncate(a.parse("x1,x2,x3")) == a.parse("x2,x3"));
}

TEST_CASE("truncations are bijective on unstable orbits") {
  for (std::size_t m = 0; m <= 2; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const Alphabet a(m, n);
      for (int k = 2; k <= 4; ++k) {
        for (const auto& o : orbit_decomposition(a, k)) {
          if (o.stable) continue;
          const auto set = truncation_set(o);
          std::set<Word> left, right;
          for (const auto& w : o.members) {
            left.insert(left_truncate(w));
            right.insert(right_truncate(w));
          }
          CHECK(left.size() == o.members.size());
          CHECK(left == right);
          CHECK(std::set<Word>(set.begin(), set.end()) == left);
          // r(i) = l(j) exactly when i = R(j).
          for (const auto& i : o.members)
            for (const auto& j : o.members)
              CHECK((right_truncate(i) == left_truncate(j)) == (i == right_translate(a, j)));
        }
      }
    }
  }
}

TEST_CASE("letter projection") {
  const CoefficientPair pair(1, Subring(3, {{0, 2}, {1}}));
  CHECK(letter_projection(pair, 0).none());
  CHECK(letter_projection(pair, 1).to_string() == "101");
  CHECK(letter_projection(pair, 2).to_string() == "010");
}

TEST_CASE("head and tail") {
  const auto pair = CoefficientPair::same(ConnectedSumAlgebra(0, 3));
  const auto f = stable_fixture(pair);
  const auto w = *f.basis->find(pair.alphabet().parse("x1,x2,x1"));
  const auto ht = head_tail(pair, f, w);
  CHECK(ht.alpha.to_string() == "100");
  CHECK(ht.beta.to_string() == "100");
  const auto other = head_tail(pair, f, *f.basis->find(pair.alphabet().parse("x1,x2,x3")));
  CHECK(other.alpha.none());
  CHECK(other.beta.none());

  auto bad = zero_cochain(pair, 3, -1);
  bad.set_value(*bad.basis->find(pair.alphabet().parse("x1,x2,x3")), BitVector::from_string("010"));
  CHECK_THROWS_AS(head_tail(pair, bad, *bad.basis->find(pair.alphabet().parse("x1,x2,x3"))), NotACocycle);
}

TEST_CASE("head/tail law around orbits of random cocycles") {
  std::mt19937_64 rng(11);
  for (std::size_t m = 0; m <= 1; ++m) {
    const auto pair = CoefficientPair::same(ConnectedSumAlgebra(m, 3));
    for (int k = 2; k <= 4; ++k) {
      const CocycleSampler sampler(pair, k, 2 - k);
      const auto orbits = orbit_decomposition(pair.alphabet(), k);
      for (int i = 0; i < 20; ++i) {
        const auto f = sampler.sample(rng);
        for (const auto& o : orbits) {
          const auto ht = head_tail(pair, f, o);
          for (std::size_t p = 0; p < ht.size(); ++p) CHECK(ht[(p + 1) % ht.size()].alpha == ht[p].beta);
        }
      }
    }
  }
}

TEST_CASE("solver on the stable fixture") {
  const auto pair = CoefficientPair::same(ConnectedSumAlgebra(0, 3));
  const auto f = stable_fixture(pair);
  REQUIRE(first_cocycle_violation(pair, f) < 0);
  const auto g = solve_coboundary(pair, f);
  CHECK(g.k == 2);
  CHECK(g.s == -1);
  const auto r = *g.basis->find(pair.alphabet().parse("x2,x1"));
  for (std::size_t w = 0; w < g.word_count(); ++w) CHECK(g.value(w).to_string() == (w == r ? "100" : "000"));
  const auto dg = apply_differential(pair, g);
  REQUIRE(dg.word_count() == 12);
  for (std::size_t w = 0; w < 12; ++w) CHECK(dg.value(w) == f.value(w));
}

TEST_CASE("solver on zero and on coboundaries") {
  std::mt19937_64 rng(12);
  for (std::size_t m = 0; m <= 2; ++m) {
    for (std::size_t n = 1; n <= 3; ++n) {
      const CoefficientPair pair(m, n == 3 ? Subring(3, {{0, 1}, {2}}) : Subring::full(n));
      for (int k = 2; k <= 4; ++k) {
        for (int j = 2; j <= 3; ++j) {
          const auto zero = zero_cochain(pair, k, j - k);
          CHECK(solve_coboundary(pair, zero).is_zero());
          for (int i = 0; i < 5; ++i) {
            const auto h = random_cochain(pair, k - 1, j - k, rng);
            const auto f = apply_differential(pair, h);
            const auto g = solve_coboundary(pair, f);
            CHECK(apply_differential(pair, g).coords == f.coords);
          }
        }
      }
    }
  }
}

TEST_CASE("solver rejects non-cocycles and bad bidegrees") {
  const auto pair = CoefficientPair::same(ConnectedSumAlgebra(0, 3));
  auto f = zero_cochain(pair, 3, -1);
  f.set_value(*f.basis->find(pair.alphabet().parse("x1,x2,x3")), BitVector::from_string("100"));
  CHECK(first_cocycle_violation(pair, f) >= 0);
  CHECK_THROWS_AS(solve_coboundary(pair, f), NotACocycle);
  CHECK_THROWS(solve_coboundary(pair, zero_cochain(pair, 1, 1)));
  CHECK_THROWS(solve_coboundary(pair, zero_cochain(pair, 3, -2)));
}

TEST_CASE("subring extension letter maps") {
  const Subring trivial = Subring::trivial(3);
  const SubringExtension ext(trivial, BitVector::from_string("110"));
  CHECK(ext.extended().blocks() == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  REQUIRE(ext.children(0).size() == 2);
  CHECK(ext.parent(0) == 0);
  CHECK(ext.parent(1) == 0);
  // The section prefers the child on which x is 1.
  CHECK(ext.extended().blocks()[ext.section(0)] == std::vector<std::size_t>{0, 1});

  const CoefficientPair small(1, trivial);
  const CoefficientPair big(1, ext.extended());
  const auto big_alphabet = big.alphabet();
  const auto small_alphabet = small.alphabet();
  for (int k = 1; k <= 4; ++k) {
    // s is a bijection from small words onto x-admissible big words, with a* as its inverse.
    const auto small_words = orbit_decomposition(small_alphabet, k);
    std::size_t small_count = 0, x_admissible = 0;
    for (const auto& o : small_words) {
      for (const auto& w : o.members) {
        ++small_count;
        const auto lifted = ext.lift(small_alphabet, w);
        CHECK(big_alphabet.is_admissible(lifted));
        CHECK(ext.is_x_admissible(big_alphabet, lifted));
        CHECK(ext.project(big_alphabet, lifted) == w);
      }
    }
    for (const auto& o : orbit_decomposition(big_alphabet, k)) {
      for (const auto& w : o.members) {
        if (!ext.is_x_admissible(big_alphabet, w)) continue;
        ++x_admissible;
        CHECK(ext.lift(small_alphabet, ext.project(big_alphabet, w)) == w);
      }
    }
    CHECK(x_admissible == small_count);
  }
}

TEST_CASE("extension when x is already in A") {
  std::mt19937_64 rng(13);
  const CoefficientPair pair(1, Subring(3, {{0, 1}, {2}}));
  const auto x = BitVector::from_string("110");
  const CocycleSampler sampler(pair, 2, -1);
  for (int i = 0; i < 10; ++i) {
    const auto f = multiply_values(pair, sampler.sample(rng), x);
    const auto ext = extend_cocycle(pair, x, f);
    CHECK(ext.pair.subring() == pair.subring());
    CHECK(ext.cochain.coords == f.coords);
  }
  const auto zero = zero_cochain(pair, 2, -1);
  CHECK(extend_cocycle(pair, BitVector::from_string("100"), zero).cochain.is_zero());
}

TEST_CASE("extension from the trivial subring of F2^3 along x = 110") {
  // With no V letters a single atom admits no words of length >= 2, so one V letter is added.
  const CoefficientPair pair(1, Subring::trivial(3));
  const auto x = BitVector::from_string("110");
  for (int k = 2; k <= 3; ++k) {
    const auto d = cochain_differential(pair, k, 1 - k);
    const auto kernel = kernel_basis(d);
    REQUIRE(!kernel.empty());
    REQUIRE(kernel.size() <= 16);
    // Every cocycle in the kernel, not just a sample.
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << kernel.size()); ++bits) {
      auto f = zero_cochain(pair, k, 1 - k);
      for (std::size_t i = 0; i < kernel.size(); ++i)
        if ((bits >> i) & 1u) f.coords ^= kernel[i];
      const auto xf = multiply_values(pair, f, x);
      const auto ext = extend_cocycle(pair, x, xf);
      CHECK(first_cocycle_violation(ext.pair, ext.cochain) < 0);
      CHECK(restrict_cochain(ext.pair, pair, ext.cochain).coords == xf.coords);
      const auto whole = extend_cocycle_general(pair, x, f);
      CHECK(first_cocycle_violation(whole.pair, whole.cochain) < 0);
      CHECK(restrict_cochain(whole.pair, pair, whole.cochain).coords == f.coords);
    }
  }
}

TEST_CASE("extension preconditions") {
  const CoefficientPair pair(1, Subring::trivial(3));
  const auto x = BitVector::from_string("110");
  auto f = zero_cochain(pair, 2, -1);
  f.set_value(0, BitVector::from_string("0001"));
  CHECK_THROWS(extend_cocycle(pair, x, f));  // f != x f
  CHECK_THROWS(extend_cocycle(pair, x, zero_cochain(pair, 2, 0)));
}

TEST_CASE("bottom row examples") {
  CHECK(bottom_cocycles(ConnectedSumAlgebra(0, 3), 2) == 0);
  CHECK(bottom_cocycles(ConnectedSumAlgebra(3, 0), 1) == 0);
  // No claim for fewer than three generators; the value is just computed.
  const auto small = bottom_cocycles(ConnectedSumAlgebra(0, 1), 1);
  CHECK(small <= 1);
  for (std::size_t m = 0; m <= 3; ++m)
    for (std::size_t n = 0; m + n <= 4; ++n)
      if (m + n >= 3)
        for (int k = 1; k <= 4; ++k) CHECK(bottom_cocycles(ConnectedSumAlgebra(m, n), k) == 0);
}
