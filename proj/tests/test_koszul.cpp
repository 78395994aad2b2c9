#include <doctest.h>

#include "koszulhh/koszul.hpp"
#include "oracle.hpp"

using namespace koszulhh;

TEST_CASE("admissible sequence examples") {
  CHECK(admissible_sequences(ConnectedSumAlgebra(0, 3), 2).size() == 6);
  const auto b = admissible_sequences(ConnectedSumAlgebra(1, 1), 2);
  REQUIRE(b.size() == 3);
  const Alphabet alphabet(1, 1);
  CHECK(alphabet.format(b.word(0)) == "v1,v1");
  CHECK(alphabet.format(b.word(1)) == "v1,x1");
  CHECK(alphabet.format(b.word(2)) == "x1,v1");
  CHECK(admissible_sequences(ConnectedSumAlgebra(0, 3), 4).size() == 24);
  const auto empty = admissible_sequences(ConnectedSumAlgebra(2, 2), 0);
  REQUIRE(empty.size() == 1);
  CHECK(empty.word(0).empty());
}

TEST_CASE("enumeration matches the brute-force filter") {
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t n = 0; m + n <= 4; ++n) {
      for (int k = 0; k <= 6; ++k) {
        const auto basis = admissible_sequences(ConnectedSumAlgebra(m, n), k);
        const auto brute = oracle::admissible(m, n, k);
        REQUIRE(basis.size() == brute.size());
        CHECK(admissible_count(Alphabet(m, n), k) == brute.size());
        for (std::size_t i = 0; i < brute.size(); ++i) {
          const Word w(brute[i].begin(), brute[i].end());
          CHECK(basis.word(i) == w);  // both lexicographic
          CHECK(basis.find(w) == i);
        }
      }
    }
  }
}

TEST_CASE("count for m = 0 is n (n-1)^(k-1)") {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::size_t expected = n;
    for (int k = 1; k <= 6; ++k) {
      CHECK(admissible_count(Alphabet(0, n), k) == expected);
      expected *= n - 1;
    }
  }
}

TEST_CASE("stable words start and end in the same atom") {
  const Alphabet a(1, 3);
  CHECK(a.is_stable(a.parse("x1,x2,x1")));
  CHECK_FALSE(a.is_stable(a.parse("v1,x2,v1")));
  CHECK_FALSE(a.is_stable(a.parse("x1,x2")));
  CHECK(a.is_admissible(a.parse("v1,v1,x1")));
  CHECK_FALSE(a.is_admissible(a.parse("x2,x2")));
  CHECK_THROWS(a.parse("x4"));
  CHECK_THROWS(a.parse("y1"));
  CHECK(a.parse("").empty());
}

TEST_CASE("resource cap on enumeration") {
  ResourceCaps caps;
  caps.max_sequences = 10;
  CHECK_THROWS_AS(admissible_sequences(ConnectedSumAlgebra(0, 3), 3, caps), CapExceeded);
  CHECK_NOTHROW(admissible_sequences(ConnectedSumAlgebra(0, 3), 2, caps));
}

TEST_CASE("generic Koszul space examples") {
  CHECK(koszul_space_generic(ConnectedSumAlgebra(1, 2), 0).dimension() == 1);
  CHECK(koszul_space_generic(ConnectedSumAlgebra(1, 2), 1).dimension() == 3);
  CHECK(koszul_space_generic(ConnectedSumAlgebra(0, 3), 2).dimension() == 6);
  CHECK(koszul_space_generic(ConnectedSumAlgebra(2, 0), 3).dimension() == 8);
}

TEST_CASE("relation space complements the diagonal squares") {
  for (std::size_t m = 0; m <= 3; ++m) {
    for (std::size_t n = 0; m + n <= 4; ++n) {
      const auto mult = quadratic_multiplication(ConnectedSumAlgebra(m, n));
      const auto r = kernel_basis(mult).size();
      CHECK(r + n == (m + n) * (m + n));
    }
  }
}

TEST_CASE("admissible span equals the generic space") {
  for (std::size_t m = 0; m <= 4; ++m) {
    for (std::size_t n = 0; m + n <= 4; ++n) {
      const ConnectedSumAlgebra alg(m, n);
      for (int k = 0; k <= 5; ++k) {
        const auto generic = koszul_space_generic(alg, k);
        const auto basis = admissible_sequences(alg, k);
        CHECK(generic.dimension() == basis.size());
        for (const auto& w : basis.words()) {
          BitVector t(generic.ambient_dim);
          t.set(tensor_index(Alphabet(alg), w.data(), w.size()));
          CHECK(generic.contains(t));
        }
      }
    }
  }
}

TEST_CASE("Koszulity examples") {
  CHECK(verify_koszul(ConnectedSumAlgebra(0, 1), 4).passed);
  CHECK(verify_koszul(ConnectedSumAlgebra(2, 0), 4).passed);
  const auto rep = verify_koszul(ConnectedSumAlgebra(1, 3), 5);
  CHECK(rep.passed);
  for (const auto& d : rep.degrees) {
    CHECK(d.d_squared_zero);
    CHECK(d.homology.front() == d.algebra_dim);
    for (std::size_t i = 1; i < d.homology.size(); ++i) CHECK(d.homology[i] == 0);
  }
  CHECK_THROWS(verify_koszul(ConnectedSumAlgebra(1, 1), 0));
}

TEST_CASE("tensor index is mixed radix with the first letter most significant") {
  const Alphabet a(1, 2);
  const Word w = a.parse("x1,v1,x2");
  CHECK(tensor_index(a, w.data(), w.size()) == 1 * 9 + 0 * 3 + 2);
}
