#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "koszulhh/massey.hpp"

using namespace koszulhh;

namespace {

std::shared_ptr<const DgAlgebra> connected_sum(std::size_t m, std::size_t n, int top) {
  return std::make_shared<const DgAlgebra>(dg_algebra_from_connected_sum(ConnectedSumAlgebra(m, n), top));
}

DefiningSystem adjacent_only(const DgAlgebra& a, const std::vector<GradedElement>& classes) {
  DefiningSystem ds;
  for (const auto& c : classes) ds.degrees.push_back(c.degree);
  const int n = ds.n();
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n + 1; ++j) {
      if (i == 1 && j == n + 1) continue;
      ds.entries.emplace(std::pair{i, j}, j == i + 1 ? classes[static_cast<std::size_t>(i - 1)]
                                                     : a.zero(ds.entry_degree(i, j)));
    }
  }
  return ds;
}

GradedElement random_element(const DgAlgebra& a, int degree, std::mt19937_64& rng) {
  auto e = a.zero(degree);
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) e.coeffs.set(i, rng() & 1u);
  return e;
}

GradedElement random_cocycle(const DgAlgebra& a, int degree, std::mt19937_64& rng) {
  auto e = a.zero(degree);
  for (const auto& z : a.cocycle_basis(degree))
    if (rng() & 1u) e.coeffs ^= z;
  return e;
}

/// Zero differential, the unit as degree-0 basis vector, every other product zero.
std::shared_ptr<DgAlgebra> unital(std::vector<std::size_t> dims) {
  auto a = std::make_shared<DgAlgebra>(std::move(dims));
  a->set_unit(BitVector::from_string("1"));
  for (int d = 0; d <= a->top_degree(); ++d)
    for (std::size_t i = 0; i < a->dim(d); ++i) {
      a->set_product(0, 0, d, i, BitVector::unit(a->dim(d), i));
      a->set_product(d, i, 0, 0, BitVector::unit(a->dim(d), i));
    }
  return a;
}

/// The smallest fibration with a kernel: T = span{1, e} with e in degree 1 and
/// e e = 0, and S = T plus one acyclic pair starting in degree 0.
Fibration smallest_fibration(std::mt19937_64& rng, bool scramble) {
  const auto t = unital({1, 1});
  CHECK(t->validate().empty());
  return make_acyclic_fibration(t, {1}, rng, scramble);
}

}  // namespace

TEST_CASE("connected sum dg-algebras are valid with zero differential") {
  for (std::size_t m = 0; m <= 2; ++m)
    for (std::size_t n = 0; n <= 3; ++n) {
      const auto h = connected_sum(m, n, 6);
      CHECK(h->validate().empty());
      CHECK(h->has_trivial_differential());
      CHECK(h->cohomology_dim(1) == m + n);
    }
}

TEST_CASE("validate reports broken axioms") {
  DgAlgebra no_unit({1, 1});
  CHECK_FALSE(no_unit.validate().empty());

  const auto squares = unital({1, 1, 1});
  squares->set_differential(1, BitMatrix::from_rows({"1"}));
  squares->set_differential(0, BitMatrix::from_rows({"1"}));
  CHECK_MESSAGE(squares->validate().find("square to zero") != std::string::npos, squares->validate());

  // δ(1) = δ(1 1) = 2 δ(1) forces δ(1) = 0.
  const auto leibniz = unital({1, 1});
  CHECK(leibniz->validate().empty());
  leibniz->set_differential(0, BitMatrix::from_rows({"1"}));
  CHECK_MESSAGE(leibniz->validate().find("Leibniz") != std::string::npos, leibniz->validate());
}

TEST_CASE("defining system degrees") {
  DefiningSystem ds;
  ds.degrees = {1, 2, 1};
  CHECK(ds.entry_degree(1, 2) == 1);
  CHECK(ds.entry_degree(1, 3) == 2);
  CHECK(ds.entry_degree(2, 4) == 2);
  CHECK(ds.product_degree() == 3);
}

TEST_CASE("n = 2 is the cup product") {
  const auto h = connected_sum(1, 2, 6);
  for (int d1 = 1; d1 <= 2; ++d1)
    for (int d2 = 1; d2 <= 2; ++d2)
      for (std::size_t i = 0; i < h->dim(d1); ++i)
        for (std::size_t j = 0; j < h->dim(d2); ++j) {
          const auto a = h->basis_element(d1, i), b = h->basis_element(d2, j);
          const auto p = massey_product(*h, adjacent_only(*h, {a, b}));
          CHECK(p.degree() == d1 + d2);
          CHECK(p.representative == h->multiply(a, b));
        }
}

TEST_CASE("three copies of v") {
  const auto h = connected_sum(1, 2, 6);
  const auto v = h->basis_element(1, 0);
  CHECK(h->multiply(v, v).is_zero());
  const auto ds = trivial_defining_system(*h, {v, v, v});
  CHECK(validate_defining_system(*h, ds).empty());
  const auto p = massey_product(*h, ds);
  CHECK(p.degree() == 2);
  CHECK(is_zero_class(*h, p.representative));
}

TEST_CASE("distinct v letters up to length five") {
  const auto h = connected_sum(5, 0, 7);
  for (int n = 2; n <= 5; ++n) {
    std::vector<GradedElement> classes;
    for (int i = 0; i < n; ++i) classes.push_back(h->basis_element(1, static_cast<std::size_t>(i)));
    const auto p = massey_product(*h, trivial_defining_system(*h, classes));
    CHECK(p.representative.is_zero());
  }
}

TEST_CASE("trivial defining system preconditions") {
  const auto h = connected_sum(1, 2, 6);
  const auto x1 = h->basis_element(1, 1);
  CHECK_FALSE(h->multiply(x1, x1).is_zero());
  CHECK_THROWS_AS(trivial_defining_system(*h, {x1, x1}), std::invalid_argument);
  CHECK_THROWS_AS(massey_product(*h, adjacent_only(*h, {x1, x1, h->basis_element(1, 2)})), std::invalid_argument);
  // A zero entry gives a valid system and the zero class.
  const auto p = massey_product(*h, trivial_defining_system(*h, {x1, h->zero(1), x1}));
  CHECK(is_zero_class(*h, p.representative));
}

TEST_CASE("sampled tuples have vanishing neighbouring products") {
  const auto h = connected_sum(2, 3, 8);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const auto tuple = sample_annihilating_tuple(*h, {1, 2, 1, 2}, rng);
    REQUIRE(tuple.size() == 4);
    for (std::size_t j = 0; j + 1 < tuple.size(); ++j) CHECK(h->multiply(tuple[j], tuple[j + 1]).is_zero());
  }
  MasseySampling sampling;
  sampling.samples = 40;
  sampling.seed = 3;
  const auto rep = strong_massey_check(*h, sampling);
  CHECK(rep.passed());
  CHECK(rep.samples == 40);
  CHECK(rep.zero_products == 40);
}

TEST_CASE("identity map lifts everything to itself") {
  const auto h = connected_sum(1, 2, 6);
  const auto q = DgMap::identity(h);
  CHECK(q.acyclic_fibration());
  CHECK(q.validate().empty());
  std::mt19937_64 rng(8);
  for (int d = 0; d <= 6; ++d) {
    const auto b = random_cocycle(*h, d, rng);
    CHECK(lift_cocycle(q, b) == b);
    CHECK(lift_cocycle(q, h->zero(d)).is_zero());
  }
  CHECK(lift_coboundary(q, h->zero(2), h->zero(1)).is_zero());
  const auto v = h->basis_element(1, 0);
  const auto ds = trivial_defining_system(*h, {v, v, v});
  const auto lifted = lift_defining_system(q, {v, v, v}, ds);
  for (const auto& [key, entry] : ds.entries) CHECK(lifted.at(key.first, key.second) == entry);
}

TEST_CASE("lifting along the smallest fibration") {
  std::mt19937_64 rng(9);
  for (bool scramble : {false, true}) {
    const auto fib = smallest_fibration(rng, scramble);
    const auto& q = fib.map;
    const auto& s = *fib.source;
    REQUIRE_MESSAGE(s.validate().empty(), s.validate());
    REQUIRE_MESSAGE(q.validate().empty(), q.validate());
    CHECK(q.surjective());
    CHECK(q.quasi_isomorphism());
    CHECK(s.total_dim() == 4);
    for (int d = 0; d <= 1; ++d) {
      const auto b = fib.target->basis_element(d, 0);
      const auto a = lift_cocycle(q, b);
      CHECK(s.is_cocycle(a));
      CHECK(q.apply(a) == b);
    }
    // Coboundary lifts for every source element in degree 0 and every target correction.
    for (std::uint64_t bits = 0; bits < 4; ++bits) {
      GradedElement e0{0, BitVector(2)};
      e0.coeffs.set(0, bits & 1u);
      e0.coeffs.set(1, (bits >> 1) & 1u);
      const auto d = s.d(e0);
      for (int shift = 0; shift < 2; ++shift) {
        auto c = q.apply(e0);
        if (shift) c.coeffs ^= fib.target->unit();
        const auto e = lift_coboundary(q, d, c);
        CHECK(q.apply(e) == c);
        CHECK(s.d(e) == d);
      }
    }
  }
}

TEST_CASE("maps that are not acyclic fibrations are flagged") {
  const auto t = connected_sum(1, 0, 2);
  const auto s = unital({1, 1, 0});
  // The zero map in degree 1 is not surjective.
  const DgMap q(s, t, {BitMatrix::from_rows({"1"}), BitMatrix(1, 1), BitMatrix(0, 0)});
  CHECK_MESSAGE(q.validate().empty(), q.validate());
  CHECK_FALSE(q.surjective());
  CHECK_THROWS_AS(lift_cocycle(q, t->basis_element(1, 0)), NotAnAcyclicFibration);
}

TEST_CASE("n = 3 defining systems lift over scrambled fibrations") {
  std::mt19937_64 rng(10);
  const auto t = connected_sum(1, 2, 4);
  int lifted_systems = 0;
  for (int sample = 0; sample < 20; ++sample) {
    const auto fib = make_acyclic_fibration(t, {0, 1, 1, 0}, rng, true);
    const auto& q = fib.map;
    const auto& s = *fib.source;
    REQUIRE(q.acyclic_fibration());
    const auto images = sample_annihilating_tuple(*t, {1, 1, 1}, rng);
    const auto ds = random_defining_system(*t, images, rng);
    if (!ds) continue;
    std::vector<GradedElement> classes;
    for (const auto& b : images) {
      auto a = lift_cocycle(q, b);
      a.coeffs ^= s.d(random_element(s, 0, rng)).coeffs;
      classes.push_back(a);
    }
    const auto lifted = lift_defining_system(q, classes, *ds);
    REQUIRE(validate_defining_system(s, lifted).empty());
    for (const auto& [key, entry] : ds->entries) CHECK(q.apply(lifted.at(key.first, key.second)) == entry);
    for (int i = 1; i <= 3; ++i) CHECK(same_class(s, lifted.at(i, i + 1), classes[static_cast<std::size_t>(i - 1)]));
    const auto source_product = massey_product(s, lifted);
    const auto target_product = massey_product(*t, *ds);
    CHECK(q.apply(source_product.representative) == target_product.representative);
    ++lifted_systems;
  }
  CHECK(lifted_systems > 0);
}

TEST_CASE("Massey product sets correspond across a fibration") {
  std::mt19937_64 rng(11);
  const auto t = connected_sum(1, 1, 3);
  const auto fib = make_acyclic_fibration(t, {0, 1, 0}, rng, true);
  const auto& q = fib.map;
  const auto& s = *fib.source;
  const auto v = t->basis_element(1, 0);
  const std::vector<GradedElement> images{v, v, v};
  std::vector<GradedElement> classes;
  for (const auto& b : images) classes.push_back(lift_cocycle(q, b));

  const auto target_set = massey_product_set(*t, images);
  const auto source_set = massey_product_set(s, classes);
  CHECK(std::find(target_set.begin(), target_set.end(), t->canonical(t->zero(2))) != target_set.end());
  // q induces an isomorphism on cohomology, so the two sets have the same size and q maps one onto the other.
  CHECK(source_set.size() == target_set.size());
  std::set<std::string> mapped, expected;
  for (const auto& rep : source_set) mapped.insert(t->canonical(q.apply({2, rep})).to_string());
  for (const auto& rep : target_set) expected.insert(rep.to_string());
  CHECK(mapped == expected);
  CHECK_THROWS_AS(massey_product_set(s, classes, 2), CapExceeded);
}
