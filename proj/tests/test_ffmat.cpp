#include "doctest.h"
#include "nangle/ffmat.hpp"

#include <random>
#include <stdexcept>

using namespace nangle;

namespace {

// Brute-force oracle: every x with A x = b, by enumerating F_p^cols.
std::vector<Vec> all_solutions(const FpMatrix& a, const Vec& b) {
  std::vector<Vec> out;
  for (const Vec& x : enumerate_vectors(a.modulus(), a.cols(), 1u << 20))
    if (a.apply(x) == b) out.push_back(x);
  return out;
}

FpMatrix random_matrix(std::mt19937& rng, int p, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> d(0, p - 1);
  Vec e(r * c);
  for (int& v : e) v = d(rng);
  return FpMatrix(p, r, c, e);
}

}  // namespace

TEST_CASE("solve_linear examples") {
  {
    auto s = solve_linear(FpMatrix(2, 1, 1, {1}), {0});
    REQUIRE(s);
    CHECK(s->particular == Vec{0});
    CHECK(s->kernel.empty());
  }
  {
    auto s = solve_linear(FpMatrix(2, 1, 1, {0}), {0});
    REQUIRE(s);
    CHECK(s->particular == Vec{0});
    REQUIRE(s->kernel.size() == 1);
    CHECK(s->kernel[0] == Vec{1});
  }
  {
    // Enumerating F_2^2 gives solutions {[1,0],[0,1]}, so kernel span{[1,1]}.
    FpMatrix a(2, 2, 2, {1, 1, 0, 0});
    auto s = solve_linear(a, {1, 0});
    REQUIRE(s);
    CHECK(s->particular == Vec{1, 0});
    REQUIRE(s->kernel.size() == 1);
    CHECK(s->kernel[0] == Vec{1, 1});
    CHECK(all_solutions(a, {1, 0}).size() == 2);
  }
  CHECK_FALSE(solve_linear(FpMatrix(2, 1, 1, {0}), {1}));
}

TEST_CASE("solve_linear rejects bad input") {
  CHECK_THROWS_AS(solve_linear(FpMatrix(2, 2, 1), {0}), std::invalid_argument);
  CHECK_THROWS_AS(solve_linear(FpMatrix(2, 1, 1), {2}), std::invalid_argument);
  CHECK_THROWS_AS(FpMatrix(3, 1, 1) * FpMatrix(2, 1, 1), std::invalid_argument);
}

TEST_CASE("rank examples") {
  CHECK(rank(FpMatrix::identity(3, 2)) == 2);
  CHECK(rank(FpMatrix(3, 2, 2)) == 0);
  CHECK(kernel_basis(FpMatrix(3, 2, 2)).size() == 2);
  CHECK(rank(FpMatrix(3, 2, 2, {1, 2, 2, 1})) == 1);
}

TEST_CASE("solution sets agree with exhaustive enumeration") {
  std::mt19937 rng(7);
  for (int p : {2, 3}) {
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
      const FpMatrix a = random_matrix(rng, p, r, c);
      const Vec b = random_matrix(rng, p, r, 1).entries();
      const auto brute = all_solutions(a, b);
      const auto s = solve_linear(a, b);
      REQUIRE(s.has_value() == !brute.empty());
      if (!s) continue;
      AffineSpace space(p, *s);
      const std::size_t n = space.size_capped(1u << 20);
      CHECK(n == brute.size());
      for (std::size_t i = 0; i < n; ++i) CHECK(a.apply(space.point(i)) == b);
      CHECK(rank(a) + s->kernel.size() == c);
      CHECK(rank(a) == rank(a.transpose()));
    }
  }
}

TEST_CASE("affine enumeration starts at the particular solution") {
  LinearSolution s{{1, 0}, {{1, 1}}};
  AffineSpace space(3, s);
  CHECK(space.size_capped(100) == 3);
  CHECK(space.point(0) == Vec{1, 0});
  CHECK(space.point(1) == Vec{2, 1});
  CHECK(space.point(2) == Vec{0, 2});
  CHECK(space.fits(3));
  CHECK_FALSE(space.fits(2));
}

TEST_CASE("invert") {
  auto inv = invert(FpMatrix(3, 2, 2, {1, 1, 0, 1}));
  REQUIRE(inv);
  CHECK(*inv * FpMatrix(3, 2, 2, {1, 1, 0, 1}) == FpMatrix::identity(3, 2));
  CHECK_FALSE(invert(FpMatrix(3, 2, 2, {1, 2, 2, 1})));
  CHECK(PrimeField{5}.mul(PrimeField{5}.inv(3), 3) == 1);
  CHECK(PrimeField{3}.sign(5) == 2);
  CHECK(PrimeField{2}.sign(5) == 1);
}
