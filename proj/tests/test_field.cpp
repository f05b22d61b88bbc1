#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qdist/errors.hpp"
#include "qdist/field.hpp"

using namespace qdist;

TEST_CASE("F_9 hand example") {
  const FieldCtx f = make_field(3, 2);
  CHECK(f.q() == 9);
  const auto m = f.modulus();
  REQUIRE(m.size() == 3);
  CHECK(m[0] == 1);
  CHECK(m[1] == 0);
  CHECK(m[2] == 1);
  const Felt t{3};
  CHECK(f.mul(t, t) == Felt{2});
  CHECK(f.trace(f.one()) == 2);
  CHECK(f.trace(t) == 0);
  CHECK(std::abs(f.chi(t) - Cx(1, 0)) < 1e-15);
  CHECK(f.name() == "F_9");
}

TEST_CASE("prime field basics") {
  const FieldCtx f = make_field(7, 1);
  CHECK(f.add(Felt{5}, Felt{4}) == Felt{2});
  CHECK(f.mul(Felt{3}, Felt{5}) == Felt{1});
  CHECK(f.inv(Felt{3}) == Felt{5});
  CHECK(f.neg(Felt{0}) == Felt{0});
  CHECK(f.from_int(-1) == Felt{6});
  CHECK(f.pow(Felt{3}, 6) == f.one());
  CHECK(f.pow(Felt{3}, -1) == Felt{5});
  CHECK(f.eta(Felt{0}) == 0);
  CHECK(f.eta(Felt{2}) == 1);  // 3^2 = 2
  CHECK(f.eta(Felt{3}) == -1);
}

TEST_CASE("modulus is the smallest irreducible found by trial division") {
  for (auto [p, ell] : std::vector<std::pair<std::uint32_t, int>>{{3, 2}, {3, 3}, {5, 2}, {5, 3}, {7, 2}, {7, 3}, {11, 2}, {13, 3}, {101, 2}}) {
    CAPTURE(p);
    CAPTURE(ell);
    const FieldCtx f = make_field(p, ell);
    const auto want = oracle::smallest_irreducible(p, ell);
    const auto got = f.modulus();
    REQUIRE(got.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) CHECK(static_cast<std::int64_t>(got[i]) == want[i]);
  }
}

TEST_CASE("arithmetic matches polynomial oracle exhaustively on small fields") {
  for (auto [p, ell] : std::vector<std::pair<std::uint32_t, int>>{{3, 1}, {5, 1}, {3, 2}, {5, 2}, {3, 3}, {7, 2}, {11, 2}, {5, 3}}) {
    CAPTURE(p);
    CAPTURE(ell);
    const FieldCtx f = make_field(p, ell);
    const oracle::PolyField o(p, ell);
    for (std::uint64_t a = 0; a < o.q; ++a) {
      const Felt fa{static_cast<std::uint32_t>(a)};
      REQUIRE(f.trace(fa) == o.trace(a));
      REQUIRE(f.eta(fa) == o.eta(a));
      REQUIRE(f.neg(fa).idx == o.neg(a));
      if (a != 0) REQUIRE(f.inv(fa).idx == o.inv(a));
      for (std::uint64_t b = 0; b < o.q; ++b) {
        const Felt fb{static_cast<std::uint32_t>(b)};
        REQUIRE(f.mul(fa, fb).idx == o.mul(a, b));
        REQUIRE(f.add(fa, fb).idx == o.add(a, b));
        REQUIRE(f.sub(fa, fb).idx == o.sub(a, b));
      }
    }
  }
}

TEST_CASE("arithmetic matches oracle on seeded samples of large fields") {
  std::mt19937_64 rng(12345);
  for (auto [p, ell] : std::vector<std::pair<std::uint32_t, int>>{{9973, 1}, {101, 2}, {97, 3}, {997, 2}, {31, 3}}) {
    CAPTURE(p);
    CAPTURE(ell);
    const FieldCtx f = make_field(p, ell);
    const oracle::PolyField o(p, ell);
    for (int i = 0; i < 300; ++i) {
      const std::uint64_t a = rng() % o.q, b = rng() % o.q;
      const Felt fa{static_cast<std::uint32_t>(a)}, fb{static_cast<std::uint32_t>(b)};
      REQUIRE(f.mul(fa, fb).idx == o.mul(a, b));
      REQUIRE(f.add(fa, fb).idx == o.add(a, b));
      REQUIRE(f.trace(fa) == o.trace(a));
      REQUIRE(f.pow(fa, 12345).idx == o.pow_fast(a, 12345));
    }
  }
}

TEST_CASE("field axioms hold on seeded triples") {
  std::mt19937_64 rng(777);
  for (auto [p, ell] : std::vector<std::pair<std::uint32_t, int>>{{3, 3}, {7, 3}, {13, 2}, {9973, 1}, {3, 1}}) {
    const FieldCtx f = make_field(p, ell);
    for (int i = 0; i < 500; ++i) {
      const Felt a{static_cast<std::uint32_t>(rng() % f.q())}, b{static_cast<std::uint32_t>(rng() % f.q())},
          c{static_cast<std::uint32_t>(rng() % f.q())};
      REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      REQUIRE(f.add(a, f.neg(a)) == f.zero());
      REQUIRE(f.trace(f.add(a, b)) == (f.trace(a) + f.trace(b)) % p);
      REQUIRE(f.sqr(a) == f.mul(a, a));
      if (a != f.zero()) REQUIRE(f.mul(a, f.inv(a)) == f.one());
      const int ea = f.eta(a), eb = f.eta(b);
      REQUIRE(f.eta(f.mul(a, b)) == ea * eb);
    }
    // Fermat: a^q = a for every a.
    for (std::uint32_t a = 0; a < std::min<std::uint32_t>(f.q(), 200); ++a) REQUIRE(f.pow(Felt{a}, f.q()) == Felt{a});
  }
}

TEST_CASE("chi is a character") {
  const FieldCtx f = make_field(5, 2);
  for (std::uint32_t a = 0; a < f.q(); ++a)
    for (std::uint32_t b = 0; b < f.q(); ++b)
      REQUIRE(std::abs(f.chi(f.add(Felt{a}, Felt{b})) - f.chi(Felt{a}) * f.chi(Felt{b})) < 1e-14);
  Cx sum = 0;
  for (std::uint32_t a = 0; a < f.q(); ++a) sum += f.chi(Felt{a});
  CHECK(std::abs(sum) < 1e-12);
}

TEST_CASE("encode and decode are inverse") {
  const FieldCtx f = make_field(7, 3);
  for (std::uint32_t a = 0; a < f.q(); a += 17) {
    const auto c = f.decode(Felt{a});
    CHECK(c.size() == 3);
    CHECK(f.encode(c) == Felt{a});
  }
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(make_field(4, 1), InvalidArgument);
  CHECK_THROWS_AS(make_field(2, 1), InvalidArgument);
  CHECK_THROWS_AS(make_field(1, 1), InvalidArgument);
  CHECK_THROWS_AS(make_field(10007, 1), CapExceeded);
  CHECK_THROWS_AS(make_field(101, 3), CapExceeded);
  CHECK_THROWS_AS(make_field(3, 4), InvalidArgument);
  CHECK_THROWS_AS(make_field(3, 0), InvalidArgument);
  const FieldCtx f = make_field(5, 1);
  CHECK_THROWS_AS(f.inv(f.zero()), InvalidArgument);
  CHECK_THROWS_AS(f.pow(f.zero(), -2), InvalidArgument);
}

TEST_CASE("prime power splitting and dispatch") {
  CHECK(split_prime_power(27) == std::pair<std::uint32_t, int>{3, 3});
  CHECK(split_prime_power(49) == std::pair<std::uint32_t, int>{7, 2});
  CHECK_THROWS_AS(split_prime_power(12), InvalidArgument);
  CHECK(is_prime(9973));
  CHECK_FALSE(is_prime(9975));
  const FieldCtx f = make_field(3, 2);
  CHECK(field_arith(f, FieldOp::Mul, Felt{3}, 3) == Felt{2});
  CHECK(field_arith(f, FieldOp::Pow, Felt{3}, 4) == f.one());
  CHECK(field_arith(f, FieldOp::Inv, Felt{2}, 0) == Felt{2});
  CHECK(field_arith(f, FieldOp::Sub, Felt{1}, 1) == f.zero());
  CHECK(make_field(3, 2) == f);
  CHECK_FALSE(make_field(3, 1) == f);
}
