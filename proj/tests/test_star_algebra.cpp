#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "leftengel/star_algebra.hpp"
#include "oracle.hpp"

using namespace leftengel;
using B = StarBasisElement;

namespace {

// e_1..e_12 built from dense seed matrices.
std::vector<oracle::Dense> dense_seed_operators() {
  auto ad = [](char y) {
    const std::string syms = "xuvw";
    oracle::Dense d = oracle::zeros(4);
    for (std::size_t i = 0; i < 4; ++i) {
      const char p = oracle::seed_product(syms[i], y);
      if (p != '0') d[i][syms.find(p)] = 1;
    }
    return d;
  };
  using oracle::mul;
  const auto x = ad('x'), u = ad('u'), v = ad('v'), w = ad('w');
  const auto w2 = mul(w, w);
  return {w, w2, mul(w2, w), v, mul(v, w), mul(v, w2), u, mul(u, w), mul(u, w2), mul(x, v), mul(x, w), mul(x, w2)};
}

// e(A): x -> (x e)_A, z_B -> (z e)_{B |_| A}.
oracle::Dense dense_e_of_A(const oracle::Star& s, const oracle::Dense& e, std::uint32_t a) {
  const std::string syms = "xuvw";
  oracle::Dense d = oracle::zeros(s.dim());
  for (std::size_t row = 0; row < s.dim(); ++row) {
    const auto z = s.elements()[row];
    const std::size_t zi = syms.find(z.sym);
    std::uint32_t target = a;
    if (z.sym != 'x') {
      if (z.set & a) continue;
      target = z.set | a;
    }
    for (std::size_t t = 1; t < 4; ++t) {
      if (e[zi][t]) d[row][s.index({syms[t], target})] ^= 1;
    }
  }
  return d;
}

}  // namespace

TEST_CASE("modified union") {
  CHECK(modified_union(Mask::of({1}), Mask::of({2})) == Mask::of({1, 2}));
  CHECK_FALSE(modified_union(Mask::of({1}), Mask::of({1})).has_value());
  CHECK(modified_union(Mask::of({1, 3}), Mask::of({2})) == Mask::of({1, 2, 3}));
}

TEST_CASE("ground set bounds") {
  CHECK_THROWS_AS(GroundSet(0), std::invalid_argument);
  CHECK_THROWS_AS(GroundSet(11), std::invalid_argument);
  for (int n : {2, 3, 4, 5, 6, 7, 9}) {
    const GroundSet gs(n);
    CHECK(gs.star_dim() == 3 * ((std::size_t{1} << n) - 1) + 1);
  }
  CHECK(GroundSet(9).star_dim() == 1534);
  CHECK(GroundSet(2).estar_dim() == 28);
  CHECK(GroundSet(3).estar_dim() == 76);
  CHECK(GroundSet(4).estar_dim() == 172);
}

TEST_CASE("basis products") {
  const StarAlgebra alg(GroundSet(3));
  CHECK(alg.multiply(B::w(Mask::of({1})), B::x()) == StarVector(B::u(Mask::of({1}))));
  CHECK(alg.multiply(B::u(Mask::of({1})), B::v(Mask::of({1}))).is_zero());
  CHECK(alg.multiply(B::u(Mask::of({1})), B::v(Mask::of({2}))) == StarVector(B::u(Mask::of({1, 2}))));
}

TEST_CASE("basis indexing round trips") {
  const StarAlgebra alg(GroundSet(4));
  for (std::size_t i = 0; i < alg.dim(); ++i) CHECK(alg.index(alg.element(i)) == i);
  CHECK_THROWS_AS(alg.index(B::u(Mask::of({5}))), std::invalid_argument);
  CHECK_THROWS_AS(alg.index(B{Tag::X, Mask::of({1})}), std::invalid_argument);
}

TEST_CASE("ad matrices match the dense model") {
  for (int n = 1; n <= 4; ++n) {
    const StarAlgebra alg{GroundSet(n)};
    const oracle::Star ref(n);
    REQUIRE(alg.dim() == ref.dim());
    for (const auto& y : alg.basis()) CHECK(oracle::from_bits(alg.ad(y)) == ref.ad(oracle::from_lib(y)));
  }
}

TEST_CASE("Jacobi identity in V*_3") {
  const StarAlgebra alg(GroundSet(3));
  const auto basis = alg.basis();
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (const auto& c : basis) {
        const StarVector j = alg.multiply(alg.multiply(a, b), c) + alg.multiply(alg.multiply(b, c), a) +
                             alg.multiply(alg.multiply(c, a), b);
        REQUIRE(j.is_zero());
      }
}

TEST_CASE("full-mask operators") {
  const StarAlgebra alg(GroundSet(3));
  const Mask full = alg.ground().full();
  CHECK(alg.ad(B::u(full)).is_zero());
  CHECK(alg.ad(B::v(full)).is_zero());
  const BitMatrix aw = alg.ad(B::w(full));
  CHECK_FALSE(aw.is_zero());
  CHECK(aw.get(0, alg.index(B::u(full))));
  CHECK(aw.popcount() == 1);
}

TEST_CASE("ad(x) sandwich") {
  const StarAlgebra alg(GroundSet(4));
  const BitMatrix ax = alg.ad_x();
  CHECK((ax * ax).is_zero());
  CHECK((ax * alg.ad(B::w(Mask::of({1}))) * ax).is_zero());
  CHECK((ax * ax * ax).is_zero());
  CHECK(verify_adx_sandwich(alg).passed());
}

TEST_CASE("local nilpotency") {
  const StarAlgebra alg(GroundSet(3));
  const std::vector<B> just_x{B::x()};
  CHECK(lower_central_class(alg, just_x).nilpotency_class == 1);

  const std::vector<B> xw{B::x(), B::w(Mask::of({1}))};
  CHECK(lower_central_class(alg, xw).nilpotency_class <= 2);

  const std::vector<B> mixed{B::x(), B::u(Mask::of({1})), B::v(Mask::of({2})), B::w(Mask::of({3}))};
  const LieClass lc = lower_central_class(alg, mixed);
  CHECK(lc.nilpotency_class <= 6);
  CHECK(lc.nilpotency_class == max_nonzero_left_normed_weight(alg, mixed, 7));
  const auto rep = verify_local_nilpotency_bound(alg, mixed);
  CHECK(rep.passed());
  CHECK(rep.params.at("class") == lc.nilpotency_class);
}

TEST_CASE("lifted seed operators") {
  const StarAlgebra alg(GroundSet(3));
  const auto& env = alg.enveloping();
  const Mask full = alg.ground().full();

  BitVector x(alg.dim());
  x.set(alg.index(B::x()));
  const BitVector img = apply(x, alg.e_of_A(env[1], Mask::of({2})));
  BitVector u2(alg.dim());
  u2.set(alg.index(B::u(Mask::of({2}))));
  CHECK(img == u2);

  CHECK(alg.e_of_A(env[7], full).is_zero());
  CHECK(alg.e_of_A(env[4], full).is_zero());
  for (Mask a : alg.ground().nonempty_masks()) {
    CHECK(alg.ad(B::w(a)) == alg.e_of_A(env[1], a));
    if (a != full) {
      CHECK(alg.ad(B::v(a)) == alg.e_of_A(env[4], a));
      CHECK(alg.ad(B::u(a)) == alg.e_of_A(env[7], a));
    }
  }
  CHECK_THROWS_AS(alg.e_of_A(env[1], Mask{}), std::invalid_argument);
}

TEST_CASE("lifted operators match the dense model") {
  const StarAlgebra alg(GroundSet(3));
  const oracle::Star ref(3);
  const auto dense = dense_seed_operators();
  for (std::size_t i = 1; i <= 12; ++i) {
    CHECK(oracle::from_bits(alg.enveloping()[i]) == dense[i - 1]);
    for (Mask a : alg.ground().nonempty_masks()) {
      CHECK(oracle::from_bits(alg.e_of_A(alg.enveloping()[i], a)) == dense_e_of_A(ref, dense[i - 1], a.bits));
    }
  }
  // e(A) f(B) = (ef)(A u B) for disjoint A, B, and 0 otherwise.
  for (std::size_t i = 1; i <= 12; ++i)
    for (std::size_t j = 1; j <= 12; ++j)
      for (Mask a : alg.ground().nonempty_masks())
        for (Mask b : alg.ground().nonempty_masks()) {
          const BitMatrix lhs = alg.e_of_A(alg.enveloping()[i], a) * alg.e_of_A(alg.enveloping()[j], b);
          const BitMatrix ef = alg.enveloping()[i] * alg.enveloping()[j];
          if (a.disjoint(b)) {
            REQUIRE(lhs == alg.e_of_A(ef, Mask{a.bits | b.bits}));
          } else {
            REQUIRE(lhs.is_zero());
          }
        }
}

TEST_CASE("dimension of E*") {
  for (int n : {2, 3}) {
    const StarAlgebra alg{GroundSet(n)};
    const oracle::Star ref(n);
    const auto dense = dense_seed_operators();
    // Dense generators and all pairwise products.
    std::vector<oracle::Dense> gens{ref.ad(oracle::Basis{'x', 0})};
    for (const auto& e : dense)
      for (std::uint32_t a = 1; a < (1U << n); ++a) gens.push_back(dense_e_of_A(ref, e, a));
    std::vector<oracle::Dense> all = gens;
    for (const auto& g : gens)
      for (const auto& h : gens) all.push_back(oracle::mul(g, h));
    const std::size_t expect = n == 2 ? 28 : 76;
    CHECK(oracle::matrix_span_rank(all) == expect);
    CHECK(span_dimension(estar_basis(alg).ops) == expect);
    CHECK(verify_estar_basis(alg).passed());
  }
  CHECK(verify_estar_basis(StarAlgebra(GroundSet(4))).passed());
}

TEST_CASE("nilpotency of E-bar and exponent 32") {
  const StarAlgebra alg(GroundSet(4));
  const BitMatrix e = alg.e_of_A(alg.enveloping()[1], Mask::of({1}));
  CHECK(mat_pow(e, 16).is_zero());
  CHECK(mat_pow(e, 4).is_zero());
  const auto rep = verify_estar_exponent(alg, 200, 11);
  CHECK(rep.passed());
  CHECK(rep.params.at("seed") == 11);
}

TEST_CASE("elevated operators") {
  const StarAlgebra alg(GroundSet(3));
  const auto& env = alg.enveloping();
  const std::vector<Mask> part12{Mask::of({1, 2})};
  const std::vector<int> one{1};
  for (std::size_t i = 1; i <= 12; ++i) {
    CHECK(alg.elevated(env[i], one, part12) ==
          alg.e_of_A(env[i], Mask::of({1})) + alg.e_of_A(env[i], Mask::of({2})));
  }
  // e^(1) f^(1) = C(2,1) (ef)^(2) = 0
  const std::vector<Mask> part123{Mask::of({1, 2, 3})};
  for (std::size_t i = 1; i <= 12; ++i)
    for (std::size_t j = 1; j <= 12; ++j) {
      CHECK((alg.elevated(env[i], one, part123) * alg.elevated(env[j], one, part123)).is_zero());
    }
  // Degenerate profile over two parts picks a single block.
  const std::vector<Mask> two{Mask::of({1}), Mask::of({2, 3})};
  const std::vector<int> p01{0, 1};
  CHECK(alg.elevated(env[7], p01, two) == alg.e_of_A(env[7], Mask::of({2})) + alg.e_of_A(env[7], Mask::of({3})));
  const std::vector<int> p20{2, 0};
  CHECK(alg.elevated(env[7], p20, two).is_zero());

  const std::vector<Mask> overlap{Mask::of({1, 2}), Mask::of({2, 3})};
  const std::vector<int> p11{1, 1};
  CHECK_THROWS_AS(alg.elevated(env[1], p11, overlap), std::invalid_argument);
  const std::vector<int> p00{0, 0};
  CHECK_THROWS_AS(alg.elevated(env[1], p00, two), std::invalid_argument);
}

TEST_CASE("binomial parity") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(4, 2) % 2 == 0);
  CHECK(binomial(3, 2) == 3);
  CHECK(binomial(2, 1) % 2 == 0);
  CHECK(binomial(6, 3) == 20);
}

TEST_CASE("Q for one block") {
  const StarAlgebra alg(GroundSet(3));
  const QAlgebra q = q_spanning_set(alg, triple_parts(1));
  const auto dims = q_power_dims(alg, q, 7);
  CHECK(dims.back() == 0);
  CHECK(dims.size() <= 6);
  const auto rep = verify_elevated_algebra(alg, 1);
  CHECK(rep.passed());
  CHECK(verify_elevated_algebra(alg, 2).status == Status::skipped);
}
