#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "leftengel/engel.hpp"
#include "oracle.hpp"

using namespace leftengel;
using G = Generator;

TEST_CASE("Engel condition for simple conjugators") {
  const GroupEngine eng(GroundSet(3));
  const EngelWitness trivial = engel3_check(eng, Word{});
  CHECK(trivial.passed);
  CHECK(trivial.first_commutator.is_identity());
  CHECK(trivial.conjugate_matrix == eng.gen_matrix(G::x()));

  const EngelWitness w1 = engel3_check(eng, Word{{G::w(Mask::of({1}))}});
  CHECK(w1.passed);
  CHECK(w1.formulations_agree);
  const StarAlgebra& alg = eng.algebra();
  const BitMatrix y = alg.ad(StarVector(G::x()) + StarVector(G::u(Mask::of({1}))));
  const BitMatrix x = alg.ad_x();
  CHECK(w1.first_commutator == BitMatrix::identity(eng.dim()) + y * x + x * y + y * x * y);
  // a^w1 = (1+ad(x))(1+ad(u_1)) commutes with a.
  CHECK(w1.first_commutator.is_identity());

  // At n = 4 the Engel condition is not already met one step earlier.
  const GroupEngine eng4(GroundSet(4));
  const Word g = parse_word("w{1} w{2} w{3}", eng4.ground());
  const EngelWitness deep = engel3_check(eng4, g);
  CHECK(deep.passed);
  CHECK(deep.formulations_agree);
  CHECK_FALSE(deep.first_commutator.is_identity());
  CHECK_FALSE(deep.chain[1].is_identity());

  const EngelWitness ww = engel3_check(eng, Word{{G::w(Mask::of({1})), G::w(Mask::of({1}))}});
  CHECK(ww.conjugate_matrix == trivial.conjugate_matrix);
}

TEST_CASE("Engel condition against the dense model") {
  const GroupEngine eng(GroundSet(3));
  const oracle::Star ref(3);
  const oracle::Dense a = ref.generator({'x', 0});
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    const Word g = random_word(eng.ground(), 24, rng);
    const oracle::Dense gm = oracle::word_matrix(ref, g), gi = oracle::word_matrix(ref, g.inverse());
    const oracle::Dense b = oracle::mul(oracle::mul(gi, a), gm);
    auto comm = [](const oracle::Dense& p, const oracle::Dense& q) {
      // p and q here are involutions
      return oracle::mul(oracle::mul(oracle::mul(p, q), p), q);
    };
    const oracle::Dense c1 = comm(b, a);
    const oracle::Dense c2 = oracle::mul(oracle::mul(oracle::mul(c1, a), oracle::power(c1, 3)), a);  // c1^-1 = c1^3
    CHECK(c2 == oracle::eye(ref.dim()));
    const EngelWitness w = engel3_check(eng, g);
    CHECK(oracle::from_bits(w.first_commutator) == c1);
    CHECK(w.passed);
  }
}

TEST_CASE("Engel sweeps") {
  const auto ex = engel3_sweep(GroupEngine(GroundSet(3)), SweepMode::exhaustive_w, 100, 1);
  CHECK(ex.passed());
  CHECK(ex.params.at("checked") == 128);
  const auto ex4 = engel3_sweep(GroupEngine(GroundSet(4)), SweepMode::exhaustive_w, 100, 1);
  CHECK(ex4.passed());
  CHECK(ex4.params.at("nontrivial_first_commutators") == 10240);
  const auto rnd = engel3_sweep(GroupEngine(GroundSet(4)), SweepMode::random, 300, 2);
  CHECK(rnd.passed());
  CHECK(rnd.params.at("seed") == 2);
  CHECK(engel3_sweep(GroupEngine(GroundSet(5)), SweepMode::exhaustive_w, 1, 1).failed());
}

TEST_CASE("closed form of the conjugates") {
  const GroupEngine eng(GroundSet(4));
  using B = StarBasisElement;
  const std::vector<Mask> m1{Mask::of({1})};
  CHECK(conjugate_y(m1) == StarVector(B::x()) + StarVector(B::u(Mask::of({1}))));
  const std::vector<Mask> m12{Mask::of({1}), Mask::of({2})};
  StarVector expect = B::x();
  expect += B::u(Mask::of({1}));
  expect += B::u(Mask::of({2}));
  expect += B::v(Mask::of({1, 2}));
  CHECK(conjugate_y(m12) == expect);
  const std::vector<Mask> m11{Mask::of({1}), Mask::of({1})};
  CHECK(conjugate_y(m11) == StarVector(B::x()));

  for (const auto& ms : {m1, m12, m11}) CHECK(conjugate_y_formula(eng, ms).matches);
  const std::vector<Mask> m123{Mask::of({1}), Mask::of({2}), Mask::of({3})};
  const auto p = conjugate_y_formula(eng, m123);
  CHECK(p.matches);
  CHECK(std::find(p.y.terms().begin(), p.y.terms().end(), B::w(Mask::of({1, 2, 3}))) != p.y.terms().end());

  CHECK(verify_conjugate_formula(eng, 300, 4).passed());
}

TEST_CASE("non-nilpotency certificates") {
  for (int k : {1, 2}) {
    const GroupEngine eng{GroundSet(2 * k + 1)};
    const auto rep = witness_chain(eng, k);
    CHECK(rep.passed());
    CHECK(rep.params.at("witness") == Generator::w(Mask::range(1, 2 * k + 1)).to_string());
    CHECK(rep.params.at("commutator_weight") == 3 * k + 1);
  }
  // The chain value computed from the fully expanded word, densely.
  const oracle::Star ref(3);
  std::vector<Word> parts;
  for (const auto& g : witness_letters(1)) parts.push_back(Word{{g}});
  CHECK(oracle::word_matrix(ref, left_normed(parts)) == ref.generator({'w', 0b111}));

  CHECK(witness_chain(GroupEngine(GroundSet(4)), 2).failed());  // needs n >= 5
}

TEST_CASE("class of subgroups generated by conjugates") {
  const GroupEngine eng(GroundSet(6));
  const std::vector<Word> one{singleton_w_word(Mask::range(1, 3))};
  const auto r1 = conjugates_class_check(eng, one, 10, 0);
  CHECK(r1.passed());
  CHECK(r1.params.at("class") == 1);

  const std::vector<Word> two{singleton_w_word(Mask::range(1, 3)), singleton_w_word(Mask::range(4, 6))};
  const auto r2 = conjugates_class_check(eng, two, 10, 0);
  CHECK(r2.passed());
  CHECK(r2.params.at("mode") == "exhaustive");
  CHECK(r2.params.at("weight_4r+3_sequences") == 2048);
  CHECK(r2.params.at("class").get<int>() <= 10);

  // Descending check of the exact class by brute force.
  const GroupElement a = eng.gen_element(G::x());
  std::vector<GroupElement> h;
  for (const auto& w : two) h.push_back(conjugate(a, eng.word_element(w)));
  const int c = r2.params.at("class").get<int>();
  auto all_trivial_at = [&](int weight) {
    std::vector<GroupElement> layer(h.begin(), h.end());
    for (int d = 1; d < weight; ++d) {
      std::vector<GroupElement> next;
      for (const auto& e : layer)
        for (const auto& g : h) next.push_back(commutator(e, g));
      layer = std::move(next);
    }
    return std::all_of(layer.begin(), layer.end(), [](const GroupElement& e) { return e.is_identity(); });
  };
  CHECK(all_trivial_at(c + 1));
  CHECK_FALSE(all_trivial_at(c));
}

TEST_CASE("block decomposition of conjugates") {
  const GroupEngine eng(GroundSet(4));
  const std::vector<int> b3{3};
  CHECK(conjugate_block_decomposition(eng, b3).passed());
  const std::vector<int> b22{2, 2};
  CHECK(conjugate_block_decomposition(eng, b22).passed());

  // A single-element block: 1 + ad(x) + e7({1}).
  const std::vector<int> b1{1};
  CHECK(conjugate_block_decomposition(eng, b1).passed());
  const StarAlgebra& alg = eng.algebra();
  const BitMatrix conj = conjugate(eng.gen_element(G::x()), eng.gen_element(G::w(Mask::of({1})))).mat;
  CHECK(conj == BitMatrix::identity(eng.dim()) + alg.ad_x() + alg.e_of_A(alg.enveloping()[7], Mask::of({1})));

  const std::vector<int> too_big{3, 3};
  CHECK(conjugate_block_decomposition(eng, too_big).failed());
}

TEST_CASE("orders in G divide 32") {
  const GroupEngine eng(GroundSet(4));
  CHECK(two_power_order(BitMatrix::identity(4)) == 1);
  CHECK(two_power_order(eng.gen_matrix(G::x())) == 2);
  const auto rep = verify_exponent(eng, 100, 3);
  CHECK(rep.passed());
  CHECK(rep.params.at("max_group_order_seen").get<int>() <= 32);
}
