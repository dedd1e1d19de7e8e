#pragma once

// 1 + ad(x) is a left 3-Engel element of G, while its normal closure has
// nontrivial commutators of unbounded weight across truncations.  Groups
// generated by r conjugates are nilpotent of class at most 4r + 2.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "group.hpp"
#include "report.hpp"
#include "star_algebra.hpp"

namespace leftengel {

struct EngelWitness {
  Word conjugator;
  /// b = a^g with a = 1 + ad(x).
  BitMatrix conjugate_matrix;
  /// [g,a], [g,a,a], [g,a,a,a].
  std::vector<BitMatrix> chain;
  /// [b,a] and [b,a,a].
  BitMatrix first_commutator;
  BitMatrix second_commutator;
  bool passed = false;
  /// True when [g,a,a,a] = 1 and [b,a,a] = 1 give the same verdict.
  bool formulations_agree = false;
};

inline EngelWitness engel3_check(const GroupEngine& eng, const Word& g) {
  const GroupElement a = eng.gen_element(Generator::x());
  const GroupElement ge = eng.word_element(g);
  const GroupElement b = conjugate(a, ge);
  const GroupElement c1 = commutator(b, a);
  const GroupElement c2 = commutator(c1, a);

  const GroupElement d1 = commutator(ge, a);
  const GroupElement d2 = commutator(d1, a);
  const GroupElement d3 = commutator(d2, a);

  EngelWitness w;
  w.conjugator = g;
  w.conjugate_matrix = b.mat;
  w.first_commutator = c1.mat;
  w.second_commutator = c2.mat;
  w.chain = {d1.mat, d2.mat, d3.mat};
  w.passed = c2.is_identity();
  w.formulations_agree = w.passed == d3.is_identity();
  return w;
}

enum class SweepMode { exhaustive_w, random };

/// Exhaustive mode is allowed up to this ground size (2^(2^n - 1) conjugators).
inline constexpr int exhaustive_w_limit = 4;

inline VerificationReport engel3_sweep(const GroupEngine& eng, SweepMode mode, std::size_t budget,
                                       std::uint64_t seed, std::size_t max_len = 64) {
  const GroundSet& gs = eng.ground();
  const bool exhaustive = mode == SweepMode::exhaustive_w;
  nlohmann::json params{{"n", gs.n}, {"mode", exhaustive ? "exhaustive-W" : "random"}, {"seed", seed}};
  if (!exhaustive) {
    params["budget"] = budget;
    params["max_len"] = max_len;
  }
  const std::size_t reduction_samples = std::min<std::size_t>(budget, 1000);
  params["reduction_samples"] = reduction_samples;
  return timed_check("engel", params, [&](VerificationReport& rep) {
    if (exhaustive && gs.n > exhaustive_w_limit) {
      throw std::invalid_argument("exhaustive-W sweep needs n <= " + std::to_string(exhaustive_w_limit));
    }
    std::size_t nontrivial = 0;  // conjugators with [a^g, a] != 1
    auto run = [&](const Word& g) -> bool {
      const EngelWitness w = engel3_check(eng, g);
      if (!w.first_commutator.is_identity()) ++nontrivial;
      if (!w.formulations_agree) {
        rep.fail("the two Engel formulations disagree", {{"conjugator", g.to_string()}});
        return false;
      }
      if (!w.passed) {
        rep.fail("[a^g, a, a] != 1", {{"conjugator", g.to_string()}});
        return false;
      }
      return true;
    };
    std::size_t checked = 0;
    if (exhaustive) {
      const auto masks = gs.nonempty_masks();
      for (std::uint64_t sub = 0; sub < (std::uint64_t{1} << masks.size()); ++sub) {
        Word g;
        for (std::size_t i = 0; i < masks.size(); ++i) {
          if ((sub >> i) & 1U) g.letters.push_back(Generator::w(masks[i]));
        }
        if (!run(g)) return;
        ++checked;
      }
    } else {
      std::mt19937_64 rng(seed);
      for (std::size_t s = 0; s < budget; ++s) {
        if (!run(random_word(gs, max_len, rng))) return;
        ++checked;
      }
    }
    // a^g depends only on the w-part of the normal form of g.
    std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
    const GroupElement a = eng.gen_element(Generator::x());
    for (std::size_t s = 0; s < reduction_samples; ++s) {
      const Word g = random_word(gs, max_len, rng);
      NormalForm t = eng.collect(g);
      t.eps = false;
      t.u.clear();
      t.v.clear();
      if (conjugate(a, eng.word_element(g)).mat != conjugate(a, eng.word_element(t.to_word())).mat) {
        return rep.fail("a^g differs from a^t(g)", {{"conjugator", g.to_string()}});
      }
    }
    rep.params["checked"] = checked;
    rep.params["nontrivial_first_commutators"] = nontrivial;
    rep.details = "[a^g, a, a] = 1 for " + std::to_string(checked) +
                  " conjugators (" + std::to_string(nontrivial) +
                  " with [a^g, a] != 1); both formulations agree; a^g = a^t(g) on " + std::to_string(reduction_samples) +
                  " words";
  });
}

// ---------------------------------------------------------------------------
// Conjugates of 1 + ad(x) by products of w generators.

struct ConjugateProfile {
  std::vector<Mask> masks;
  /// y = x + sum u_Ai + sum_{i<j} v_{Ai|_|Aj} + sum_{i<j<k} w_{Ai|_|Aj|_|Ak}.
  StarVector y;
  BitMatrix conjugate_matrix;
  bool matches = false;
};

inline StarVector conjugate_y(std::span<const Mask> masks) {
  StarVector y = StarBasisElement::x();
  const std::size_t m = masks.size();
  for (std::size_t i = 0; i < m; ++i) {
    y += StarBasisElement::u(masks[i]);
    for (std::size_t j = i + 1; j < m; ++j) {
      const auto ij = modified_union(masks[i], masks[j]);
      if (!ij) continue;
      y += StarBasisElement::v(*ij);
      for (std::size_t k = j + 1; k < m; ++k) {
        if (auto ijk = modified_union(*ij, masks[k])) y += StarBasisElement::w(*ijk);
      }
    }
  }
  return y;
}

inline Word w_word(std::span<const Mask> masks) {
  Word g;
  for (Mask m : masks) g.letters.push_back(Generator::w(m));
  return g;
}

inline ConjugateProfile conjugate_y_formula(const GroupEngine& eng, std::span<const Mask> masks) {
  ConjugateProfile p;
  p.masks.assign(masks.begin(), masks.end());
  p.y = conjugate_y(masks);
  p.conjugate_matrix = conjugate(eng.gen_element(Generator::x()), eng.word_element(w_word(masks))).mat;
  p.matches = p.conjugate_matrix == BitMatrix::identity(eng.dim()) + eng.algebra().ad(p.y);
  return p;
}

inline VerificationReport verify_conjugate_formula(const GroupEngine& eng, std::size_t samples, std::uint64_t seed,
                                                   std::size_t max_masks = 8) {
  return timed_check(
      "conjugate-formula",
      {{"n", eng.ground().n}, {"samples", samples}, {"seed", seed}, {"max_masks", max_masks}},
      [&](VerificationReport& rep) {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> len(0, max_masks);
        std::uniform_int_distribution<std::uint32_t> mask(1, eng.ground().mask_count());
        for (std::size_t s = 0; s < samples; ++s) {
          std::vector<Mask> ms(len(rng));
          for (auto& m : ms) m = Mask{mask(rng)};
          const ConjugateProfile p = conjugate_y_formula(eng, ms);
          if (!p.matches) {
            nlohmann::json mj = nlohmann::json::array();
            for (Mask m : ms) mj.push_back(m.to_string());
            return rep.fail("closed formula differs from explicit conjugation", {{"masks", mj}, {"y", p.y.to_string()}});
          }
        }
        rep.details = "1 + ad(y) equals the explicit conjugate on all samples";
      });
}

// ---------------------------------------------------------------------------
// Non-nilpotency certificates.

/// Letters of the chain: w_{1}, then (x, w_{2i}, w_{2i+1}) for i = 1..k.
inline std::vector<Generator> witness_letters(int k) {
  std::vector<Generator> out{Generator::w(Mask::of({1}))};
  for (int i = 1; i <= k; ++i) {
    out.push_back(Generator::x());
    out.push_back(Generator::w(Mask::of({2 * i})));
    out.push_back(Generator::w(Mask::of({2 * i + 1})));
  }
  return out;
}

/// Cross-check against the fully expanded left-normed word while it has at
/// most this many letters.
inline constexpr std::size_t witness_word_limit = 1U << 15;

inline VerificationReport witness_chain(const GroupEngine& eng, int k) {
  const GroundSet& gs = eng.ground();
  return timed_check("witness", {{"n", gs.n}, {"k", k}}, [&](VerificationReport& rep) {
    if (k < 1 || 2 * k + 1 > gs.n) throw std::invalid_argument("witness chain needs 1 <= k and 2k+1 <= n");
    const auto letters = witness_letters(k);
    const std::size_t d = eng.dim();
    auto expect_gen = [&](Tag t, Mask m) { return BitMatrix::identity(d) + eng.ad({t, m}); };

    GroupElement acc = eng.gen_element(letters[0]);
    Mask current = Mask::of({1});
    for (std::size_t pos = 1; pos < letters.size(); ++pos) {
      acc = commutator(acc, eng.gen_element(letters[pos]));
      // Step invariants: [w_B, x] = u_B, [u_B, w_C] = v_{B|_|C}, [v_B, w_C] = w_{B|_|C}.
      Tag tag{};
      switch ((pos - 1) % 3) {
        case 0: tag = Tag::U; break;
        case 1:
          tag = Tag::V;
          current.bits |= letters[pos].mask.bits;
          break;
        default:
          tag = Tag::W;
          current.bits |= letters[pos].mask.bits;
          break;
      }
      if (acc.mat != expect_gen(tag, current)) {
        return rep.fail("chain left the predicted generator",
                        {{"step", pos}, {"expected", Generator{tag, current}.to_string()}});
      }
    }
    const Mask all = Mask::range(1, 2 * k + 1);
    const BitMatrix expected = expect_gen(Tag::W, all);
    if (acc.mat != expected || acc.is_identity()) {
      return rep.fail("chain value is not 1 + ad(w_A)", {{"expected", Generator::w(all).to_string()}});
    }
    // Same commutator evaluated from its word.
    std::vector<Word> parts;
    for (const auto& g : letters) parts.push_back(Word{{g}});
    const std::size_t weight = letters.size();
    const std::size_t word_len = 3 * (std::size_t{1} << (weight - 1)) - 2;
    rep.params["weight"] = weight;
    rep.params["word_length"] = word_len;
    if (word_len <= witness_word_limit) {
      const Word w = left_normed(parts);
      if (eng.word_matrix(w) != expected) return rep.fail("expanded word disagrees with chain value", {{"word_length", w.size()}});
    }
    rep.params["witness"] = Generator::w(all).to_string();
    // The commutator has weight 3k+1 in G; its entries after the first x lie
    // in the normal closure N of a, and each x raises the N-weight by one.
    rep.params["commutator_weight"] = weight;
    rep.params["class_lower_bound"] = 3 * k;
    rep.params["normal_closure_weight_certified"] = k;
    rep.details = "[w1, x, w2, w3, ...] of weight " + std::to_string(weight) + " equals 1 + ad(" +
                  Generator::w(all).to_string() + ") != 1";
  });
}

// ---------------------------------------------------------------------------
// Subgroups generated by r conjugates.

/// Exhaustive enumeration up to this many commutator evaluations.
inline constexpr std::size_t exhaustive_commutator_limit = 1U << 16;

inline VerificationReport conjugates_class_check(const GroupEngine& eng, std::span<const Word> conjugators,
                                                 std::size_t sample_budget, std::uint64_t seed) {
  const std::size_t r = conjugators.size();
  const std::size_t bound = 4 * r + 2;
  const std::size_t weight = bound + 1;
  double evaluations = 1;
  for (std::size_t i = 0; i < weight; ++i) evaluations *= static_cast<double>(r);
  const bool exhaustive = evaluations <= static_cast<double>(exhaustive_commutator_limit);
  nlohmann::json cj = nlohmann::json::array();
  for (const auto& w : conjugators) cj.push_back(w.to_string());
  nlohmann::json params{{"n", eng.ground().n},
                        {"r", r},
                        {"conjugators", cj},
                        {"mode", exhaustive ? "exhaustive" : "sampled"},
                        {"exhaustive_limit", exhaustive_commutator_limit}};
  if (!exhaustive) {
    params["samples"] = sample_budget;
    params["seed"] = seed;
  }
  return timed_check("conjugates-class", params, [&](VerificationReport& rep) {
    if (r == 0) throw std::invalid_argument("need at least one conjugator");
    const GroupElement a = eng.gen_element(Generator::x());
    std::vector<GroupElement> h;
    for (const auto& g : conjugators) h.push_back(conjugate(a, eng.word_element(g)));

    if (exhaustive) {
      // Depth-first over all index sequences of length <= 4r+3, trivial
      // prefixes included.
      std::size_t max_nontrivial = 0;
      std::size_t evaluated = 0;
      std::size_t full_length = 0;
      std::vector<std::size_t> seq;
      nlohmann::json failure;
      auto dfs = [&](auto&& self, const GroupElement& cur, std::size_t depth) -> bool {
        if (!cur.is_identity()) max_nontrivial = std::max(max_nontrivial, depth);
        if (depth == weight) {
          ++full_length;
          if (cur.is_identity()) return true;
          failure = seq;
          return false;
        }
        for (std::size_t j = 0; j < r; ++j) {
          ++evaluated;
          seq.push_back(j);
          if (!self(self, commutator(cur, h[j]), depth + 1)) return false;
          seq.pop_back();
        }
        return true;
      };
      for (std::size_t i = 0; i < r; ++i) {
        seq = {i};
        if (!dfs(dfs, h[i], 1)) {
          return rep.fail("nontrivial commutator of weight 4r+3", {{"indices", failure}});
        }
      }
      rep.params["weight_4r+3_sequences"] = full_length;
      rep.params["class"] = max_nontrivial;
      rep.params["commutators_evaluated"] = evaluated;
      rep.details = "class " + std::to_string(max_nontrivial) + " <= " + std::to_string(bound) + "; all " +
                    std::to_string(full_length) + " weight-" + std::to_string(weight) +
                    " commutators trivial; generator commutators bound the class since truncated G is a finite 2-group";
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, r - 1);
      for (std::size_t s = 0; s < sample_budget; ++s) {
        std::vector<std::size_t> seq{pick(rng)};
        GroupElement cur = h[seq.front()];
        for (std::size_t d = 1; d < weight && !cur.is_identity(); ++d) {
          const std::size_t j = pick(rng);
          seq.push_back(j);
          cur = commutator(cur, h[j]);
        }
        if (!cur.is_identity()) return rep.fail("nontrivial commutator of weight 4r+3", {{"indices", seq}});
      }
      rep.details = "all sampled weight-" + std::to_string(weight) +
                    " commutators trivial; generator commutators bound the class since truncated G is a finite 2-group";
    }
  });
}

/// Blocks A_1 = {1..k_1}, A_2 = {k_1+1..k_2}, ... from their sizes.
inline std::vector<Mask> consecutive_blocks(std::span<const int> sizes) {
  std::vector<Mask> out;
  int next = 1;
  for (int s : sizes) {
    out.push_back(Mask::range(next, next + s - 1));
    next += s;
  }
  return out;
}

/// Conjugator w_{a_1} ... w_{a_k} over the singletons of a block.
inline Word singleton_w_word(Mask block) {
  Word g;
  for (int e : block.elements()) g.letters.push_back(Generator::w(Mask::of({e})));
  return g;
}

inline VerificationReport conjugate_block_decomposition(const GroupEngine& eng, std::span<const int> block_sizes) {
  nlohmann::json sizes = std::vector<int>(block_sizes.begin(), block_sizes.end());
  return timed_check("block-decomposition", {{"n", eng.ground().n}, {"blocks", sizes}}, [&](VerificationReport& rep) {
    int total = 0;
    for (int s : block_sizes) {
      if (s < 1) throw std::invalid_argument("block sizes must be positive");
      total += s;
    }
    if (total > eng.ground().n) throw std::invalid_argument("blocks exceed the ground set");
    const StarAlgebra& alg = eng.algebra();
    const std::vector<Mask> parts = consecutive_blocks(block_sizes);
    const GroupElement a = eng.gen_element(Generator::x());
    const auto& env = alg.enveloping();
    for (std::size_t j = 0; j < parts.size(); ++j) {
      const BitMatrix conj = conjugate(a, eng.word_element(singleton_w_word(parts[j]))).mat;
      BitMatrix expected = BitMatrix::identity(alg.dim()) + alg.ad_x();
      std::vector<int> profile(parts.size(), 0);
      for (auto [level, e] : {std::pair{1, 7}, std::pair{2, 4}, std::pair{3, 1}}) {
        profile[j] = level;
        expected += alg.elevated(env[static_cast<std::size_t>(e)], profile, parts);
      }
      if (conj != expected) {
        return rep.fail("conjugate differs from 1 + ad(x) + e7^(1) + e4^(2) + e1^(3)", {{"block", j}});
      }
    }
    rep.details = "every block conjugate equals 1 + ad(x) + e7^(1) + e4^(2) + e1^(3), so lies in 1 + Q";
  });
}

// ---------------------------------------------------------------------------
// Exponent of 1 + E*.

/// Smallest 2^j with m^(2^j) = 1, or 0 if none up to 2^max_log.
inline std::uint64_t two_power_order(const BitMatrix& m, int max_log = 10) {
  BitMatrix p = m;
  for (int j = 0; j <= max_log; ++j) {
    if (p.is_identity()) return std::uint64_t{1} << j;
    p = p * p;
  }
  return 0;
}

/// ebar^16 = 0, (1+f)^32 = 1 for random f in E*, and every sampled element
/// of G (random words and structured conjugates) has order dividing 32.
inline VerificationReport verify_exponent(const GroupEngine& eng, std::size_t samples, std::uint64_t seed) {
  VerificationReport alg_part = verify_estar_exponent(eng.algebra(), samples, seed);
  VerificationReport rep = timed_check(
      "exponent", {{"n", eng.ground().n}, {"samples", samples}, {"seed", seed}}, [&](VerificationReport& r) {
        if (alg_part.failed()) {
          r.fail(alg_part.details, alg_part.witness.value_or(nlohmann::json::object()));
          return;
        }
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        std::uint64_t max_order = 1;
        std::uniform_int_distribution<std::size_t> len(0, 8);
        std::uniform_int_distribution<std::uint32_t> mask(1, eng.ground().mask_count());
        for (std::size_t s = 0; s < samples; ++s) {
          const Word g = random_word(eng.ground(), 64, rng);
          const std::uint64_t o = two_power_order(eng.word_matrix(g), 5);
          if (o == 0) return r.fail("element of G with order not dividing 32", {{"word", g.to_string()}});
          max_order = std::max(max_order, o);

          std::vector<Mask> ms(len(rng));
          for (auto& m : ms) m = Mask{mask(rng)};
          const auto p = conjugate_y_formula(eng, ms);
          if (two_power_order(p.conjugate_matrix, 5) == 0) {
            return r.fail("conjugate of 1+ad(x) with order not dividing 32", {{"y", p.y.to_string()}});
          }
        }
        r.params["ebar_dim"] = alg_part.params["ebar_dim"];
        r.params["max_group_order_seen"] = max_order;
        r.params["max_ebar_nilpotency_index_seen"] = alg_part.params["max_nilpotency_index_seen"];
        r.details = alg_part.details + "; sampled elements of G have order dividing 32 (largest seen " +
                    std::to_string(max_order) + ")";
      });
  rep.elapsed_ms += alg_part.elapsed_ms;
  return rep;
}

}  // namespace leftengel
