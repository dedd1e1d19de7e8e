#pragma once

// The group G generated by the involutions 1+ad(y), y in {x, u_A, v_A, w_A},
// acting on the truncated V*.  Words are the symbolic layer; matrices serve
// only as the semantic oracle.

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "bit_matrix.hpp"
#include "report.hpp"
#include "star_algebra.hpp"

namespace leftengel {

/// The involution 1 + ad(y) for a basis symbol y.
using Generator = StarBasisElement;

struct Word {
  std::vector<Generator> letters;

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  /// Every letter is an involution, so the inverse is the reversed word.
  Word inverse() const { return {{letters.rbegin(), letters.rend()}}; }

  Word& operator+=(const Word& o) {
    letters.insert(letters.end(), o.letters.begin(), o.letters.end());
    return *this;
  }
  friend Word operator+(Word a, const Word& b) { return a += b; }
  friend bool operator==(const Word&, const Word&) = default;

  std::string to_string() const {
    std::string s;
    for (const auto& g : letters) {
      if (!s.empty()) s += ' ';
      s += g.to_string();
    }
    return s;
  }
};

/// [a, b] = a^-1 b^-1 a b.
inline Word commutator(const Word& a, const Word& b) { return a.inverse() + b.inverse() + a + b; }

/// [w_1, ..., w_m] = [[...[w_1, w_2], ...], w_m].
inline Word left_normed(std::span<const Word> ws) {
  if (ws.empty()) return {};
  Word acc = ws.front();
  for (std::size_t i = 1; i < ws.size(); ++i) acc = commutator(acc, ws[i]);
  return acc;
}

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses `x u{1,3} v{2} w{1,2,3}`; letters are separated by whitespace.
inline Word parse_word(std::string_view text, const GroundSet& gs) {
  Word w;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    const std::size_t start = i;
    const char c = text[i++];
    if (c == 'x') {
      w.letters.push_back(Generator::x());
    } else if (c == 'u' || c == 'v' || c == 'w') {
      if (i >= text.size() || text[i] != '{') throw ParseError("expected '{' after '" + std::string(1, c) + "'", i);
      ++i;
      Mask m{};
      while (true) {
        skip_ws();
        std::size_t num_start = i;
        int value = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          value = value * 10 + (text[i] - '0');
          if (value > 1000) throw ParseError("index too large", num_start);
          ++i;
        }
        if (i == num_start) throw ParseError("expected an index", i);
        if (value < 1 || value > gs.n) {
          throw ParseError("index " + std::to_string(value) + " outside ground set {1.." + std::to_string(gs.n) + "}",
                           num_start);
        }
        m.bits |= 1U << (value - 1);
        skip_ws();
        if (i < text.size() && text[i] == ',') {
          ++i;
          continue;
        }
        if (i < text.size() && text[i] == '}') {
          ++i;
          break;
        }
        throw ParseError("expected ',' or '}'", i);
      }
      const Tag tag = c == 'u' ? Tag::U : (c == 'v' ? Tag::V : Tag::W);
      w.letters.push_back({tag, m});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      throw ParseError("expected whitespace between letters", i);
    }
    skip_ws();
  }
  return w;
}

/// Canonical form (1+ad(x))^eps * r * s * t with r, s, t products over the
/// ascending mask lists u, v, w.
struct NormalForm {
  bool eps = false;
  std::vector<Mask> u;
  std::vector<Mask> v;
  std::vector<Mask> w;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;

  bool is_identity() const { return !eps && u.empty() && v.empty() && w.empty(); }

  Word to_word() const {
    Word out;
    if (eps) out.letters.push_back(Generator::x());
    for (Mask m : u) out.letters.push_back(Generator::u(m));
    for (Mask m : v) out.letters.push_back(Generator::v(m));
    for (Mask m : w) out.letters.push_back(Generator::w(m));
    return out;
  }

  nlohmann::json to_json() const {
    auto masks = [](const std::vector<Mask>& ms) {
      nlohmann::json a = nlohmann::json::array();
      for (Mask m : ms) a.push_back(m.elements());
      return a;
    };
    nlohmann::json j;
    j["eps"] = eps ? 1 : 0;
    j["u"] = masks(u);
    j["v"] = masks(v);
    j["w"] = masks(w);
    return j;
  }

  /// Compact serialization with keys in the order eps, u, v, w.
  std::string dump() const {
    auto masks = [](const std::vector<Mask>& ms) {
      nlohmann::json a = nlohmann::json::array();
      for (Mask m : ms) a.push_back(m.elements());
      return a.dump();
    };
    return std::string("{\"eps\":") + (eps ? "1" : "0") + ",\"u\":" + masks(u) + ",\"v\":" + masks(v) +
           ",\"w\":" + masks(w) + "}";
  }

  static NormalForm from_json(const nlohmann::json& j) {
    auto masks = [](const nlohmann::json& a) {
      std::vector<Mask> out;
      for (const auto& arr : a) {
        Mask m{};
        for (int e : arr) m.bits |= 1U << (e - 1);
        out.push_back(m);
      }
      return out;
    };
    NormalForm nf;
    nf.eps = j.at("eps").get<int>() != 0;
    nf.u = masks(j.at("u"));
    nf.v = masks(j.at("v"));
    nf.w = masks(j.at("w"));
    return nf;
  }
};

class CollectionBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t default_collection_budget = 1'000'000;

namespace detail {

/// For adjacent letters l t, the extra letter c with l t = t l c, if any.
/// These are the only non-commuting adjacent pairs the collection meets.
inline std::optional<Generator> swap_correction(const Generator& l, const Generator& t) {
  if (l.tag == Tag::W && t.tag == Tag::X) return Generator::u(l.mask);
  if (t.tag == Tag::X) return std::nullopt;
  auto joined = modified_union(l.mask, t.mask);
  if (!joined) return std::nullopt;
  if (l.tag == Tag::V && t.tag == Tag::U) return Generator::u(*joined);
  if (l.tag == Tag::W && t.tag == Tag::U) return Generator::v(*joined);
  if (l.tag == Tag::W && t.tag == Tag::V) return Generator::w(*joined);
  return std::nullopt;
}

inline void cancel_adjacent(std::vector<Generator>& seq) {
  std::vector<Generator> out;
  out.reserve(seq.size());
  for (const auto& g : seq) {
    if (!out.empty() && out.back() == g)
      out.pop_back();
    else
      out.push_back(g);
  }
  seq = std::move(out);
}

inline std::vector<Mask> parity_block(std::span<const Generator> letters) {
  std::map<std::uint32_t, bool> odd;
  for (const auto& g : letters) odd[g.mask.bits] = !odd[g.mask.bits];
  std::vector<Mask> out;
  for (auto [bits, o] : odd) {
    if (o) out.push_back(Mask{bits});
  }
  return out;
}

}  // namespace detail

/// Rewrites a word into normal form: x letters are collected to the left
/// first, then u letters, then v letters; w letters remain.  Full-mask u and
/// v generators are the identity in truncation and are dropped.
inline NormalForm collect(const Word& word, const GroundSet& gs, std::size_t budget = default_collection_budget) {
  std::size_t steps = 0;
  auto tick = [&] {
    if (++steps > budget) throw CollectionBudgetExceeded("collection exceeded " + std::to_string(budget) + " steps");
  };
  const Mask full = gs.full();
  auto trivial = [&](const Generator& g) { return (g.tag == Tag::U || g.tag == Tag::V) && g.mask == full; };

  std::vector<Generator> seq;
  for (const auto& g : word.letters) {
    if (!g.valid() || !gs.contains(g.mask)) throw std::invalid_argument("letter " + g.to_string() + " out of range");
    if (!trivial(g)) seq.push_back(g);
  }
  detail::cancel_adjacent(seq);

  NormalForm nf;
  // x letters, leftmost first: moving x left past w_A leaves u_A behind it.
  std::vector<Generator> rest;
  for (const auto& g : seq) {
    if (g.tag != Tag::X) {
      rest.push_back(g);
      continue;
    }
    std::vector<Generator> moved;
    moved.reserve(rest.size() * 2);
    for (const auto& l : rest) {
      tick();
      moved.push_back(l);
      if (auto c = detail::swap_correction(l, g); c && !trivial(*c)) moved.push_back(*c);
    }
    rest = std::move(moved);
    nf.eps = !nf.eps;
  }
  detail::cancel_adjacent(rest);

  // Bubble every `target` letter into the leading block, leftmost first.
  auto bubble = [&](std::vector<Generator>& s, Tag target) {
    std::size_t k = 1;
    while (true) {
      while (k < s.size() && !(s[k].tag == target && s[k - 1].tag != target)) ++k;
      if (k >= s.size()) break;
      tick();
      const Generator l = s[k - 1], t = s[k];
      s[k - 1] = t;
      s[k] = l;
      if (auto c = detail::swap_correction(l, t); c && !trivial(*c)) s.insert(s.begin() + static_cast<long>(k) + 1, *c);
      k = std::max<std::size_t>(1, k - 1);
    }
    std::size_t block = 0;
    while (block < s.size() && s[block].tag == target) ++block;
    std::vector<Mask> masks = detail::parity_block(std::span(s).first(block));
    s.erase(s.begin(), s.begin() + static_cast<long>(block));
    detail::cancel_adjacent(s);
    return masks;
  };
  nf.u = bubble(rest, Tag::U);
  nf.v = bubble(rest, Tag::V);
  nf.w = detail::parity_block(rest);
  return nf;
}

// ---------------------------------------------------------------------------
// Matrices.

/// A group element together with its inverse, both as matrices.  Inverses are
/// tracked symbolically (reversed products of involutions).
struct GroupElement {
  BitMatrix mat;
  BitMatrix inv;

  static GroupElement identity(std::size_t dim) { return {BitMatrix::identity(dim), BitMatrix::identity(dim)}; }
  GroupElement inverse() const { return {inv, mat}; }
  bool is_identity() const { return mat.is_identity(); }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b) {
    return {a.mat * b.mat, b.inv * a.inv};
  }
};

/// [a, b] = a^-1 b^-1 a b.
inline GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  return a.inverse() * b.inverse() * a * b;
}
/// a^g = g^-1 a g.
inline GroupElement conjugate(const GroupElement& a, const GroupElement& g) { return g.inverse() * a * g; }

class GroupEngine {
 public:
  /// Generator matrices are cached when D is at most this size.
  static constexpr std::size_t cache_dim_limit = 400;

  explicit GroupEngine(StarAlgebra alg) : alg_(std::move(alg)) {
    if (alg_.dim() <= cache_dim_limit) {
      ad_cache_.reserve(alg_.dim());
      for (std::size_t i = 0; i < alg_.dim(); ++i) ad_cache_.push_back(alg_.ad(alg_.element(i)));
    }
  }
  explicit GroupEngine(GroundSet gs) : GroupEngine(StarAlgebra(gs)) {}

  const StarAlgebra& algebra() const { return alg_; }
  const GroundSet& ground() const { return alg_.ground(); }
  std::size_t dim() const { return alg_.dim(); }

  BitMatrix ad(const Generator& g) const {
    if (!ad_cache_.empty()) return ad_cache_[alg_.index(g)];
    return alg_.ad(g);
  }

  /// I + ad(g); squares to I.
  BitMatrix gen_matrix(const Generator& g) const { return BitMatrix::identity(dim()) + ad(g); }
  GroupElement gen_element(const Generator& g) const {
    BitMatrix m = gen_matrix(g);
    return {m, m};
  }

  /// Ordered product of generator matrices, accumulated right to left so each
  /// step multiplies by a sparse left factor.
  BitMatrix word_matrix(const Word& w) const {
    BitMatrix m = BitMatrix::identity(dim());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
      if (!ad_cache_.empty()) {
        m += ad_cache_[alg_.index(*it)] * m;
      } else {
        m += alg_.ad(*it) * m;
      }
    }
    return m;
  }
  GroupElement word_element(const Word& w) const { return {word_matrix(w), word_matrix(w.inverse())}; }

  BitMatrix normal_form_matrix(const NormalForm& nf) const { return word_matrix(nf.to_word()); }

  NormalForm collect(const Word& w) const { return leftengel::collect(w, ground()); }

 private:
  StarAlgebra alg_;
  std::vector<BitMatrix> ad_cache_;
};

/// Uniformly random generator: tag uniform over x, u, v, w; mask uniform over
/// nonempty subsets.
template <typename Rng>
Generator random_generator(const GroundSet& gs, Rng& rng) {
  std::uniform_int_distribution<int> tag_dist(0, 3);
  std::uniform_int_distribution<std::uint32_t> mask_dist(1, gs.mask_count());
  const auto tag = static_cast<Tag>(tag_dist(rng));
  if (tag == Tag::X) return Generator::x();
  return {tag, Mask{mask_dist(rng)}};
}

template <typename Rng>
Word random_word(const GroundSet& gs, std::size_t max_len, Rng& rng) {
  std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
  Word w;
  const std::size_t len = len_dist(rng);
  for (std::size_t i = 0; i < len; ++i) w.letters.push_back(random_generator(gs, rng));
  return w;
}

// ---------------------------------------------------------------------------
// Checks.

/// Exhaustive over ordered mask pairs up to this ground size; sampled above.
inline constexpr int exhaustive_pair_limit = 5;

inline VerificationReport verify_commutator_relations(const GroupEngine& eng, std::size_t samples = 4096,
                                                      std::uint64_t seed = 0) {
  const GroundSet& gs = eng.ground();
  const bool exhaustive = gs.n <= exhaustive_pair_limit;
  nlohmann::json params{{"n", gs.n},
                        {"mode", exhaustive ? "exhaustive" : "sampled"},
                        {"exhaustive_max_n", exhaustive_pair_limit}};
  if (!exhaustive) {
    params["samples"] = samples;
    params["seed"] = seed;
  }
  return timed_check("commutator-relations", params, [&](VerificationReport& rep) {
    const std::size_t d = eng.dim();
    auto gen = [&](Tag t, Mask m) { return eng.gen_matrix({t, m}); };
    auto comm = [](const BitMatrix& a, const BitMatrix& b) { return a * b * a * b; };
    auto expect = [&](Tag t, std::optional<Mask> m) {
      return m ? gen(t, *m) : BitMatrix::identity(d);
    };
    const BitMatrix gx = eng.gen_matrix(Generator::x());

    std::vector<std::pair<Mask, Mask>> pairs;
    const auto masks = gs.nonempty_masks();
    if (exhaustive) {
      for (Mask a : masks)
        for (Mask b : masks) pairs.emplace_back(a, b);
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, masks.size() - 1);
      for (std::size_t s = 0; s < samples; ++s) pairs.emplace_back(masks[pick(rng)], masks[pick(rng)]);
    }
    for (auto [a, b] : pairs) {
      const auto ab = modified_union(a, b);
      const BitMatrix ua = gen(Tag::U, a), va = gen(Tag::V, a), wa = gen(Tag::W, a);
      const std::array<std::pair<const char*, bool>, 6> rel{{
          {"[u_A, v_B] = u_(A|_|B)", comm(ua, gen(Tag::V, b)) == expect(Tag::U, ab)},
          {"[v_A, w_B] = w_(A|_|B)", comm(va, gen(Tag::W, b)) == expect(Tag::W, ab)},
          {"[w_A, u_B] = v_(A|_|B)", comm(wa, gen(Tag::U, b)) == expect(Tag::V, ab)},
          {"[u_A, x] = 1", comm(ua, gx).is_identity()},
          {"[v_A, x] = 1", comm(va, gx).is_identity()},
          {"[w_A, x] = u_A", comm(wa, gx) == gen(Tag::U, a)},
      }};
      for (const auto& [name, ok] : rel) {
        if (!ok) return rep.fail(std::string("relation ") + name + " fails", {{"relation", name}, {"A", a.to_string()}, {"B", b.to_string()}});
      }
    }
    rep.params["pairs"] = pairs.size();
    rep.details = "six commutator relations hold on " + std::to_string(pairs.size()) + " mask pairs";
  });
}

inline VerificationReport verify_subgroup_structure(const GroupEngine& eng) {
  const GroundSet& gs = eng.ground();
  return timed_check("subgroups", {{"n", gs.n}, {"independence_n", std::min(gs.n, 3)}}, [&](VerificationReport& rep) {
    const auto masks = gs.nonempty_masks();
    for (const auto& g : eng.algebra().basis()) {
      const BitMatrix m = eng.gen_matrix(g);
      if (!(m * m).is_identity()) return rep.fail("generator is not an involution", {{"generator", g.to_string()}});
    }
    if (gs.n <= exhaustive_pair_limit) {
      for (Tag t : {Tag::U, Tag::V, Tag::W}) {
        for (Mask a : masks) {
          for (Mask b : masks) {
            const BitMatrix ga = eng.gen_matrix({t, a}), gb = eng.gen_matrix({t, b});
            if (ga * gb != gb * ga) {
              return rep.fail("family generators do not commute",
                              {{"a", Generator{t, a}.to_string()}, {"b", Generator{t, b}.to_string()}});
            }
          }
        }
      }
    }
    // Independence: distinct subsets of nontrivial generators give distinct
    // products.
    const GroupEngine small(GroundSet(std::min(gs.n, 3)));
    nlohmann::json sizes = nlohmann::json::object();
    for (Tag t : {Tag::U, Tag::V, Tag::W}) {
      const auto fam_masks = t == Tag::W ? small.ground().nonempty_masks() : small.ground().proper_masks();
      std::unordered_map<BitMatrix, std::uint32_t, BitMatrixHash> seen;
      const std::uint32_t subsets = 1U << fam_masks.size();
      for (std::uint32_t sub = 0; sub < subsets; ++sub) {
        Word w;
        for (std::size_t i = 0; i < fam_masks.size(); ++i) {
          if ((sub >> i) & 1U) w.letters.push_back({t, fam_masks[i]});
        }
        auto [it, fresh] = seen.emplace(small.word_matrix(w), sub);
        if (!fresh) {
          return rep.fail("family is not elementary abelian of full rank",
                          {{"family", std::string(1, tag_char(t))}, {"subset_a", it->second}, {"subset_b", sub}});
        }
      }
      sizes[std::string(1, tag_char(t))] = seen.size();
    }
    rep.params["family_sizes"] = sizes;
    rep.details = "generators are involutions, families commute, family sizes " + sizes.dump();
  });
}

inline VerificationReport verify_normal_form_roundtrip(const GroupEngine& eng, std::size_t samples,
                                                       std::uint64_t seed, std::size_t max_len = 64) {
  return timed_check(
      "normal-form",
      {{"n", eng.ground().n}, {"samples", samples}, {"seed", seed}, {"max_len", max_len}},
      [&](VerificationReport& rep) {
        std::mt19937_64 rng(seed);
        for (std::size_t s = 0; s < samples; ++s) {
          const Word w = random_word(eng.ground(), max_len, rng);
          const NormalForm nf = eng.collect(w);
          const BitMatrix m = eng.word_matrix(w);
          if (m != eng.normal_form_matrix(nf)) {
            return rep.fail("collected form has a different matrix", {{"word", w.to_string()}, {"normal_form", nf.to_json()}});
          }
          if (eng.collect(nf.to_word()) != nf) {
            return rep.fail("collection is not idempotent", {{"word", w.to_string()}});
          }
          if (!(eng.normal_form_matrix(eng.collect(w.inverse())) * m).is_identity()) {
            return rep.fail("reversed word is not the inverse", {{"word", w.to_string()}});
          }
        }
        rep.details = "word matrix = normal form matrix, idempotent, inverse by reversal on all samples; "
                      "full-mask u and v letters are the identity in truncation and are erased";
      });
}

/// Number of normal forms at ground size n: 2 * 2^(2^n-2) * 2^(2^n-2) * 2^(2^n-1).
inline double normal_form_count(const GroundSet& gs) {
  const double proper = static_cast<double>(gs.mask_count()) - 1;
  return std::exp2(1 + proper + proper + static_cast<double>(gs.mask_count()));
}

/// Normal forms are enumerated exhaustively when there are at most this many.
inline constexpr std::uint64_t exhaustive_normal_form_limit = 65536;

inline VerificationReport verify_normal_form_uniqueness(const GroupEngine& eng, std::size_t samples = 1024,
                                                        std::uint64_t seed = 0) {
  const GroundSet& gs = eng.ground();
  const bool exhaustive = normal_form_count(gs) <= static_cast<double>(exhaustive_normal_form_limit);
  nlohmann::json params{{"n", gs.n},
                        {"mode", exhaustive ? "exhaustive" : "sampled"},
                        {"exhaustive_limit", exhaustive_normal_form_limit}};
  if (!exhaustive) {
    params["samples"] = samples;
    params["seed"] = seed;
  }
  return timed_check("normal-form-unique", params, [&](VerificationReport& rep) {
    const auto proper = gs.proper_masks();
    const auto all = gs.nonempty_masks();
    const std::size_t bits = 1 + 2 * proper.size() + all.size();
    auto decode = [&](std::uint64_t code) {
      NormalForm nf;
      nf.eps = code & 1U;
      std::size_t b = 1;
      for (Mask m : proper)
        if ((code >> b++) & 1U) nf.u.push_back(m);
      for (Mask m : proper)
        if ((code >> b++) & 1U) nf.v.push_back(m);
      for (Mask m : all)
        if ((code >> b++) & 1U) nf.w.push_back(m);
      return nf;
    };

    std::vector<std::uint64_t> codes;
    if (exhaustive) {
      for (std::uint64_t c = 0; c < (std::uint64_t{1} << bits); ++c) codes.push_back(c);
    } else {
      std::mt19937_64 rng(seed);
      const std::uint64_t mask = bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
      std::unordered_set<std::uint64_t> chosen;
      while (chosen.size() < samples) chosen.insert(rng() & mask);
      codes.assign(chosen.begin(), chosen.end());
      std::sort(codes.begin(), codes.end());
    }
    std::unordered_map<BitMatrix, std::uint64_t, BitMatrixHash> seen;
    for (std::uint64_t c : codes) {
      auto [it, fresh] = seen.emplace(eng.normal_form_matrix(decode(c)), c);
      if (!fresh) {
        return rep.fail("two normal forms give the same element",
                        {{"first", decode(it->second).to_json()}, {"second", decode(c).to_json()}});
      }
    }
    const std::size_t k = codes.size();
    rep.params["normal_forms"] = k;
    rep.params["pairs_compared"] = k * (k - 1) / 2;
    if (exhaustive) {
      // Closure of the generating set under multiplication.
      std::vector<BitMatrix> gens;
      for (const auto& g : eng.algebra().basis()) {
        BitMatrix m = eng.gen_matrix(g);
        if (!m.is_identity()) gens.push_back(std::move(m));
      }
      std::unordered_set<BitMatrix, BitMatrixHash> group{BitMatrix::identity(eng.dim())};
      std::vector<BitMatrix> frontier{BitMatrix::identity(eng.dim())};
      while (!frontier.empty()) {
        std::vector<BitMatrix> next;
        for (const auto& m : frontier) {
          for (const auto& g : gens) {
            BitMatrix p = m * g;
            if (group.insert(p).second) next.push_back(std::move(p));
          }
        }
        frontier = std::move(next);
      }
      rep.params["group_order"] = group.size();
      if (group.size() != k) {
        return rep.fail("group order differs from the number of normal forms",
                        {{"group_order", group.size()}, {"normal_forms", k}});
      }
      rep.details = std::to_string(k) + " normal forms, pairwise distinct, |G| = " + std::to_string(group.size());
    } else {
      rep.details = std::to_string(k) + " sampled normal forms pairwise distinct";
    }
  });
}

}  // namespace leftengel
