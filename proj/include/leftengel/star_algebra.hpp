#pragma once

// The set-indexed Lie algebra V* truncated to the ground set {1..n}, its
// adjoint operators, and the operator algebra E* generated by ad(x) and the
// shifted operators e(A).
//
// Basis order of V*_n: x first, then u_A for A = 1 .. 2^n-1 (as bitmasks),
// then all v_A, then all w_A.  Dimension 3(2^n - 1) + 1.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bit_matrix.hpp"
#include "report.hpp"
#include "seed_algebra.hpp"

namespace leftengel {

inline constexpr int max_ground_size = 10;

/// Subset of {1..n}; element i is bit i-1.
struct Mask {
  std::uint32_t bits = 0;

  static Mask of(std::initializer_list<int> elems) {
    Mask m;
    for (int e : elems) m.bits |= 1U << (e - 1);
    return m;
  }
  /// {lo, lo+1, ..., hi}; empty when hi < lo.
  static Mask range(int lo, int hi) {
    Mask m;
    for (int e = lo; e <= hi; ++e) m.bits |= 1U << (e - 1);
    return m;
  }

  bool empty() const { return bits == 0; }
  int size() const { return std::popcount(bits); }
  bool contains(int e) const { return (bits >> (e - 1)) & 1U; }
  bool disjoint(Mask o) const { return (bits & o.bits) == 0; }
  bool subset_of(Mask o) const { return (bits & ~o.bits) == 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b) + 1);
    return out;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

  friend auto operator<=>(Mask, Mask) = default;
};

/// A disjoint union, or nullopt when the sets overlap (the zero vector).
inline std::optional<Mask> modified_union(Mask a, Mask b) {
  if (!a.disjoint(b)) return std::nullopt;
  return Mask{a.bits | b.bits};
}

struct GroundSet {
  int n = 1;

  explicit GroundSet(int size) : n(size) {
    if (size < 1 || size > max_ground_size) {
      throw std::invalid_argument("ground set size must lie in [1, " + std::to_string(max_ground_size) +
                                  "], got " + std::to_string(size));
    }
  }

  Mask full() const { return Mask{(1U << n) - 1}; }
  std::uint32_t mask_count() const { return (1U << n) - 1; }  // nonempty subsets
  std::size_t star_dim() const { return 3 * static_cast<std::size_t>(mask_count()) + 1; }
  /// 12 (2^n - 2) + 3 + 1.
  std::size_t estar_dim() const { return 12 * (std::size_t{1} << n) - 20; }
  bool contains(Mask m) const { return m.subset_of(full()); }

  /// All nonempty subsets in ascending mask order.
  std::vector<Mask> nonempty_masks() const {
    std::vector<Mask> out;
    for (std::uint32_t b = 1; b <= mask_count(); ++b) out.push_back(Mask{b});
    return out;
  }
  /// Nonempty proper subsets in ascending mask order.
  std::vector<Mask> proper_masks() const {
    std::vector<Mask> out;
    for (std::uint32_t b = 1; b < mask_count(); ++b) out.push_back(Mask{b});
    return out;
  }
};

/// One of x, u_A, v_A, w_A.  The mask is empty exactly for x.
struct StarBasisElement {
  Tag tag = Tag::X;
  Mask mask{};

  static StarBasisElement x() { return {Tag::X, Mask{}}; }
  static StarBasisElement u(Mask m) { return {Tag::U, m}; }
  static StarBasisElement v(Mask m) { return {Tag::V, m}; }
  static StarBasisElement w(Mask m) { return {Tag::W, m}; }

  bool valid() const { return (tag == Tag::X) == mask.empty(); }

  std::string to_string() const {
    if (tag == Tag::X) return "x";
    return std::string(1, tag_char(tag)) + mask.to_string();
  }

  friend auto operator<=>(const StarBasisElement&, const StarBasisElement&) = default;
};

/// Sparse element of V*: the set of basis elements with coefficient 1,
/// kept sorted and duplicate-free.
class StarVector {
 public:
  StarVector() = default;
  StarVector(StarBasisElement b) : terms_{b} {}  // NOLINT(google-explicit-constructor)

  const std::vector<StarBasisElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  StarVector& operator+=(StarBasisElement b) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), b);
    if (it != terms_.end() && *it == b)
      terms_.erase(it);
    else
      terms_.insert(it, b);
    return *this;
  }
  StarVector& operator+=(const StarVector& o) {
    for (const auto& b : o.terms_) *this += b;
    return *this;
  }
  friend StarVector operator+(StarVector a, const StarVector& b) { return a += b; }
  friend bool operator==(const StarVector&, const StarVector&) = default;

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
      if (!s.empty()) s += " + ";
      s += t.to_string();
    }
    return s;
  }

 private:
  std::vector<StarBasisElement> terms_;
};

class StarAlgebra {
 public:
  explicit StarAlgebra(GroundSet gs, SeedAlgebra seed = {})
      : gs_(gs), seed_(std::move(seed)), dim_(gs.star_dim()), env_(seed_.enveloping_basis()) {}

  const GroundSet& ground() const { return gs_; }
  int n() const { return gs_.n; }
  std::size_t dim() const { return dim_; }
  const SeedAlgebra& seed() const { return seed_; }
  /// The seed operators e_1..e_12 (zero-based storage).
  const EnvelopingBasis& enveloping() const { return env_; }

  std::size_t index(StarBasisElement b) const {
    if (!b.valid() || !gs_.contains(b.mask)) {
      throw std::invalid_argument("basis element " + b.to_string() + " is not in V*_" + std::to_string(gs_.n));
    }
    if (b.tag == Tag::X) return 0;
    return 1 + (static_cast<std::size_t>(b.tag) - 1) * gs_.mask_count() + (b.mask.bits - 1);
  }

  StarBasisElement element(std::size_t i) const {
    if (i == 0) return StarBasisElement::x();
    const std::size_t k = i - 1;
    const auto tag = static_cast<Tag>(1 + k / gs_.mask_count());
    return {tag, Mask{static_cast<std::uint32_t>(k % gs_.mask_count() + 1)}};
  }

  std::vector<StarBasisElement> basis() const {
    std::vector<StarBasisElement> out;
    out.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) out.push_back(element(i));
    return out;
  }

  /// z_A . t_B = (zt)_{A |_| B}, with x carrying no index and acting by
  /// z_A . x = (zx)_A.
  StarVector multiply(StarBasisElement a, StarBasisElement b) const {
    const SeedVector prod = seed_.multiply(a.tag, b.tag);
    StarVector out;
    if (prod.is_zero()) return out;
    Mask target{};
    if (a.tag != Tag::X && b.tag != Tag::X) {
      auto m = modified_union(a.mask, b.mask);
      if (!m) return out;
      target = *m;
    } else {
      target = Mask{a.mask.bits | b.mask.bits};  // at most one side carries a mask
    }
    add_reindexed(out, prod, target);
    return out;
  }

  StarVector multiply(const StarVector& a, const StarVector& b) const {
    StarVector out;
    for (const auto& s : a.terms()) {
      for (const auto& t : b.terms()) out += multiply(s, t);
    }
    return out;
  }

  BitVector to_bits(const StarVector& v) const {
    BitVector out(dim_);
    for (const auto& t : v.terms()) out.flip(index(t));
    return out;
  }
  StarVector from_bits(const BitVector& bits) const {
    StarVector out;
    bits.for_each_set([&](std::size_t i) { out += element(i); });
    return out;
  }

  /// Matrix of right multiplication by g.
  BitMatrix ad(StarBasisElement g) const {
    BitMatrix m(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      const StarVector img = multiply(element(i), g);
      for (const auto& t : img.terms()) m.flip(i, index(t));
    }
    return m;
  }
  BitMatrix ad(const StarVector& y) const {
    BitMatrix m(dim_);
    for (const auto& t : y.terms()) m += ad(t);
    return m;
  }
  BitMatrix ad_x() const { return ad(StarBasisElement::x()); }

  /// e(A): z_B -> (z e)_{B |_| A} for z in {u, v, w} and x -> (x e)_A, where
  /// `e` is a 4x4 operator on the seed algebra whose images lie in W.
  BitMatrix e_of_A(const BitMatrix& e, Mask a) const {
    if (e.dim() != SeedAlgebra::dim) throw std::invalid_argument("e_of_A: seed operator must be 4x4");
    if (a.empty() || !gs_.contains(a)) throw std::invalid_argument("e_of_A: mask must be a nonempty subset");
    BitMatrix out(dim_);
    add_e_of_A(out, e, a);
    return out;
  }

  /// Sum of e(B_1 u ... u B_r) over B_j subset of A_j with |B_j| = profile[j].
  /// Profiles exceeding a part's size contribute an empty sum.
  BitMatrix elevated(const BitMatrix& e, std::span<const int> profile, std::span<const Mask> parts) const {
    if (profile.size() != parts.size()) throw std::invalid_argument("elevated: profile/parts length mismatch");
    bool nonzero_profile = false;
    for (std::size_t j = 0; j < parts.size(); ++j) {
      if (profile[j] < 0) throw std::invalid_argument("elevated: negative profile entry");
      nonzero_profile = nonzero_profile || profile[j] > 0;
      if (!gs_.contains(parts[j])) throw std::invalid_argument("elevated: part outside ground set");
      for (std::size_t k = 0; k < j; ++k) {
        if (!parts[j].disjoint(parts[k])) throw std::invalid_argument("elevated: parts overlap");
      }
    }
    if (!nonzero_profile) throw std::invalid_argument("elevated: profile must not be all zero");

    BitMatrix out(dim_);
    std::vector<std::vector<Mask>> choices(parts.size());
    for (std::size_t j = 0; j < parts.size(); ++j) {
      for (std::uint32_t sub = parts[j].bits;; sub = (sub - 1) & parts[j].bits) {
        if (std::popcount(sub) == profile[j]) choices[j].push_back(Mask{sub});
        if (sub == 0) break;
      }
      if (choices[j].empty()) return out;
    }
    std::vector<std::size_t> pick(parts.size(), 0);
    while (true) {
      Mask u{};
      for (std::size_t j = 0; j < parts.size(); ++j) u.bits |= choices[j][pick[j]].bits;
      add_e_of_A(out, e, u);
      std::size_t j = 0;
      while (j < parts.size() && ++pick[j] == choices[j].size()) pick[j++] = 0;
      if (j == parts.size()) break;
    }
    return out;
  }

 private:
  void add_reindexed(StarVector& out, SeedVector v, Mask m) const {
    for (Tag t : all_tags) {
      if (!v.has(t)) continue;
      if (t == Tag::X) {
        if (m.empty()) {
          out += StarBasisElement::x();
          continue;
        }
        throw std::logic_error("product has an x-component on an indexed term");
      }
      out += StarBasisElement{t, m};
    }
  }

  void add_e_of_A(BitMatrix& out, const BitMatrix& e, Mask a) const {
    auto image = [&](Tag z) {
      SeedVector v;
      for (Tag t : all_tags) {
        if (e.get(static_cast<std::size_t>(z), static_cast<std::size_t>(t))) v += SeedVector::basis(t);
      }
      if (v.has(Tag::X)) throw std::logic_error("seed operator image has an x-component");
      return v;
    };
    auto put = [&](std::size_t row, SeedVector v, Mask m) {
      for (Tag t : {Tag::U, Tag::V, Tag::W}) {
        if (v.has(t)) out.flip(row, index({t, m}));
      }
    };
    put(0, image(Tag::X), a);
    for (Tag z : {Tag::U, Tag::V, Tag::W}) {
      const SeedVector img = image(z);
      if (img.is_zero()) continue;
      for (Mask b : gs_.nonempty_masks()) {
        if (auto c = modified_union(b, a)) put(index({z, b}), img, *c);
      }
    }
  }

  GroundSet gs_;
  SeedAlgebra seed_;
  std::size_t dim_;
  EnvelopingBasis env_;
};

// ---------------------------------------------------------------------------
// Checks on the operator ad(x).

inline VerificationReport verify_adx_sandwich(const StarAlgebra& alg) {
  return timed_check("adx-sandwich", {{"n", alg.n()}, {"dim", alg.dim()}}, [&](VerificationReport& rep) {
    const BitMatrix ax = alg.ad_x();
    if (!(ax * ax).is_zero()) return rep.fail("ad(x)^2 != 0", {{"y", "x"}});
    for (const auto& y : alg.basis()) {
      if (!(ax * alg.ad(y) * ax).is_zero()) {
        return rep.fail("ad(x) ad(y) ad(x) != 0", {{"y", y.to_string()}});
      }
    }
    rep.details = "ad(x)^2 = 0 and ad(x)ad(y)ad(x) = 0 for all " + std::to_string(alg.dim()) + " basis y";
  });
}

// ---------------------------------------------------------------------------
// Lower central series of finitely generated subalgebras.

struct LieClass {
  std::size_t nilpotency_class = 0;
  /// dims[k-1] = dimension of the span of left-normed products of weight k.
  std::vector<std::size_t> layer_dims;
};

namespace detail {

inline BitVector right_multiply(const StarAlgebra& alg, const BitVector& a, StarBasisElement g) {
  BitVector out(alg.dim());
  a.for_each_set([&](std::size_t i) {
    const StarVector img = alg.multiply(alg.element(i), g);
    for (const auto& t : img.terms()) out.flip(alg.index(t));
  });
  return out;
}

}  // namespace detail

/// Span-based layers: L_1 = span(gens), L_{k+1} = span(L_k . gens).
inline LieClass lower_central_class(const StarAlgebra& alg, std::span<const StarBasisElement> gens) {
  LieClass out;
  std::vector<BitVector> layer;
  SpanBasis first(alg.dim());
  for (const auto& g : gens) {
    BitVector v = alg.to_bits(g);
    if (first.insert(v)) layer.push_back(std::move(v));
  }
  const std::size_t cap = alg.dim() + 1;
  while (!layer.empty() && out.layer_dims.size() < cap) {
    out.layer_dims.push_back(layer.size());
    SpanBasis span(alg.dim());
    std::vector<BitVector> next;
    for (const auto& b : layer) {
      for (const auto& g : gens) {
        BitVector p = detail::right_multiply(alg, b, g);
        if (span.insert(p)) next.push_back(std::move(p));
      }
    }
    layer = std::move(next);
  }
  out.nilpotency_class = out.layer_dims.size();
  return out;
}

/// Largest weight of a nonzero left-normed product of generators, by direct
/// enumeration up to `max_weight`.
inline std::size_t max_nonzero_left_normed_weight(const StarAlgebra& alg, std::span<const StarBasisElement> gens,
                                                  std::size_t max_weight) {
  std::size_t best = 0;
  auto dfs = [&](auto&& self, const StarVector& cur, std::size_t weight) -> void {
    best = std::max(best, weight);
    if (weight == max_weight) return;
    for (const auto& g : gens) {
      StarVector next = alg.multiply(cur, StarVector(g));
      if (!next.is_zero()) self(self, next, weight + 1);
    }
  };
  for (const auto& g : gens) dfs(dfs, StarVector(g), 1);
  return best;
}

inline VerificationReport verify_local_nilpotency_bound(const StarAlgebra& alg,
                                                        std::span<const StarBasisElement> gens) {
  nlohmann::json names = nlohmann::json::array();
  for (const auto& g : gens) names.push_back(g.to_string());
  return timed_check("local-nilpotency", {{"n", alg.n()}, {"gens", names}}, [&](VerificationReport& rep) {
    std::size_t r = 0, s = 0, t = 0;
    for (const auto& g : gens) {
      if (g.tag == Tag::U) ++r;
      if (g.tag == Tag::V) ++s;
      if (g.tag == Tag::W) ++t;
    }
    // A single nonzero generator already has class 1.
    const std::size_t bound = std::max<std::size_t>(1, 2 * (r + s + t));
    const LieClass lc = lower_central_class(alg, gens);
    const std::size_t brute = max_nonzero_left_normed_weight(alg, gens, bound + 1);
    rep.params["bound"] = bound;
    rep.params["class"] = lc.nilpotency_class;
    nlohmann::json dims = lc.layer_dims;
    if (brute != lc.nilpotency_class) {
      return rep.fail("span layers disagree with enumerated left-normed products",
                      {{"span_class", lc.nilpotency_class}, {"enumerated", brute}, {"layer_dims", dims}});
    }
    if (lc.nilpotency_class > bound) {
      return rep.fail("class exceeds 2(r+s+t)", {{"class", lc.nilpotency_class}, {"layer_dims", dims}});
    }
    rep.details = "class " + std::to_string(lc.nilpotency_class) + " <= " + std::to_string(bound) +
                  "; layer dims " + dims.dump();
  });
}

// ---------------------------------------------------------------------------
// The operator algebra E*.

struct EStarBasis {
  std::vector<BitMatrix> ops;
  std::vector<std::string> labels;
};

/// Generators of E*: ad(x) and every nonzero e_i(A).
inline EStarBasis estar_generators(const StarAlgebra& alg) {
  EStarBasis g;
  g.ops.push_back(alg.ad_x());
  g.labels.emplace_back("ad(x)");
  for (std::size_t i = 1; i <= 12; ++i) {
    for (Mask a : alg.ground().nonempty_masks()) {
      BitMatrix m = alg.e_of_A(alg.enveloping()[i], a);
      if (m.is_zero()) continue;
      g.ops.push_back(std::move(m));
      g.labels.push_back("e" + std::to_string(i) + a.to_string());
    }
  }
  return g;
}

/// Candidate basis: ad(x), e_i(A) for proper A, and e_1, e_2, e_3 of the
/// full set.
inline EStarBasis estar_basis(const StarAlgebra& alg) {
  EStarBasis b;
  b.ops.push_back(alg.ad_x());
  b.labels.emplace_back("ad(x)");
  for (std::size_t i = 1; i <= 12; ++i) {
    for (Mask a : alg.ground().proper_masks()) {
      b.ops.push_back(alg.e_of_A(alg.enveloping()[i], a));
      b.labels.push_back("e" + std::to_string(i) + a.to_string());
    }
  }
  for (std::size_t i = 1; i <= 3; ++i) {
    b.ops.push_back(alg.e_of_A(alg.enveloping()[i], alg.ground().full()));
    b.labels.push_back("e" + std::to_string(i) + alg.ground().full().to_string());
  }
  return b;
}

inline VerificationReport verify_estar_basis(const StarAlgebra& alg) {
  const GroundSet& gs = alg.ground();
  return timed_check("estar-basis", {{"n", gs.n}, {"expected_dim", gs.estar_dim()}}, [&](VerificationReport& rep) {
    const Mask full = gs.full();
    if (!alg.ad(StarBasisElement::u(full)).is_zero() || !alg.ad(StarBasisElement::v(full)).is_zero()) {
      return rep.fail("ad(u_full) or ad(v_full) is nonzero", {{"mask", full.to_string()}});
    }
    // The extra basis element is ad(x); ad(w_full) coincides with e_1(full).
    const bool w_full_is_e1 = alg.ad(StarBasisElement::w(full)) == alg.e_of_A(alg.enveloping()[1], full);
    if (!w_full_is_e1) return rep.fail("ad(w_full) != e1(full)", {{"mask", full.to_string()}});
    for (std::size_t i = 4; i <= 12; ++i) {
      if (!alg.e_of_A(alg.enveloping()[i], full).is_zero()) {
        return rep.fail("e_i(full) is nonzero for i >= 4", {{"i", i}});
      }
    }

    const EStarBasis basis = estar_basis(alg);
    auto span = SpanBasis::for_matrices(alg.dim());
    for (std::size_t k = 0; k < basis.ops.size(); ++k) {
      if (!span.insert(basis.ops[k])) {
        return rep.fail("candidate basis is linearly dependent", {{"element", basis.labels[k]}});
      }
    }
    rep.params["dim"] = span.rank();
    if (span.rank() != gs.estar_dim()) {
      return rep.fail("dimension mismatch", {{"dim", span.rank()}, {"expected", gs.estar_dim()}});
    }
    const EStarBasis gens = estar_generators(alg);
    for (std::size_t g = 0; g < gens.ops.size(); ++g) {
      if (!span.contains(gens.ops[g])) return rep.fail("generator outside span", {{"generator", gens.labels[g]}});
    }
    std::size_t products = 0;
    for (std::size_t b = 0; b < basis.ops.size(); ++b) {
      for (std::size_t g = 0; g < gens.ops.size(); ++g) {
        for (bool left : {false, true}) {
          const BitMatrix p = left ? gens.ops[g] * basis.ops[b] : basis.ops[b] * gens.ops[g];
          ++products;
          if (!p.is_zero() && !span.contains(p)) {
            return rep.fail("span not closed under multiplication",
                            {{"basis", basis.labels[b]}, {"generator", gens.labels[g]}, {"side", left ? "left" : "right"}});
          }
        }
      }
    }
    rep.params["products_checked"] = products;
    rep.details = "dim E* = " + std::to_string(span.rank()) +
                  " with ad(x) as the extra basis element; ad(w_full) = e1(full) confirmed; closed under " +
                  std::to_string(gens.ops.size()) + " generators";
  });
}

/// Operators e_i(A), all nonempty A, dropping the ones that vanish.  Spans
/// the subalgebra E-bar.
inline EStarBasis ebar_spanning_set(const StarAlgebra& alg) {
  EStarBasis g = estar_generators(alg);
  g.ops.erase(g.ops.begin());
  g.labels.erase(g.labels.begin());
  return g;
}

/// Random GF(2) combination of the given operators.
template <typename Rng>
BitMatrix random_combination(std::span<const BitMatrix> ops, std::size_t dim, Rng& rng) {
  BitMatrix m(dim);
  std::bernoulli_distribution coin(0.5);
  for (const auto& op : ops) {
    if (coin(rng)) m += op;
  }
  return m;
}

/// Nilpotency of E-bar and the exponent of 1 + E* on random samples:
/// ebar^16 = 0, f^2 in E-bar and (1+f)^32 = 1 for f = eps ad(x) + ebar.
inline VerificationReport verify_estar_exponent(const StarAlgebra& alg, std::size_t samples, std::uint64_t seed) {
  return timed_check(
      "estar-exponent", {{"n", alg.n()}, {"samples", samples}, {"seed", seed}}, [&](VerificationReport& rep) {
        std::mt19937_64 rng(seed);
        const EStarBasis ebar = ebar_spanning_set(alg);
        auto ebar_span = SpanBasis::for_matrices(alg.dim());
        for (const auto& m : ebar.ops) ebar_span.insert(m);
        const BitMatrix ax = alg.ad_x();
        const BitMatrix id = BitMatrix::identity(alg.dim());
        std::bernoulli_distribution coin(0.5);
        std::size_t max_index = 0;  // largest k with ebar^k != 0 seen
        for (std::size_t s = 0; s < samples; ++s) {
          const BitMatrix e = random_combination<std::mt19937_64>(ebar.ops, alg.dim(), rng);
          if (!mat_pow(e, 16).is_zero()) return rep.fail("ebar^16 != 0", {{"sample", s}});
          BitMatrix p = e;
          std::size_t k = 0;
          while (!p.is_zero()) {
            ++k;
            p = p * e;
          }
          max_index = std::max(max_index, k);

          const bool eps = coin(rng);
          const BitMatrix f = eps ? e + ax : e;
          if (!ebar_span.contains(f * f)) return rep.fail("f^2 not in E-bar", {{"sample", s}, {"eps", eps}});
          if (!mat_pow(id + f, 32).is_identity()) return rep.fail("(1+f)^32 != 1", {{"sample", s}, {"eps", eps}});
        }
        rep.params["ebar_dim"] = ebar_span.rank();
        rep.params["max_nilpotency_index_seen"] = max_index;
        rep.details = "ebar^16 = 0 and (1+f)^32 = 1 on all samples; largest observed nilpotency index of ebar " +
                      std::to_string(max_index);
      });
}

// ---------------------------------------------------------------------------
// Elevated operators and the subalgebra Q.

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

/// A_j = {3j-2, 3j-1, 3j} for j = 1..r.
inline std::vector<Mask> triple_parts(int r) {
  std::vector<Mask> parts;
  for (int j = 1; j <= r; ++j) parts.push_back(Mask::range(3 * j - 2, 3 * j));
  return parts;
}

/// All profiles in {0..max}^r other than zero, in lexicographic order.
inline std::vector<std::vector<int>> nonzero_profiles(int r, int max_entry) {
  std::vector<std::vector<int>> out;
  std::vector<int> p(static_cast<std::size_t>(r), 0);
  while (true) {
    std::size_t j = 0;
    while (j < p.size() && ++p[j] > max_entry) p[j++] = 0;
    if (j == p.size()) break;
    out.push_back(p);
  }
  return out;
}

struct QAlgebra {
  std::vector<BitMatrix> gens;
  std::vector<std::string> labels;
  /// dims[k-1] = dim Q^k until the first zero power.
  std::vector<std::size_t> power_dims;
};

/// Spanning set of Q: ad(x) and e^(p) for e in e_1..e_12 and every profile
/// with entries at most 3.
inline QAlgebra q_spanning_set(const StarAlgebra& alg, std::span<const Mask> parts) {
  QAlgebra q;
  q.gens.push_back(alg.ad_x());
  q.labels.emplace_back("ad(x)");
  for (const auto& p : nonzero_profiles(static_cast<int>(parts.size()), 3)) {
    for (std::size_t i = 1; i <= 12; ++i) {
      BitMatrix m = alg.elevated(alg.enveloping()[i], p, parts);
      if (m.is_zero()) continue;
      q.gens.push_back(std::move(m));
      nlohmann::json pj = p;
      q.labels.push_back("e" + std::to_string(i) + "^" + pj.dump());
    }
  }
  return q;
}

/// Q^1, Q^2, ... until zero or `max_power`.
inline std::vector<std::size_t> q_power_dims(const StarAlgebra& alg, const QAlgebra& q, std::size_t max_power) {
  std::vector<std::size_t> dims;
  std::vector<BitMatrix> layer;
  auto first = SpanBasis::for_matrices(alg.dim());
  for (const auto& g : q.gens) {
    if (first.insert(g)) layer.push_back(g);
  }
  while (!layer.empty() && dims.size() < max_power) {
    dims.push_back(layer.size());
    auto span = SpanBasis::for_matrices(alg.dim());
    std::vector<BitMatrix> next;
    for (const auto& b : layer) {
      for (const auto& g : q.gens) {
        BitMatrix p = b * g;
        if (!p.is_zero() && span.insert(p)) next.push_back(std::move(p));
      }
    }
    layer = std::move(next);
  }
  if (layer.empty()) dims.push_back(0);
  return dims;
}

inline VerificationReport verify_elevated_algebra(const StarAlgebra& alg, int r) {
  return timed_check("elevated-algebra", {{"n", alg.n()}, {"r", r}}, [&](VerificationReport& rep) {
    if (r < 1 || 3 * r > alg.n()) {
      rep.status = Status::skipped;
      rep.details = "needs 1 <= r and 3r <= n";
      return;
    }
    const std::vector<Mask> parts = triple_parts(r);
    const auto profiles = nonzero_profiles(r, 3);
    const auto& env = alg.enveloping();

    // (i) e^(p) f^(q) = prod_j C(p_j+q_j, p_j) (ef)^(p+q).
    std::vector<std::vector<BitMatrix>> cache(13);
    for (std::size_t i = 1; i <= 12; ++i) {
      for (const auto& p : profiles) cache[i].push_back(alg.elevated(env[i], p, parts));
    }
    std::size_t identities = 0;
    for (std::size_t i = 1; i <= 12; ++i) {
      for (std::size_t j = 1; j <= 12; ++j) {
        const BitMatrix ef = env[i] * env[j];
        for (std::size_t a = 0; a < profiles.size(); ++a) {
          for (std::size_t b = 0; b < profiles.size(); ++b) {
            std::vector<int> sum(static_cast<std::size_t>(r));
            bool odd = true;
            for (std::size_t k = 0; k < sum.size(); ++k) {
              sum[k] = profiles[a][k] + profiles[b][k];
              odd = odd && (binomial(sum[k], profiles[a][k]) % 2 == 1);
            }
            const BitMatrix lhs = cache[i][a] * cache[j][b];
            const BitMatrix rhs = odd ? alg.elevated(ef, sum, parts) : BitMatrix(alg.dim());
            ++identities;
            if (lhs != rhs) {
              return rep.fail("binomial product identity fails", {{"i", i},
                                                                   {"j", j},
                                                                   {"p", profiles[a]},
                                                                   {"q", profiles[b]}});
            }
          }
        }
      }
    }
    rep.params["identities_checked"] = identities;

    // (ii) parity facts behind closure of Q.
    for (int i = 1; i <= 3; ++i) {
      if (binomial(3 + i, 3) % 2 != 0) return rep.fail("C(3+i,3) is odd", {{"i", i}});
    }
    if (binomial(4, 2) % 2 != 0 || binomial(2, 1) % 2 != 0) return rep.fail("C(4,2) or C(2,1) is odd", {});
    if (binomial(3, 2) % 2 != 1) return rep.fail("C(3,2) is even", {});

    // (iii) the spanning set of Q is closed under products.
    const QAlgebra q = q_spanning_set(alg, parts);
    auto span = SpanBasis::for_matrices(alg.dim());
    for (const auto& g : q.gens) span.insert(g);
    for (std::size_t a = 0; a < q.gens.size(); ++a) {
      for (std::size_t b = 0; b < q.gens.size(); ++b) {
        const BitMatrix p = q.gens[a] * q.gens[b];
        if (!p.is_zero() && !span.contains(p)) {
          return rep.fail("Q is not closed under products", {{"left", q.labels[a]}, {"right", q.labels[b]}});
        }
      }
    }
    rep.params["q_dim"] = span.rank();

    // (iv) Q^(4r+2) = 0.
    const std::size_t bound = 4 * static_cast<std::size_t>(r) + 2;
    const auto dims = q_power_dims(alg, q, bound + 1);
    nlohmann::json dj = dims;
    rep.params["power_dims"] = dj;
    if (dims.back() != 0 || dims.size() > bound) {
      return rep.fail("Q^(4r+2) != 0", {{"power_dims", dj}});
    }
    rep.details = "binomial identity on " + std::to_string(identities) + " operator pairs; Q closed, dim " +
                  std::to_string(span.rank()) + "; Q^" + std::to_string(dims.size()) + " = 0 (bound " +
                  std::to_string(bound) + ")";
  });
}

}  // namespace leftengel
