#pragma once

// The four-dimensional Lie algebra V = Fx + Fu + Fv + Fw over GF(2) and its
// associative enveloping algebra E inside End(V).

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "bit_matrix.hpp"
#include "report.hpp"

namespace leftengel {

/// Basis symbols of the seed algebra, in the fixed order x, u, v, w.
enum class Tag : std::uint8_t { X = 0, U = 1, V = 2, W = 3 };

inline constexpr std::array<Tag, 4> all_tags{Tag::X, Tag::U, Tag::V, Tag::W};

inline char tag_char(Tag t) { return "xuvw"[static_cast<int>(t)]; }

/// Element of V as a 4-bit coordinate set (bit i = coefficient of basis i).
struct SeedVector {
  std::uint8_t bits = 0;

  static SeedVector basis(Tag t) { return {static_cast<std::uint8_t>(1U << static_cast<int>(t))}; }
  bool has(Tag t) const { return (bits >> static_cast<int>(t)) & 1U; }
  bool is_zero() const { return bits == 0; }

  SeedVector& operator+=(SeedVector o) {
    bits ^= o.bits;
    return *this;
  }
  friend SeedVector operator+(SeedVector a, SeedVector b) { return a += b; }
  friend bool operator==(SeedVector, SeedVector) = default;

  std::string to_string() const {
    if (bits == 0) return "0";
    std::string s;
    for (Tag t : all_tags) {
      if (!has(t)) continue;
      if (!s.empty()) s += "+";
      s += tag_char(t);
    }
    return s;
  }
};

/// Products of basis pairs.
class SeedTable {
 public:
  /// The defining table u.v=u, v.w=w, w.u=v, u.x=0, v.x=0, w.x=u, completed
  /// by alternation (a.a=0) and the char-2 collapse of anticommutativity.
  static SeedTable standard() {
    SeedTable t;
    t.define(Tag::U, Tag::V, SeedVector::basis(Tag::U));
    t.define(Tag::V, Tag::W, SeedVector::basis(Tag::W));
    t.define(Tag::W, Tag::U, SeedVector::basis(Tag::V));
    t.define(Tag::U, Tag::X, {});
    t.define(Tag::V, Tag::X, {});
    t.define(Tag::W, Tag::X, SeedVector::basis(Tag::U));
    return t;
  }

  SeedVector at(Tag a, Tag b) const { return table_[idx(a)][idx(b)]; }

  /// Sets a.b and b.a.  Used to build deliberately corrupted tables.
  void define(Tag a, Tag b, SeedVector value) {
    table_[idx(a)][idx(b)] = value;
    table_[idx(b)][idx(a)] = value;
  }

  friend bool operator==(const SeedTable&, const SeedTable&) = default;

 private:
  static std::size_t idx(Tag t) { return static_cast<std::size_t>(t); }
  std::array<std::array<SeedVector, 4>, 4> table_{};
};

/// e_1..e_12, stored zero-based.
struct EnvelopingBasis {
  std::array<BitMatrix, 12> e;
  /// Dimension of the span of all generator products of length <= k, for
  /// k = 1, 2, ... until the span stops growing.
  std::vector<std::size_t> closure_dims;

  const BitMatrix& operator[](std::size_t i_one_based) const { return e.at(i_one_based - 1); }
};

class SeedAlgebra {
 public:
  static constexpr std::size_t dim = 4;
  /// Longest product length the enveloping closure search may need.
  static constexpr std::size_t closure_cap = 8;

  SeedAlgebra() : table_(SeedTable::standard()) {}
  explicit SeedAlgebra(SeedTable table) : table_(table) {}

  const SeedTable& table() const { return table_; }

  SeedVector multiply(SeedVector a, SeedVector b) const {
    SeedVector out;
    for (Tag s : all_tags) {
      if (!a.has(s)) continue;
      for (Tag t : all_tags) {
        if (b.has(t)) out += table_.at(s, t);
      }
    }
    return out;
  }
  SeedVector multiply(Tag a, Tag b) const { return table_.at(a, b); }

  /// Matrix of y -> y.z.
  BitMatrix ad_matrix(SeedVector z) const {
    BitMatrix m(dim);
    for (Tag s : all_tags) {
      const SeedVector img = multiply(SeedVector::basis(s), z);
      for (Tag t : all_tags) {
        if (img.has(t)) m.set(static_cast<std::size_t>(s), static_cast<std::size_t>(t));
      }
    }
    return m;
  }
  BitMatrix ad_matrix(Tag t) const { return ad_matrix(SeedVector::basis(t)); }

  EnvelopingBasis enveloping_basis() const {
    const BitMatrix ax = ad_matrix(Tag::X), au = ad_matrix(Tag::U), av = ad_matrix(Tag::V),
                    aw = ad_matrix(Tag::W);
    const BitMatrix aw2 = aw * aw;
    EnvelopingBasis b;
    b.e = {aw,       aw2,     aw2 * aw, av,      av * aw,  av * aw2,
           au,       au * aw, au * aw2, ax * av, ax * aw,  ax * aw2};

    // Breadth-first product closure: layer k+1 is spanned by layer-k basis
    // vectors times a generator.
    const std::array<BitMatrix, 4> gens{ax, au, av, aw};
    auto total = SpanBasis::for_matrices(dim);
    std::vector<BitMatrix> layer(gens.begin(), gens.end());
    for (const auto& g : gens) total.insert(g);
    b.closure_dims.push_back(total.rank());
    for (std::size_t len = 2; len <= closure_cap; ++len) {
      auto layer_span = SpanBasis::for_matrices(dim);
      std::vector<BitMatrix> next;
      for (const auto& m : layer) {
        for (const auto& g : gens) {
          BitMatrix p = m * g;
          if (layer_span.insert(p)) next.push_back(std::move(p));
        }
      }
      const std::size_t before = total.rank();
      for (const auto& m : next) total.insert(m);
      b.closure_dims.push_back(total.rank());
      layer = std::move(next);
      if (total.rank() == before) break;
    }
    return b;
  }

 private:
  SeedTable table_;
};

inline VerificationReport verify_seed_structure(const SeedAlgebra& alg) {
  return timed_check("seed-structure", {}, [&](VerificationReport& rep) {
    auto vec = [](unsigned bits) { return SeedVector{static_cast<std::uint8_t>(bits)}; };

    for (Tag a : all_tags) {
      for (Tag b : all_tags) {
        for (Tag c : all_tags) {
          const SeedVector j = alg.multiply(alg.multiply(a, b), SeedVector::basis(c)) +
                               alg.multiply(alg.multiply(b, c), SeedVector::basis(a)) +
                               alg.multiply(alg.multiply(c, a), SeedVector::basis(b));
          if (!j.is_zero()) {
            return rep.fail("Jacobi identity fails",
                            {{"triple", std::string{tag_char(a), tag_char(b), tag_char(c)}},
                             {"value", j.to_string()}});
          }
        }
      }
    }
    for (unsigned z = 0; z < 16; ++z) {
      if (!alg.multiply(vec(z), vec(z)).is_zero()) {
        return rep.fail("product is not alternating", {{"element", vec(z).to_string()}});
      }
    }
    // Trivial center: every nonzero element has a basis vector it fails to
    // commute with.
    for (unsigned z = 1; z < 16; ++z) {
      bool central = true;
      for (Tag t : all_tags) central = central && alg.multiply(vec(z), SeedVector::basis(t)).is_zero();
      if (central) return rep.fail("nonzero central element", {{"element", vec(z).to_string()}});
    }
    const std::array<Tag, 3> w_tags{Tag::U, Tag::V, Tag::W};
    for (Tag a : all_tags) {
      for (Tag b : w_tags) {
        if (alg.multiply(a, b).has(Tag::X)) {
          return rep.fail("W is not an ideal", {{"pair", std::string{tag_char(a), tag_char(b)}}});
        }
      }
    }
    // W simple: the ideal of W generated by any nonzero element is W.  Ideals
    // are computed as closed sets of the 8 elements of W.
    for (unsigned w = 2; w < 16; w += 2) {
      std::uint16_t members = static_cast<std::uint16_t>((1U << 0) | (1U << w));
      bool grew = true;
      while (grew) {
        grew = false;
        for (unsigned s = 0; s < 16; ++s) {
          if (!((members >> s) & 1U)) continue;
          for (unsigned t = 0; t < 16; ++t) {
            if (!((members >> t) & 1U)) continue;
            std::vector<unsigned> cand{s ^ t};
            for (Tag b : w_tags) cand.push_back(alg.multiply(vec(s), SeedVector::basis(b)).bits);
            for (unsigned c : cand) {
              if (!((members >> c) & 1U)) {
                members = static_cast<std::uint16_t>(members | (1U << c));
                grew = true;
              }
            }
          }
        }
      }
      const std::uint16_t all_of_w = 0x5555;  // elements with zero x-coordinate
      if (members != all_of_w) {
        return rep.fail("W is not simple", {{"generator", vec(w).to_string()}, {"ideal_mask", members}});
      }
    }
    rep.details = "Jacobi on 64 triples, alternating on 16 elements, trivial center, W a simple ideal";
  });
}

inline VerificationReport verify_enveloping_basis(const SeedAlgebra& alg) {
  return timed_check("enveloping-basis", {}, [&](VerificationReport& rep) {
    const EnvelopingBasis b = alg.enveloping_basis();
    const std::size_t indep = span_dimension(b.e);
    const std::size_t closure = b.closure_dims.back();
    rep.params["closure_cap"] = SeedAlgebra::closure_cap;
    nlohmann::json dims = b.closure_dims;
    if (indep != 12) return rep.fail("e_1..e_12 are not independent", {{"rank", indep}});
    if (closure != 12) return rep.fail("enveloping algebra has wrong dimension", {{"closure_dims", dims}});
    const bool stabilised = b.closure_dims.size() >= 2 &&
                            b.closure_dims[b.closure_dims.size() - 1] == b.closure_dims[b.closure_dims.size() - 2];
    if (!stabilised) return rep.fail("closure did not stabilise within the length cap", {{"closure_dims", dims}});
    // Every basis element lies in the closure span and vice versa.
    auto span = SpanBasis::for_matrices(SeedAlgebra::dim);
    for (const auto& m : b.e) span.insert(m);
    if (span.rank() != 12) return rep.fail("basis span mismatch", {{"rank", span.rank()}});
    rep.details = "dim E = 12, e_1..e_12 independent; closure dims by product length: " + dims.dump();
  });
}

inline VerificationReport verify_enveloping_relations(const SeedAlgebra& alg) {
  return timed_check("enveloping-relations", {}, [&](VerificationReport& rep) {
    const BitMatrix x = alg.ad_matrix(Tag::X), u = alg.ad_matrix(Tag::U), v = alg.ad_matrix(Tag::V),
                    w = alg.ad_matrix(Tag::W);
    const BitMatrix zero = BitMatrix::zero(SeedAlgebra::dim);
    const BitMatrix w3 = w * w * w;
    const std::vector<std::pair<std::string, bool>> relations{
        {"ad(x)^2 = 0", x * x == zero},
        {"ad(x)ad(u) = 0", x * u == zero},
        {"ad(v)^2 = ad(v)", v * v == v},
        {"ad(u)^2 = ad(x)ad(v)", u * u == x * v},
        {"ad(u)ad(v) = ad(u) + ad(x)ad(w)", u * v == u + x * w},
        {"ad(x) = ad(x)ad(v)", x == x * v},
        {"ad(w)^4 = 0", w3 * w == zero},
        {"ad(v)ad(w)^3 = 0", v * w3 == zero},
        {"ad(u)ad(w)^3 = 0", u * w3 == zero},
        {"ad(x)ad(w)^3 = 0", x * w3 == zero},
    };
    for (const auto& [name, ok] : relations) {
      if (!ok) return rep.fail("relation violated: " + name, {{"relation", name}});
    }
    rep.params["relations"] = relations.size();
    rep.details = "all enveloping-algebra relations hold";
  });
}

}  // namespace leftengel
