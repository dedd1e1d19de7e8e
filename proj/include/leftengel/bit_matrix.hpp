#pragma once

// Dense bit-packed linear algebra over GF(2).
//
// Matrices act on row vectors from the right: v -> v * M.  Row i of a matrix
// is the image of the i-th basis vector, so a product A * B applies A first
// and B second.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace leftengel {

using word_t = std::uint64_t;
inline constexpr std::size_t word_bits = 64;

constexpr std::size_t words_for(std::size_t bits) { return (bits + word_bits - 1) / word_bits; }

namespace detail {

inline void xor_words(std::span<word_t> dst, std::span<const word_t> src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] ^= src[i];
}

inline bool all_zero(std::span<const word_t> w) {
  return std::all_of(w.begin(), w.end(), [](word_t x) { return x == 0; });
}

inline std::size_t hash_words(std::span<const word_t> w) {
  std::size_t h = 0x9e3779b97f4a7c15ULL ^ w.size();
  for (word_t x : w) {
    h ^= std::hash<word_t>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

// Calls f(index) for every set bit, in increasing order.
template <typename F>
void for_each_bit(std::span<const word_t> w, F&& f) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    word_t x = w[i];
    while (x) {
      f(i * word_bits + static_cast<std::size_t>(std::countr_zero(x)));
      x &= x - 1;
    }
  }
}

}  // namespace detail

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t length) : len_(length), words_(words_for(length), 0) {}

  std::size_t size() const { return len_; }

  bool get(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }
  void set(std::size_t i, bool value = true) {
    const word_t bit = word_t{1} << (i % word_bits);
    if (value)
      words_[i / word_bits] |= bit;
    else
      words_[i / word_bits] &= ~bit;
  }
  void flip(std::size_t i) { words_[i / word_bits] ^= word_t{1} << (i % word_bits); }

  BitVector& operator^=(const BitVector& other) {
    if (other.len_ != len_) throw std::invalid_argument("BitVector: length mismatch");
    detail::xor_words(words_, other.words_);
    return *this;
  }
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool is_zero() const { return detail::all_zero(words_); }
  std::size_t popcount() const {
    std::size_t c = 0;
    for (word_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  template <typename F>
  void for_each_set(F&& f) const { detail::for_each_bit(words_, std::forward<F>(f)); }

  std::span<const word_t> words() const { return words_; }
  std::span<word_t> words() { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t len_ = 0;
  std::vector<word_t> words_;
};

/// Square matrix over GF(2), rows packed into machine words.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t dim) : dim_(dim), stride_(words_for(dim)), data_(dim * stride_, 0) {}

  static BitMatrix zero(std::size_t dim) { return BitMatrix(dim); }
  static BitMatrix identity(std::size_t dim) {
    BitMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m.set(i, i);
    return m;
  }

  std::size_t dim() const { return dim_; }
  std::size_t stride() const { return stride_; }

  bool get(std::size_t r, std::size_t c) const {
    return (data_[r * stride_ + c / word_bits] >> (c % word_bits)) & 1U;
  }
  void set(std::size_t r, std::size_t c, bool value = true) {
    word_t& w = data_[r * stride_ + c / word_bits];
    const word_t bit = word_t{1} << (c % word_bits);
    w = value ? (w | bit) : (w & ~bit);
  }
  void flip(std::size_t r, std::size_t c) { data_[r * stride_ + c / word_bits] ^= word_t{1} << (c % word_bits); }

  std::span<const word_t> row(std::size_t r) const { return {data_.data() + r * stride_, stride_}; }
  std::span<word_t> row(std::size_t r) { return {data_.data() + r * stride_, stride_}; }

  /// All rows concatenated; padding bits are zero, so this is a faithful
  /// flattening for rank and membership computations.
  std::span<const word_t> flat() const { return data_; }

  bool is_zero() const { return detail::all_zero(data_); }
  bool is_identity() const {
    for (std::size_t r = 0; r < dim_; ++r) {
      auto w = row(r);
      for (std::size_t i = 0; i < stride_; ++i) {
        const word_t expect = (i == r / word_bits) ? (word_t{1} << (r % word_bits)) : 0;
        if (w[i] != expect) return false;
      }
    }
    return true;
  }

  std::size_t popcount() const {
    std::size_t c = 0;
    for (word_t w : data_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  BitMatrix& operator+=(const BitMatrix& other) {
    check_same(other, "mat_add");
    detail::xor_words(data_, other.data_);
    return *this;
  }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

  void check_same(const BitMatrix& other, const char* op) const {
    if (other.dim_ != dim_) {
      throw std::invalid_argument(std::string(op) + ": dimension mismatch (" + std::to_string(dim_) + " vs " +
                                  std::to_string(other.dim_) + ")");
    }
  }

 private:
  std::size_t dim_ = 0;
  std::size_t stride_ = 0;
  std::vector<word_t> data_;
};

inline BitMatrix mat_add(BitMatrix a, const BitMatrix& b) { return a += b; }
inline BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }

/// Product over GF(2).  Cost is proportional to the number of set bits in
/// `a` times the row stride, so sparse left factors are cheap.
inline BitMatrix mat_mul(const BitMatrix& a, const BitMatrix& b) {
  a.check_same(b, "mat_mul");
  BitMatrix out(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    auto dst = out.row(r);
    detail::for_each_bit(a.row(r), [&](std::size_t j) { detail::xor_words(dst, b.row(j)); });
  }
  return out;
}
inline BitMatrix operator*(const BitMatrix& a, const BitMatrix& b) { return mat_mul(a, b); }

inline BitMatrix mat_pow(BitMatrix a, std::uint64_t k) {
  BitMatrix result = BitMatrix::identity(a.dim());
  while (k) {
    if (k & 1U) result = result * a;
    k >>= 1U;
    if (k) a = a * a;
  }
  return result;
}

/// v * M for a row vector v.
inline BitVector apply(const BitVector& v, const BitMatrix& m) {
  if (v.size() != m.dim()) throw std::invalid_argument("apply: dimension mismatch");
  BitVector out(m.dim());
  v.for_each_set([&](std::size_t j) { detail::xor_words(out.words(), m.row(j)); });
  return out;
}

struct BitMatrixHash {
  std::size_t operator()(const BitMatrix& m) const { return detail::hash_words(m.flat()); }
};

/// Incremental row-echelon basis of a subspace of GF(2)^bits.
///
/// Each stored vector is reduced against all earlier ones and its pivot is
/// its lowest set bit, so reducing an input against the stored vectors in
/// insertion order clears every pivot.
class SpanBasis {
 public:
  explicit SpanBasis(std::size_t bits) : bits_(bits), stride_(words_for(bits)) {}

  /// Basis for subspaces of the dim x dim matrices.
  static SpanBasis for_matrices(std::size_t dim) { return SpanBasis(dim * words_for(dim) * word_bits); }

  std::size_t bits() const { return bits_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Reduces `v` in place; returns true if the remainder is zero.
  bool reduce(std::span<word_t> v) const {
    check(v.size());
    for (std::size_t k = 0; k < pivots_.size(); ++k) {
      const std::size_t p = pivots_[k];
      if ((v[p / word_bits] >> (p % word_bits)) & 1U) detail::xor_words(v, stored(k));
    }
    return detail::all_zero(v);
  }

  bool contains(std::span<const word_t> v) const {
    std::vector<word_t> tmp(v.begin(), v.end());
    return reduce(tmp);
  }

  /// Adds `v` to the span; returns true if the rank grew.
  bool insert(std::span<const word_t> v) {
    std::vector<word_t> tmp(v.begin(), v.end());
    if (reduce(tmp)) return false;
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < tmp.size(); ++i) {
      if (tmp[i]) {
        pivot = i * word_bits + static_cast<std::size_t>(std::countr_zero(tmp[i]));
        break;
      }
    }
    pivots_.push_back(pivot);
    data_.insert(data_.end(), tmp.begin(), tmp.end());
    return true;
  }

  bool contains(const BitMatrix& m) const { return contains(m.flat()); }
  bool insert(const BitMatrix& m) { return insert(m.flat()); }
  bool contains(const BitVector& v) const { return contains(v.words()); }
  bool insert(const BitVector& v) { return insert(v.words()); }

 private:
  std::span<const word_t> stored(std::size_t k) const { return {data_.data() + k * stride_, stride_}; }
  void check(std::size_t n) const {
    if (n != stride_) throw std::invalid_argument("SpanBasis: vector length mismatch");
  }

  std::size_t bits_;
  std::size_t stride_;
  std::vector<std::size_t> pivots_;
  std::vector<word_t> data_;
};

/// Rank of a list of matrices viewed as flattened dim^2-bit vectors.
inline std::size_t span_dimension(std::span<const BitMatrix> mats) {
  if (mats.empty()) return 0;
  auto basis = SpanBasis::for_matrices(mats.front().dim());
  for (const auto& m : mats) {
    mats.front().check_same(m, "span_dimension");
    basis.insert(m);
  }
  return basis.rank();
}

}  // namespace leftengel
