#pragma once

#include <cstdint>
#include <vector>

#include "mtkit/errors.hpp"

namespace mtkit {

using Exponents = std::vector<uint64_t>;

/// Finite abelian group given as an explicit direct product of cyclic
/// factors (order-1 factors allowed, so towers keep a fixed coordinate
/// shape). Elements are exponent vectors, 0 <= e_i < d_i; enumeration is
/// lexicographic with the last coordinate fastest, which fixes a canonical
/// index for every element.
class FiniteAbelianGroup {
 public:
  FiniteAbelianGroup() = default;
  explicit FiniteAbelianGroup(std::vector<uint64_t> factors) : factors_(std::move(factors)) {
    order_ = 1;
    for (auto d : factors_) {
      if (d < 1) throw ConfigError("cyclic factor must be >= 1");
      order_ *= d;
    }
    strides_.assign(factors_.size(), 1);
    for (size_t i = factors_.size(); i-- > 1;)
      strides_[i - 1] = strides_[i] * factors_[i];
  }

  const std::vector<uint64_t>& factors() const { return factors_; }
  size_t rank() const { return factors_.size(); }
  uint64_t order() const { return order_; }

  uint64_t index_of(const Exponents& e) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) idx += (e[i] % factors_[i]) * strides_[i];
    return idx;
  }
  Exponents element(uint64_t idx) const {
    Exponents e(factors_.size());
    for (size_t i = 0; i < factors_.size(); ++i) {
      e[i] = idx / strides_[i];
      idx %= strides_[i];
    }
    return e;
  }

  uint64_t add(uint64_t a, uint64_t b) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
      uint64_t ea = a / strides_[i] % factors_[i];
      uint64_t eb = b / strides_[i] % factors_[i];
      idx += ((ea + eb) % factors_[i]) * strides_[i];
    }
    return idx;
  }
  uint64_t neg(uint64_t a) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
      uint64_t ea = a / strides_[i] % factors_[i];
      idx += ((factors_[i] - ea) % factors_[i]) * strides_[i];
    }
    return idx;
  }
  uint64_t sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }
  /// k-fold sum of the element at index a.
  uint64_t scale(uint64_t a, uint64_t k) const {
    uint64_t idx = 0;
    for (size_t i = 0; i < factors_.size(); ++i) {
      uint64_t ea = a / strides_[i] % factors_[i];
      idx += ((unsigned __int128)ea * (k % factors_[i]) % factors_[i]) * strides_[i];
    }
    return idx;
  }
  uint64_t element_order(uint64_t a) const {
    uint64_t n = 1, x = a;
    while (x != 0) {
      x = add(x, a);
      ++n;
    }
    return n;
  }

  bool operator==(const FiniteAbelianGroup& o) const { return factors_ == o.factors_; }
  bool operator!=(const FiniteAbelianGroup& o) const { return !(*this == o); }

 private:
  std::vector<uint64_t> factors_;
  std::vector<uint64_t> strides_;
  uint64_t order_ = 1;
};

/// Homomorphism between explicit products, given by the images of the
/// coordinate generators. Well-definedness (d_i * image_i = 0) is checked at
/// construction; surjectivity is computed, not asserted.
class GroupHom {
 public:
  GroupHom() = default;
  GroupHom(FiniteAbelianGroup source, FiniteAbelianGroup target,
           std::vector<Exponents> generator_images);

  const FiniteAbelianGroup& source() const { return src_; }
  const FiniteAbelianGroup& target() const { return tgt_; }

  uint64_t apply_index(uint64_t idx) const { return map_[idx]; }
  Exponents apply(const Exponents& e) const { return tgt_.element(map_[src_.index_of(e)]); }

  bool surjective() const { return surjective_; }
  /// Preimage indices of each target index; only meaningful when surjective
  /// maps need fibers, but computed for any hom.
  const std::vector<std::vector<uint64_t>>& fibers() const { return fibers_; }
  /// Kernel = fiber of the identity.
  const std::vector<uint64_t>& kernel() const { return fibers_[0]; }

  /// Composition o(this) after... returns h with h(x) = second(this(x)).
  GroupHom then(const GroupHom& second) const;

  bool operator==(const GroupHom& o) const {
    return src_ == o.src_ && tgt_ == o.tgt_ && map_ == o.map_;
  }

 private:
  FiniteAbelianGroup src_, tgt_;
  std::vector<Exponents> gen_images_;
  std::vector<uint64_t> map_;  // dense index map, |source| entries
  std::vector<std::vector<uint64_t>> fibers_;
  bool surjective_ = false;
};

}  // namespace mtkit
