#pragma once

#include <cstdint>
#include <vector>

#include "mtkit/padic.hpp"

namespace mtkit {

/// Row module over Z/p^N in Howell normal form. Z/p^N is a chain ring, so
/// the form (unit-normalized pivots p^v, entries above a pivot reduced mod
/// p^v, closure rows included) is unique per row span, which makes span
/// equality a plain comparison and membership a reduction.
class ZpNLattice {
 public:
  ZpNLattice() = default;
  ZpNLattice(PadicContext ctx, size_t width) : ctx_(ctx), width_(width) {}

  const PadicContext& context() const { return ctx_; }
  size_t width() const { return width_; }
  const std::vector<std::vector<uint64_t>>& basis() const { return rows_; }
  bool is_zero() const { return rows_.empty(); }

  /// Insert a generator row and restore the canonical form.
  void add_row(const std::vector<uint64_t>& row);
  void add_rows(const std::vector<std::vector<uint64_t>>& rows);

  bool contains(std::vector<uint64_t> v) const;
  bool operator==(const ZpNLattice& o) const {
    return ctx_ == o.ctx_ && width_ == o.width_ && rows_ == o.rows_;
  }
  bool operator!=(const ZpNLattice& o) const { return !(*this == o); }

  /// Smallest k such that p^k * (p-saturation) equals this lattice, together
  /// with the saturated lattice: divides rows by their content until stable.
  ZpNLattice saturation() const;

 private:
  void reduce_insert(std::vector<uint64_t> row);
  void normalize();
  PadicContext ctx_;
  size_t width_ = 0;
  // invariant outside mutating calls: rows in Howell form, sorted by pivot
  std::vector<std::vector<uint64_t>> rows_;
  std::vector<size_t> pivot_col_;
  std::vector<uint32_t> pivot_val_;
};

}  // namespace mtkit
