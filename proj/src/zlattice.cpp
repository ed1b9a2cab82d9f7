#include "mtkit/zlattice.hpp"

#include <algorithm>
#include <deque>

namespace mtkit {

namespace {

size_t first_nonzero(const std::vector<uint64_t>& row, size_t start = 0) {
  for (size_t i = start; i < row.size(); ++i)
    if (row[i]) return i;
  return row.size();
}

}  // namespace

void ZpNLattice::add_row(const std::vector<uint64_t>& row) {
  if (row.size() != width_) throw ConfigError("lattice row width mismatch");
  reduce_insert(row);
  normalize();
}

void ZpNLattice::add_rows(const std::vector<std::vector<uint64_t>>& rows) {
  for (const auto& r : rows) {
    if (r.size() != width_) throw ConfigError("lattice row width mismatch");
    reduce_insert(r);
  }
  normalize();
}

void ZpNLattice::reduce_insert(std::vector<uint64_t> first) {
  std::deque<std::pair<std::vector<uint64_t>, size_t>> work;  // row + scan start
  work.emplace_back(std::move(first), 0);
  while (!work.empty()) {
    auto [row, start] = std::move(work.front());
    work.pop_front();
    size_t cursor = start;
    size_t lo = 0;
    while (true) {
      size_t c = first_nonzero(row, cursor);
      cursor = c;
      if (c == width_) break;  // row died
      // pivot position for column c among sorted rows
      lo = (size_t)(std::lower_bound(pivot_col_.begin() + (long)lo, pivot_col_.end(), c) -
                    pivot_col_.begin());
      if (lo < rows_.size() && pivot_col_[lo] == c) {
        uint32_t vr = pivot_val_[lo];
        uint32_t vw = ctx_.valuation(row[c]);
        if (vw >= vr) {
          uint64_t pv = 1;
          for (uint32_t t = 0; t < vr; ++t) pv *= ctx_.p;
          uint64_t f = row[c] / pv;
          for (size_t j = c; j < width_; ++j)
            row[j] = ctx_.sub(row[j], ctx_.mul(f, rows_[lo][j]));
          continue;  // row[c] now 0; keep reducing
        }
        // incoming row is the better pivot: swap it in, recycle the old row
        uint64_t pv = 1;
        for (uint32_t t = 0; t < vw; ++t) pv *= ctx_.p;
        uint64_t uinv = ctx_.inv(row[c] / pv);
        for (size_t j = c; j < width_; ++j) row[j] = ctx_.mul(row[j], uinv);
        std::swap(rows_[lo], row);
        pivot_val_[lo] = vw;
        work.emplace_back(std::move(row), c);
        if (vw > 0) {
          uint64_t closure_scale = 1;
          for (uint32_t t = 0; t < ctx_.N - vw; ++t) closure_scale *= ctx_.p;
          std::vector<uint64_t> cl(width_);
          for (size_t j = c; j < width_; ++j) cl[j] = ctx_.mul(closure_scale, rows_[lo][j]);
          work.emplace_back(std::move(cl), c);
        }
        break;
      }
      // new pivot column: normalize so the pivot entry is exactly p^v
      uint32_t v = ctx_.valuation(row[c]);
      uint64_t pv = 1;
      for (uint32_t t = 0; t < v; ++t) pv *= ctx_.p;
      uint64_t uinv = ctx_.inv(row[c] / pv);
      for (size_t j = c; j < width_; ++j) row[j] = ctx_.mul(row[j], uinv);
      rows_.insert(rows_.begin() + (long)lo, row);
      pivot_col_.insert(pivot_col_.begin() + (long)lo, c);
      pivot_val_.insert(pivot_val_.begin() + (long)lo, v);
      if (v > 0) {
        uint64_t closure_scale = 1;
        for (uint32_t t = 0; t < ctx_.N - v; ++t) closure_scale *= ctx_.p;
        std::vector<uint64_t> cl(width_);
        for (size_t j = c; j < width_; ++j) cl[j] = ctx_.mul(closure_scale, row[j]);
        work.emplace_back(std::move(cl), c);
      }
      break;
    }
  }
}

void ZpNLattice::normalize() {
  // reduce entries above every pivot into [0, p^v)
  for (size_t i = 0; i < rows_.size(); ++i) {
    size_t c = pivot_col_[i];
    uint64_t pv = 1;
    for (uint32_t t = 0; t < pivot_val_[i]; ++t) pv *= ctx_.p;
    for (size_t e = 0; e < i; ++e) {
      uint64_t q = rows_[e][c] / pv;
      if (q == 0) continue;
      for (size_t j = c; j < width_; ++j)
        rows_[e][j] = ctx_.sub(rows_[e][j], ctx_.mul(q, rows_[i][j]));
    }
  }
}

bool ZpNLattice::contains(std::vector<uint64_t> v) const {
  if (v.size() != width_) throw ConfigError("lattice row width mismatch");
  for (size_t i = 0; i < rows_.size(); ++i) {
    size_t c = pivot_col_[i];
    if (v[c] == 0) continue;
    if (ctx_.valuation(v[c]) < pivot_val_[i]) return false;
    uint64_t pv = 1;
    for (uint32_t t = 0; t < pivot_val_[i]; ++t) pv *= ctx_.p;
    uint64_t f = v[c] / pv;
    for (size_t j = c; j < width_; ++j) v[j] = ctx_.sub(v[j], ctx_.mul(f, rows_[i][j]));
  }
  return first_nonzero(v) == width_;
}

ZpNLattice ZpNLattice::saturation() const {
  ZpNLattice cur = *this;
  while (true) {
    ZpNLattice next(ctx_, width_);
    for (const auto& r : cur.rows_) {
      uint32_t mv = ctx_.N;
      for (uint64_t e : r) mv = std::min(mv, ctx_.valuation(e));
      uint64_t pv = 1;
      for (uint32_t t = 0; t < mv; ++t) pv *= ctx_.p;
      std::vector<uint64_t> s(r.size());
      for (size_t j = 0; j < r.size(); ++j) s[j] = r[j] / pv;
      next.reduce_insert(std::move(s));
    }
    next.normalize();
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

}  // namespace mtkit
