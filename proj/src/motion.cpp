// Copyright 2026 The wmcodec Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wmc/motion.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <tuple>

namespace wmc {

void MotionField::validate() const {
  if (block_size <= 0 || band_rows <= 0 || band_cols <= 0) {
    throw DimensionError("motion field has empty geometry");
  }
  const int gr = (band_rows + block_size - 1) / block_size;
  const int gc = (band_cols + block_size - 1) / block_size;
  if (gr != grid_rows || gc != grid_cols ||
      vectors.size() != static_cast<std::size_t>(gr) * gc) {
    throw DimensionError("motion field grid does not match band dimensions");
  }
  if (precision < 0 || precision > 3) {
    throw UsageError("motion field precision out of range");
  }
}

void SearchParams::validate() const {
  if (search_range < 1) {
    throw UsageError("search_range must be at least 1 pixel");
  }
  if (precision < 0 || precision > 3) {
    throw UsageError("precision must be in 0..3");
  }
  if (block_size < 1) {
    throw UsageError("block_size must be positive");
  }
}

std::vector<BlockRegion> block_grid(int rows, int cols, int block_size) {
  std::vector<BlockRegion> blocks;
  for (int r0 = 0; r0 < rows; r0 += block_size) {
    for (int c0 = 0; c0 < cols; c0 += block_size) {
      blocks.push_back(BlockRegion{r0, c0, std::min(block_size, rows - r0),
                                   std::min(block_size, cols - c0)});
    }
  }
  return blocks;
}

std::vector<MotionVector> search_candidates(const SearchParams& params) {
  params.validate();
  const int reach = params.search_range << params.precision;
  std::vector<MotionVector> out;
  out.reserve(static_cast<std::size_t>(2 * reach + 1) * (2 * reach + 1));
  for (int dy = -reach; dy <= reach; ++dy) {
    for (int dx = -reach; dx <= reach; ++dx) {
      out.push_back(MotionVector{dx, dy});
    }
  }
  return out;
}

ShiftSpec spec_for_mv(MotionVector mv, int precision) {
  return decompose_shift(DyadicShift{make_canonical(mv.dx, precision),
                                     make_canonical(mv.dy, precision)});
}

namespace {

double block_ssd(const SubbandSet& x, const SubbandSet& y,
                 const BlockRegion& blk) {
  double acc = 0.0;
  const Mat* xs[4] = {&x.approx, &x.horiz, &x.vert, &x.diag};
  const Mat* ys[4] = {&y.approx, &y.horiz, &y.vert, &y.diag};
  for (int p = 0; p < 4; ++p) {
    for (int r = blk.r0; r < blk.r0 + blk.rows; ++r) {
      const double* a = xs[p]->row(r);
      const double* b = ys[p]->row(r);
      for (int c = blk.c0; c < blk.c0 + blk.cols; ++c) {
        const double d = a[c] - b[c];
        acc += d * d;
      }
    }
  }
  return acc;
}

void check_same_geometry(const SubbandSet& ref, const SubbandSet& target) {
  ref.validate();
  target.validate();
  if (ref.rows() != target.rows() || ref.cols() != target.cols()) {
    throw DimensionError("reference and target subbands differ in size");
  }
}

struct BlockBest {
  double cost = std::numeric_limits<double>::infinity();
  long absum = std::numeric_limits<long>::max();
  std::size_t order = std::numeric_limits<std::size_t>::max();
  MotionVector mv;

  // Smallest cost wins; ties prefer short vectors, then scan order.
  bool beaten_by(double c, long a, std::size_t o) const {
    if (c != cost) return c < cost;
    if (a != absum) return a < absum;
    return o < order;
  }
};

// Accumulates per-block SSD between the target and `filtered` read through
// a circular offset of (cy, cx) subband samples, without materializing the
// rotated planes.
void candidate_block_costs(const SubbandSet& filtered,
                           const SubbandSet& target,
                           const std::vector<BlockRegion>& blocks, int cx,
                           int cy, std::vector<double>& costs) {
  const int rows = target.rows();
  const int cols = target.cols();
  std::vector<int> colmap(cols);
  for (int c = 0; c < cols; ++c) colmap[c] = wrap_index(c - cx, cols);
  const Mat* fs[4] = {&filtered.approx, &filtered.horiz, &filtered.vert,
                      &filtered.diag};
  const Mat* ts[4] = {&target.approx, &target.horiz, &target.vert,
                      &target.diag};
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const BlockRegion& blk = blocks[b];
    double acc = 0.0;
    for (int p = 0; p < 4; ++p) {
      for (int r = blk.r0; r < blk.r0 + blk.rows; ++r) {
        const double* src = fs[p]->row(wrap_index(r - cy, rows));
        const double* tgt = ts[p]->row(r);
        for (int c = blk.c0; c < blk.c0 + blk.cols; ++c) {
          const double d = tgt[c] - src[colmap[c]];
          acc += d * d;
        }
      }
    }
    costs[b] = acc;
  }
}

MotionField make_field(const SearchParams& params, int rows, int cols) {
  MotionField field;
  field.block_size = params.block_size;
  field.precision = params.precision;
  field.band_rows = rows;
  field.band_cols = cols;
  field.grid_rows = (rows + params.block_size - 1) / params.block_size;
  field.grid_cols = (cols + params.block_size - 1) / params.block_size;
  field.vectors.resize(static_cast<std::size_t>(field.grid_rows) *
                       field.grid_cols);
  return field;
}

}  // namespace

double block_cost(const SubbandSet& ref_bands, const SubbandSet& target_bands,
                  const BlockRegion& block, MotionVector candidate,
                  int precision) {
  check_same_geometry(ref_bands, target_bands);
  if (block.r0 < 0 || block.c0 < 0 || block.rows <= 0 || block.cols <= 0 ||
      block.r0 + block.rows > ref_bands.rows() ||
      block.c0 + block.cols > ref_bands.cols()) {
    throw DimensionError("block region out of subband bounds");
  }
  const SubbandSet shifted =
      apply_inband_shift(ref_bands, spec_for_mv(candidate, precision));
  return block_ssd(target_bands, shifted, block);
}

MotionField full_search(const SubbandSet& ref_bands,
                        const SubbandSet& target_bands,
                        const SearchParams& params,
                        std::vector<double>* costs) {
  check_same_geometry(ref_bands, target_bands);
  params.validate();
  const int rows = ref_bands.rows();
  const int cols = ref_bands.cols();
  const std::vector<MotionVector> candidates = search_candidates(params);
  const std::vector<BlockRegion> blocks =
      block_grid(rows, cols, params.block_size);

  // Candidates sharing a subpixel residual reuse one filtered frame; the
  // circular part is folded into indexed reads, which matches the
  // rotate-then-filter path bit for bit.
  using ResidualKey = std::tuple<std::int64_t, int, std::int64_t, int>;
  std::map<ResidualKey, std::vector<std::size_t>> groups;
  std::vector<ShiftSpec> specs(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    specs[i] = spec_for_mv(candidates[i], params.precision);
    groups[ResidualKey{specs[i].res_x.num, specs[i].res_x.level,
                       specs[i].res_y.num, specs[i].res_y.level}]
        .push_back(i);
  }

  std::vector<BlockBest> best(blocks.size());
  std::vector<double> cand_costs(blocks.size());
  for (const auto& [key, members] : groups) {
    const Dyadic res_x{std::get<0>(key), std::get<1>(key)};
    const Dyadic res_y{std::get<2>(key), std::get<3>(key)};
    const SubbandSet filtered = apply_subpixel(ref_bands, res_x, res_y);
    for (std::size_t idx : members) {
      const MotionVector mv = candidates[idx];
      candidate_block_costs(filtered, target_bands, blocks,
                            static_cast<int>(specs[idx].circ_x),
                            static_cast<int>(specs[idx].circ_y), cand_costs);
      const long absum = std::labs(mv.dx) + std::labs(mv.dy);
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (best[b].beaten_by(cand_costs[b], absum, idx)) {
          best[b] = BlockBest{cand_costs[b], absum, idx, mv};
        }
      }
    }
  }

  MotionField field = make_field(params, rows, cols);
  if (costs) costs->resize(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    field.vectors[b] = best[b].mv;
    if (costs) (*costs)[b] = best[b].cost;
  }
  return field;
}

MotionField band_to_band_search(const SubbandSet& ref_bands,
                                const SubbandSet& target_bands,
                                const SearchParams& params,
                                std::vector<double>* costs) {
  check_same_geometry(ref_bands, target_bands);
  params.validate();
  const int rows = ref_bands.rows();
  const int cols = ref_bands.cols();
  const std::vector<BlockRegion> blocks =
      block_grid(rows, cols, params.block_size);
  // Integer subband-sample displacements within the same pixel window.
  const int reach = params.search_range / 2;

  std::vector<BlockBest> best(blocks.size());
  std::vector<double> cand_costs(blocks.size());
  std::size_t order = 0;
  for (int cy = -reach; cy <= reach; ++cy) {
    for (int cx = -reach; cx <= reach; ++cx, ++order) {
      candidate_block_costs(ref_bands, target_bands, blocks, cx, cy,
                            cand_costs);
      const int unit = 1 << params.precision;
      const long absum = 2L * (std::labs(cx) + std::labs(cy)) * unit;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        if (best[b].beaten_by(cand_costs[b], absum, order)) {
          // Vectors surface in the field's 1/2^h-pel units (whole pixels,
          // always even).
          best[b] = BlockBest{cand_costs[b], absum, order,
                              MotionVector{2 * cx * unit, 2 * cy * unit}};
        }
      }
    }
  }

  MotionField field = make_field(params, rows, cols);
  if (costs) costs->resize(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    field.vectors[b] = best[b].mv;
    if (costs) (*costs)[b] = best[b].cost;
  }
  return field;
}

SubbandSet compensate(const SubbandSet& ref_bands, const MotionField& field) {
  ref_bands.validate();
  field.validate();
  if (field.band_rows != ref_bands.rows() ||
      field.band_cols != ref_bands.cols()) {
    throw DimensionError("motion field does not match reference bands");
  }
  const std::vector<BlockRegion> blocks =
      block_grid(field.band_rows, field.band_cols, field.block_size);
  SubbandSet out{Mat(field.band_rows, field.band_cols),
                 Mat(field.band_rows, field.band_cols),
                 Mat(field.band_rows, field.band_cols),
                 Mat(field.band_rows, field.band_cols)};
  std::map<std::pair<int, int>, SubbandSet> cache;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const MotionVector mv = field.vectors[b];
    auto it = cache.find({mv.dx, mv.dy});
    if (it == cache.end()) {
      it = cache
               .emplace(std::make_pair(mv.dx, mv.dy),
                        apply_inband_shift(ref_bands,
                                           spec_for_mv(mv, field.precision)))
               .first;
    }
    const SubbandSet& shifted = it->second;
    const BlockRegion& blk = blocks[b];
    const Mat* src[4] = {&shifted.approx, &shifted.horiz, &shifted.vert,
                         &shifted.diag};
    Mat* dst[4] = {&out.approx, &out.horiz, &out.vert, &out.diag};
    for (int p = 0; p < 4; ++p) {
      for (int r = blk.r0; r < blk.r0 + blk.rows; ++r) {
        const double* s = src[p]->row(r);
        double* d = dst[p]->row(r);
        for (int c = blk.c0; c < blk.c0 + blk.cols; ++c) d[c] = s[c];
      }
    }
  }
  return out;
}

namespace {

SubbandSet elementwise(const SubbandSet& x, const SubbandSet& y, double sign) {
  x.validate();
  y.validate();
  if (x.rows() != y.rows() || x.cols() != y.cols()) {
    throw DimensionError("subband sets differ in size");
  }
  SubbandSet out = x;
  const Mat* ys[4] = {&y.approx, &y.horiz, &y.vert, &y.diag};
  Mat* os[4] = {&out.approx, &out.horiz, &out.vert, &out.diag};
  for (int p = 0; p < 4; ++p) {
    for (std::size_t i = 0; i < os[p]->size(); ++i) {
      os[p]->data()[i] += sign * ys[p]->data()[i];
    }
  }
  return out;
}

}  // namespace

SubbandSet subtract_bands(const SubbandSet& target,
                          const SubbandSet& predicted) {
  return elementwise(target, predicted, -1.0);
}

SubbandSet add_bands(const SubbandSet& predicted, const SubbandSet& residual) {
  return elementwise(predicted, residual, 1.0);
}

double bands_sum_squares(const SubbandSet& bands) {
  return sum_squares(bands.approx) + sum_squares(bands.horiz) +
         sum_squares(bands.vert) + sum_squares(bands.diag);
}

}  // namespace wmc
