// Copyright 2026 The Authors.
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

#include "ratsp/env.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "ratsp/random.hpp"

namespace ratsp {

InfoMap::InfoMap(int width, int height, double cell_size,
                 std::vector<double> density)
    : width_(width),
      height_(height),
      cell_size_(cell_size),
      density_(std::move(density)) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("map dimensions must be at least 1x1");
  }
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw std::invalid_argument("cell_size must be positive");
  }
  if (density_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("density has " +
                                std::to_string(density_.size()) +
                                " values, expected width*height");
  }
  for (double d : density_) {
    if (!(d >= 0.0) || !std::isfinite(d)) {
      throw std::invalid_argument("density values must be finite and >= 0");
    }
  }
}

bool InfoMap::in_bounds(CellId cell) const {
  return cell.col >= 0 && cell.col < width_ && cell.row >= 0 &&
         cell.row < height_;
}

bool InfoMap::contains(Point2D p) const {
  return p.x >= 0.0 && p.x <= extent_x() && p.y >= 0.0 && p.y <= extent_y();
}

double InfoMap::at(CellId cell) const {
  if (!in_bounds(cell)) {
    throw std::out_of_range("cell (" + std::to_string(cell.col) + ", " +
                            std::to_string(cell.row) + ") outside map");
  }
  return density_[linear_index(cell)];
}

Point2D InfoMap::cell_center(CellId cell) const {
  return {(cell.col + 0.5) * cell_size_, (cell.row + 0.5) * cell_size_};
}

InfoMap generate_map(int width, int height, std::span<const Blob> blobs,
                     std::uint64_t seed, const MapOptions& options) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("map dimensions must be at least 1x1");
  }
  if (!(options.cell_size > 0.0)) {
    throw std::invalid_argument("cell_size must be positive");
  }
  if (!(options.jitter >= 0.0 && options.jitter < 1.0)) {
    throw std::invalid_argument("jitter must be in [0, 1)");
  }
  for (const Blob& b : blobs) {
    if (!(b.sigma > 0.0)) throw std::invalid_argument("blob sigma must be > 0");
    if (!(b.amplitude > 0.0)) {
      throw std::invalid_argument("blob amplitude must be > 0");
    }
  }

  std::vector<double> density(static_cast<std::size_t>(width) * height, 0.0);
  const double cs = options.cell_size;
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const double cx = (col + 0.5) * cs;
      const double cy = (row + 0.5) * cs;
      double sum = 0.0;
      for (const Blob& b : blobs) {
        const double dx = cx - b.center.x;
        const double dy = cy - b.center.y;
        sum += b.amplitude *
               std::exp(-(dx * dx + dy * dy) / (2.0 * b.sigma * b.sigma));
      }
      density[static_cast<std::size_t>(row) * width + col] = sum;
    }
  }

  if (options.jitter > 0.0) {
    SplitMix64 engine(hash_words({seed, 0x4a17ULL}));
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (double& d : density) d *= 1.0 + options.jitter * unit(engine);
  }
  return InfoMap(width, height, cs, std::move(density));
}

std::vector<Blob> random_blobs(int count, int width, int height,
                               std::uint64_t seed, double cell_size) {
  if (count < 0) throw std::invalid_argument("blob count must be >= 0");
  SplitMix64 engine(hash_words({seed, 0xb10bULL}));
  const double ex = width * cell_size;
  const double ey = height * cell_size;
  const double side = std::min(ex, ey);
  std::uniform_real_distribution<double> ux(0.0, ex);
  std::uniform_real_distribution<double> uy(0.0, ey);
  std::uniform_real_distribution<double> amp(0.5, 2.0);
  std::uniform_real_distribution<double> spread(0.05 * side, 0.15 * side);
  std::vector<Blob> blobs;
  blobs.reserve(count);
  for (int i = 0; i < count; ++i) {
    Blob b;
    b.center = {ux(engine), uy(engine)};
    b.amplitude = amp(engine);
    b.sigma = spread(engine);
    blobs.push_back(b);
  }
  return blobs;
}

double point_segment_distance(Point2D p, Point2D a, Point2D b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) {
    t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
  }
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

std::vector<CellId> sensed_cells(Point2D a, Point2D b, double radius,
                                 const InfoMap& map) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("sensing radius must be positive");
  }
  if (!map.contains(a) || !map.contains(b)) {
    throw std::invalid_argument("segment endpoint outside map");
  }
  const double cs = map.cell_size();
  // Cell centers sit at (i + 0.5) * cs; clamp the index window to the grid.
  auto lo_index = [cs](double v) {
    return static_cast<int>(std::floor(v / cs - 0.5));
  };
  auto hi_index = [cs](double v) {
    return static_cast<int>(std::ceil(v / cs - 0.5));
  };
  const int col0 = std::max(0, lo_index(std::min(a.x, b.x) - radius));
  const int col1 = std::min(map.width() - 1, hi_index(std::max(a.x, b.x) + radius));
  const int row0 = std::max(0, lo_index(std::min(a.y, b.y) - radius));
  const int row1 = std::min(map.height() - 1, hi_index(std::max(a.y, b.y) + radius));

  std::vector<CellId> cells;
  for (int col = col0; col <= col1; ++col) {
    for (int row = row0; row <= row1; ++row) {
      const CellId cell{col, row};
      if (point_segment_distance(map.cell_center(cell), a, b) <= radius) {
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

double cell_reward_mean(CellId cell, const InfoMap& map) { return map.at(cell); }

}  // namespace ratsp
