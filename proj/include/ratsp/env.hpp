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

// Information-density environment and sensing geometry.
//
// The map is a regular grid of cells; cell (col, row) covers
// [col*cell_size, (col+1)*cell_size) x [row*cell_size, (row+1)*cell_size).
// A cell is observed from a straight traversal iff its center lies within the
// sensing radius of the traversed segment.

#ifndef RATSP_ENV_HPP_
#define RATSP_ENV_HPP_

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

namespace ratsp {

struct Point2D {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2D&, const Point2D&) = default;
};

struct CellId {
  int col = 0;
  int row = 0;

  friend auto operator<=>(const CellId&, const CellId&) = default;
};

// An isotropic Gaussian bump of information density.
struct Blob {
  Point2D center;
  double amplitude = 1.0;
  double sigma = 1.0;
};

class InfoMap {
 public:
  // Throws std::invalid_argument on non-positive dimensions, non-positive
  // cell size, a density vector of the wrong size, or a negative/non-finite
  // density value.
  InfoMap(int width, int height, double cell_size, std::vector<double> density);

  int width() const { return width_; }
  int height() const { return height_; }
  double cell_size() const { return cell_size_; }
  double extent_x() const { return width_ * cell_size_; }
  double extent_y() const { return height_ * cell_size_; }

  // Row-major, width() * height() values.
  std::span<const double> density() const { return density_; }

  bool in_bounds(CellId cell) const;
  // Closed rectangle [0, extent_x] x [0, extent_y].
  bool contains(Point2D p) const;

  // Throws std::out_of_range for cells outside the grid.
  double at(CellId cell) const;
  Point2D cell_center(CellId cell) const;
  std::size_t linear_index(CellId cell) const {
    return static_cast<std::size_t>(cell.row) * width_ + cell.col;
  }

  friend bool operator==(const InfoMap&, const InfoMap&) = default;

 private:
  int width_;
  int height_;
  double cell_size_;
  std::vector<double> density_;
};

struct MapOptions {
  double cell_size = 1.0;
  // Relative multiplicative noise in [0, 1). Zero leaves the closed-form sum
  // untouched and makes the seed irrelevant.
  double jitter = 0.0;
};

// density(cell) = sum_b amplitude_b * exp(-|center(cell) - c_b|^2 / (2 sigma_b^2))
InfoMap generate_map(int width, int height, std::span<const Blob> blobs,
                     std::uint64_t seed, const MapOptions& options = {});

// Random blobs scattered over a width x height map of unit cells: centers
// uniform over the map, amplitude in [0.5, 2), sigma in [5%, 15%) of the
// smaller map side.
std::vector<Blob> random_blobs(int count, int width, int height,
                               std::uint64_t seed, double cell_size = 1.0);

double point_segment_distance(Point2D p, Point2D a, Point2D b);

// Cells whose centers lie within `radius` of the closed segment [a, b],
// sorted by (col, row). Scans only the radius-inflated bounding box.
std::vector<CellId> sensed_cells(Point2D a, Point2D b, double radius,
                                 const InfoMap& map);

double cell_reward_mean(CellId cell, const InfoMap& map);

}  // namespace ratsp

#endif  // RATSP_ENV_HPP_
