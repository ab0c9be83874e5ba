#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "edagepp/geom.hpp"

namespace edagepp {

// Affine map world -> continuous pixel coordinates. Pixel (col, row) covers
// [col, col + 1) x [row, row + 1); its center is (col + 0.5, row + 0.5).
struct PixelTransform {
  double scale_x = 3.5;
  double scale_y = 3.5;
  double offset_x = 0.0;
  double offset_y = 0.0;

  Point2 to_pixel(Point2 w) const { return {w.x * scale_x + offset_x, w.y * scale_y + offset_y}; }
  Point2 to_world(Point2 px) const { return {(px.x - offset_x) / scale_x, (px.y - offset_y) / scale_y}; }
  Point2 pixel_center_world(int col, int row) const { return to_world({col + 0.5, row + 0.5}); }
  double pixel_size() const { return 1.0 / std::min(scale_x, scale_y); }
  friend bool operator==(const PixelTransform&, const PixelTransform&) = default;
};

struct RasterConfig {
  int width = 224;
  int height = 224;
  double world_width = 64.0;
  double world_height = 64.0;

  PixelTransform transform() const {
    return {width / world_width, height / world_height, 0.0, 0.0};
  }
  void validate() const;
};

struct PixelCoord {
  int col = 0;
  int row = 0;
  friend bool operator==(PixelCoord, PixelCoord) = default;
};

// Binary raster, values in {0, 255}.
struct RasterMask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;
  PixelTransform world_to_pixel;

  RasterMask() = default;
  RasterMask(int w, int h, PixelTransform t) : width(w), height(h), bits(std::size_t(w) * h, 0), world_to_pixel(t) {}

  bool in_bounds(int col, int row) const { return col >= 0 && row >= 0 && col < width && row < height; }
  bool test(int col, int row) const { return bits[std::size_t(row) * width + col] != 0; }
  void set(int col, int row) { bits[std::size_t(row) * width + col] = 255; }
  std::size_t count() const;
  // Every set pixel of *this is set in `other`.
  bool subset_of(const RasterMask& other) const;
  bool is_binary() const;
  // Set pixels form a single 4-connected component (false when empty).
  bool is_4connected() const;
  friend bool operator==(const RasterMask&, const RasterMask&) = default;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(Rgb, Rgb) = default;
};

inline constexpr Rgb kFree{255, 255, 255};
inline constexpr Rgb kObstacle{0, 0, 0};
inline constexpr Rgb kMarker{255, 0, 0};

struct RgbImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;  // row-major RGB

  RgbImage() = default;
  RgbImage(int w, int h, Rgb fill);

  Rgb at(int col, int row) const {
    const std::size_t i = 3 * (std::size_t(row) * width + col);
    return {data[i], data[i + 1], data[i + 2]};
  }
  void put(int col, int row, Rgb c) {
    const std::size_t i = 3 * (std::size_t(row) * width + col);
    data[i] = c.r;
    data[i + 1] = c.g;
    data[i + 2] = c.b;
  }
  bool in_bounds(int col, int row) const { return col >= 0 && row >= 0 && col < width && row < height; }
  std::size_t count(Rgb c) const;
  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// Pixel containing a world point (floor of the continuous pixel coordinate).
PixelCoord pixel_of(const PixelTransform& t, Point2 world);

// Calls visit(col, row) for each in-bounds pixel whose center lies inside the
// convex hull of `vertices` (pixel coordinates, 1 to 4 points).
template <typename Visit>
void for_each_pixel_in_hull(std::span<const Point2> vertices, int width, int height, Visit&& visit);

// Integer Bresenham line from a to b, inclusive.
template <typename Visit>
void for_each_line_pixel(PixelCoord a, PixelCoord b, Visit&& visit);

}  // namespace edagepp

#include "edagepp/raster_impl.hpp"
