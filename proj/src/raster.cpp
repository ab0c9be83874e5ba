#include "edagepp/raster.hpp"

#include <algorithm>
#include <vector>

#include "edagepp/error.hpp"

namespace edagepp {

void RasterConfig::validate() const {
  if (width < 8 || height < 8) throw ConfigError("raster must be at least 8x8 pixels");
  if (!(world_width > 0.0) || !(world_height > 0.0)) throw ConfigError("world size must be positive");
}

std::size_t RasterMask::count() const {
  return static_cast<std::size_t>(std::count_if(bits.begin(), bits.end(), [](auto v) { return v != 0; }));
}

bool RasterMask::subset_of(const RasterMask& other) const {
  if (width != other.width || height != other.height) return false;
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i] != 0 && other.bits[i] == 0) return false;
  return true;
}

bool RasterMask::is_binary() const {
  return std::all_of(bits.begin(), bits.end(), [](auto v) { return v == 0 || v == 255; });
}

bool RasterMask::is_4connected() const {
  const std::size_t total = count();
  if (total == 0) return false;
  std::vector<std::uint8_t> seen(bits.size(), 0);
  std::vector<int> stack;
  const auto first = std::find_if(bits.begin(), bits.end(), [](auto v) { return v != 0; });
  stack.push_back(static_cast<int>(first - bits.begin()));
  seen[stack.back()] = 1;
  std::size_t reached = 0;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    ++reached;
    const int col = i % width, row = i / width;
    const int nbr[4][2] = {{col + 1, row}, {col - 1, row}, {col, row + 1}, {col, row - 1}};
    for (const auto& n : nbr) {
      if (!in_bounds(n[0], n[1])) continue;
      const int j = n[1] * width + n[0];
      if (bits[j] != 0 && !seen[j]) {
        seen[j] = 1;
        stack.push_back(j);
      }
    }
  }
  return reached == total;
}

RgbImage::RgbImage(int w, int h, Rgb fill) : width(w), height(h), data(std::size_t(w) * h * 3) {
  for (std::size_t i = 0; i < data.size(); i += 3) {
    data[i] = fill.r;
    data[i + 1] = fill.g;
    data[i + 2] = fill.b;
  }
}

std::size_t RgbImage::count(Rgb c) const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < data.size(); i += 3)
    if (data[i] == c.r && data[i + 1] == c.g && data[i + 2] == c.b) ++n;
  return n;
}

PixelCoord pixel_of(const PixelTransform& t, Point2 world) {
  const Point2 p = t.to_pixel(world);
  return {static_cast<int>(std::floor(p.x)), static_cast<int>(std::floor(p.y))};
}

}  // namespace edagepp
