#include "mreak/draw.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>

namespace mreak {

namespace {

using Color = std::array<std::uint8_t, 3>;

Color branch_color(Branch b) {
  switch (b) {
    case Branch::kOpen:
      return {0, 255, 0};
    case Branch::kClose:
      return {255, 0, 255};
    case Branch::kBaseline:
      return {255, 255, 0};
    case Branch::kMerged:
      return {0, 255, 255};
  }
  return {255, 255, 255};
}

void blit(Image& canvas, const Image& src, int x0) {
  for (int y = 0; y < src.height(); ++y) {
    for (int x = 0; x < src.width(); ++x) {
      for (int c = 0; c < 3; ++c) {
        canvas.at(x0 + x, y, c) = src.at(x, y, src.channels() == 1 ? 0 : c);
      }
    }
  }
}

void plot(Image& canvas, int x, int y, const Color& color) {
  if (x < 0 || y < 0 || x >= canvas.width() || y >= canvas.height()) return;
  for (int c = 0; c < 3; ++c) canvas.at(x, y, c) = color[c];
}

// Bresenham, all octants.
void line(Image& canvas, int x0, int y0, int x1, int y1, const Color& color) {
  const int dx = std::abs(x1 - x0);
  const int dy = -std::abs(y1 - y0);
  const int sx = x0 < x1 ? 1 : -1;
  const int sy = y0 < y1 ? 1 : -1;
  int err = dx + dy;
  while (true) {
    plot(canvas, x0, y0, color);
    if (x0 == x1 && y0 == y1) break;
    const int e2 = 2 * err;
    if (e2 >= dy) {
      err += dy;
      x0 += sx;
    }
    if (e2 <= dx) {
      err += dx;
      y0 += sy;
    }
  }
}

void marker(Image& canvas, int x, int y, const Color& color) {
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) plot(canvas, x + dx, y + dy, color);
  }
}

}  // namespace

Image draw_matches(const Image& a, const Image& b,
                   std::span<const Match> matches) {
  Image canvas(a.width() + b.width(), std::max(a.height(), b.height()), 3);
  blit(canvas, a, 0);
  blit(canvas, b, a.width());
  for (const Match& m : matches) {
    const Color color = branch_color(m.branch);
    const int xa = static_cast<int>(std::lround(m.x_a));
    const int ya = static_cast<int>(std::lround(m.y_a));
    const int xb = static_cast<int>(std::lround(m.x_b)) + a.width();
    const int yb = static_cast<int>(std::lround(m.y_b));
    line(canvas, xa, ya, xb, yb, color);
    marker(canvas, xa, ya, color);
    marker(canvas, xb, yb, color);
  }
  return canvas;
}

}  // namespace mreak
