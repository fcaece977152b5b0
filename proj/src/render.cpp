#include "ratdyn/workbench.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace ratdyn {

Viewport auto_viewport(const std::vector<std::vector<ExtComplexd>>& points_by_seed) {
  double xmin = std::numeric_limits<double>::infinity(), ymin = xmin;
  double xmax = -xmin, ymax = -xmin;
  bool any = false;
  for (const auto& seed : points_by_seed) {
    for (const auto& z : seed) {
      if (z.is_infinite()) continue;
      any = true;
      xmin = std::min(xmin, z.real());
      xmax = std::max(xmax, z.real());
      ymin = std::min(ymin, z.imag());
      ymax = std::max(ymax, z.imag());
    }
  }
  if (!any) throw Error(ErrorKind::EmptyPlot, "no finite point to render");
  double sx = xmax - xmin, sy = ymax - ymin;
  if (sx == 0) sx = sy > 0 ? sy : 1.0;
  if (sy == 0) sy = sx;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double hx = 0.5 * sx * 1.1, hy = 0.5 * sy * 1.1;
  return {cx - hx, cx + hx, cy - hy, cy + hy};
}

RenderInfo rasterize(const std::vector<std::vector<ExtComplexd>>& points_by_seed, const PlotSpec& spec) {
  if (spec.width < 16 || spec.width > 8192 || spec.height < 16 || spec.height > 8192) {
    throw Error(ErrorKind::InvalidArgument, "image size must lie in [16, 8192]");
  }
  RenderInfo info;
  info.width = spec.width;
  info.height = spec.height;
  info.viewport = spec.viewport ? *spec.viewport : auto_viewport(points_by_seed);
  const Viewport& v = info.viewport;
  if (!(v.xmax > v.xmin) || !(v.ymax > v.ymin)) throw Error(ErrorKind::InvalidArgument, "empty viewport");

  std::size_t finite = 0;
  for (const auto& seed : points_by_seed)
    for (const auto& z : seed) finite += z.is_finite();
  if (finite == 0) throw Error(ErrorKind::EmptyPlot, "no finite point to render");

  const auto w = static_cast<std::size_t>(spec.width);
  const auto h = static_cast<std::size_t>(spec.height);
  info.pixels.resize(w * h * 3);
  for (std::size_t k = 0; k < w * h; ++k) std::copy(kBackground.begin(), kBackground.end(), info.pixels.begin() + 3 * k);

  const int r = spec.style == PointStyle::Square3 ? 1 : 0;
  for (std::size_t s = 0; s < points_by_seed.size(); ++s) {
    const auto& color = kPalette[s % kPalette.size()];
    std::size_t count = 0;
    for (const auto& z : points_by_seed[s]) {
      if (z.is_infinite()) {
        ++info.dropped_infinite;
        continue;
      }
      ++count;
      const double fx = (z.real() - v.xmin) / (v.xmax - v.xmin);
      const double fy = (v.ymax - z.imag()) / (v.ymax - v.ymin);
      if (!(fx >= 0 && fx <= 1 && fy >= 0 && fy <= 1)) {
        ++info.clipped;
        continue;
      }
      const int col = std::min(spec.width - 1, static_cast<int>(std::floor(fx * spec.width)));
      const int row = std::min(spec.height - 1, static_cast<int>(std::floor(fy * spec.height)));
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          const int x = col + dx, y = row + dy;
          if (x < 0 || y < 0 || x >= spec.width || y >= spec.height) continue;
          const std::size_t off = 3 * (static_cast<std::size_t>(y) * w + static_cast<std::size_t>(x));
          std::copy(color.begin(), color.end(), info.pixels.begin() + static_cast<std::ptrdiff_t>(off));
        }
      }
    }
    info.per_seed_counts.push_back(count);
  }
  return info;
}

std::string ppm_bytes(const RenderInfo& info) {
  std::string out = "P6\n" + std::to_string(info.width) + " " + std::to_string(info.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(info.pixels.data()), info.pixels.size());
  return out;
}

Json sidecar_json(const RenderInfo& info, const PlotSpec& spec) {
  return {{"width", info.width},
          {"height", info.height},
          {"point_style", spec.style == PointStyle::Square3 ? "3x3" : "pixel"},
          {"viewport_mode", spec.viewport ? "explicit" : "auto"},
          {"viewport",
           {{"xmin", info.viewport.xmin}, {"xmax", info.viewport.xmax}, {"ymin", info.viewport.ymin},
            {"ymax", info.viewport.ymax}}},
          {"dropped_infinite", info.dropped_infinite},
          {"clipped", info.clipped},
          {"per_seed_counts", info.per_seed_counts}};
}

RenderInfo render_scatter(const std::vector<std::vector<ExtComplexd>>& points_by_seed, const PlotSpec& spec,
                          const std::string& path) {
  RenderInfo info = rasterize(points_by_seed, spec);
  {
    std::ofstream f(path, std::ios::binary);
    const std::string bytes = ppm_bytes(info);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + path);
  }
  std::ofstream side(path + ".json");
  side << sidecar_json(info, spec).dump(2) << '\n';
  if (!side) throw Error(ErrorKind::IoError, "cannot write " + path + ".json");
  return info;
}

}  // namespace ratdyn
