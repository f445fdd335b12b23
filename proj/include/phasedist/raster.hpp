#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "histogram.hpp"

namespace phasedist {

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> pixels;  ///< row-major, row 0 at the top
  std::vector<std::string> comments;

  GrayImage() = default;
  GrayImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {}

  std::uint8_t& at(int x, int y) { return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
  std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)]; }
};

/// Binary PGM (P5, maxval 255).
inline std::string encode_pgm(const GrayImage& img) {
  std::string out = "P5\n";
  for (const auto& c : img.comments) out += "# " + c + "\n";
  out += std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
  return out;
}

inline void write_pgm(const std::string& path, const GrayImage& img) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot open " + path + " for writing");
  const auto bytes = encode_pgm(img);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

namespace detail {

inline std::uint8_t intensity(double p, double max_p) {
  if (max_p <= 0.0) return 0;
  return static_cast<std::uint8_t>(std::lround(255.0 * p / max_p));
}

}  // namespace detail

/// Columns are bins, rows are phase cells with +pi at the top; each column
/// is normalised so its most probable cell is white.
inline GrayImage render_histogram_image(const PerFrequencyHistogramSet& set) {
  if (set.histograms.empty()) throw Error(Errc::empty_grid, "nothing to render");
  const int cells = set.histograms.front().cells();
  GrayImage img(static_cast<int>(set.histograms.size()), cells);
  img.comments.push_back("per-frequency phase histogram; columns k=" + std::to_string(set.first_bin) + ".." +
                         std::to_string(set.last_bin()) + "; rows phase +pi (top) to -pi (bottom)");
  img.comments.push_back("normalization: per-column (white = most probable cell of that bin)");
  for (int x = 0; x < img.width; ++x) {
    const auto& h = set.histograms[static_cast<std::size_t>(x)];
    const auto p = h.probabilities();
    const double max_p = p.empty() ? 0.0 : *std::max_element(p.begin(), p.end());
    for (int m = 0; m < cells; ++m) img.at(x, cells - 1 - m) = detail::intensity(p[static_cast<std::size_t>(m)], max_p);
  }
  return img;
}

/// Polar raster: band b occupies an annulus (band 0 innermost), angle is the
/// phase measured counter-clockwise from the positive x axis. Each annulus is
/// normalised independently.
inline GrayImage render_histogram_image(const PerMagnitudeHistogramSet& set, int size = 256) {
  if (set.histograms.empty()) throw Error(Errc::empty_grid, "nothing to render");
  GrayImage img(size, size);
  img.comments.push_back("per-magnitude phase histogram; annulus per band, smallest magnitudes at centre");
  img.comments.push_back(std::string("banding: ") + to_string(set.banding) + "; normalization: per-band");
  const double c = 0.5 * (size - 1);
  const double radius = 0.5 * size;
  const auto bands = static_cast<int>(set.histograms.size());
  std::vector<std::vector<double>> probs;
  std::vector<double> max_p;
  for (const auto& h : set.histograms) {
    probs.push_back(h.probabilities());
    max_p.push_back(*std::max_element(probs.back().begin(), probs.back().end()));
  }
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const double dx = x - c, dy = c - y;
      const double r = std::hypot(dx, dy);
      if (r >= radius) continue;
      const int band = std::min(bands - 1, static_cast<int>(r / radius * bands));
      const auto& h = set.histograms[static_cast<std::size_t>(band)];
      const int cell = h.cell_of(std::atan2(dy, dx));
      img.at(x, y) = detail::intensity(probs[static_cast<std::size_t>(band)][static_cast<std::size_t>(cell)],
                                       max_p[static_cast<std::size_t>(band)]);
    }
  }
  return img;
}

}  // namespace phasedist
