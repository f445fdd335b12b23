#pragma once

#include <stdexcept>
#include <string>

namespace phasedist {

enum class Errc {
  configuration,
  empty_grid,
  reconstruction_unsupported,
  out_of_range,
  degenerate_decomposition,
  unsupported,
  empty_histogram,
  banding,
  degenerate_design,
  insufficient_data,
  unsupported_format,
  parse,
  io,
};

inline const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::configuration: return "configuration";
    case Errc::empty_grid: return "empty-grid";
    case Errc::reconstruction_unsupported: return "reconstruction-unsupported";
    case Errc::out_of_range: return "out-of-range";
    case Errc::degenerate_decomposition: return "degenerate-decomposition";
    case Errc::unsupported: return "unsupported";
    case Errc::empty_histogram: return "empty-histogram";
    case Errc::banding: return "banding";
    case Errc::degenerate_design: return "degenerate-design";
    case Errc::insufficient_data: return "insufficient-data";
    case Errc::unsupported_format: return "unsupported-format";
    case Errc::parse: return "parse";
    case Errc::io: return "io";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the Errc kinds.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + " error: " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace phasedist
