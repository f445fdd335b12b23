#pragma once

// Minimal RIFF/WAVE reader (PCM 16-bit, IEEE float 32-bit; mono or stereo)
// and a 16-bit PCM writer. 16-bit samples are scaled by 1/32768, so full
// scale positive 0x7FFF reads as 32767/32768.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "error.hpp"

namespace phasedist {

struct AudioBuffer {
  std::vector<double> samples;  ///< mono, in [-1, 1]
  double sample_rate = 0.0;
  int source_channels = 1;
};

namespace detail {

class ByteReader {
 public:
  explicit ByteReader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::size_t offset() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return bytes_.size() - pos_; }

  void require(std::size_t n, const char* what) const {
    if (remaining() < n)
      throw Error(Errc::parse, std::string("truncated file reading ") + what + " at byte offset " + std::to_string(pos_));
  }
  std::uint32_t u32(const char* what) {
    require(4, what);
    std::uint32_t v = static_cast<std::uint32_t>(bytes_[pos_]) | (static_cast<std::uint32_t>(bytes_[pos_ + 1]) << 8) |
                      (static_cast<std::uint32_t>(bytes_[pos_ + 2]) << 16) |
                      (static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }
  std::uint16_t u16(const char* what) {
    require(2, what);
    auto v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::string tag(const char* what) {
    require(4, what);
    std::string s(reinterpret_cast<const char*>(bytes_.data() + pos_), 4);
    pos_ += 4;
    return s;
  }
  void skip(std::size_t n, const char* what) {
    require(n, what);
    pos_ += n;
  }
  const std::uint8_t* here() const noexcept { return bytes_.data() + pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

inline void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}
inline void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

}  // namespace detail

inline AudioBuffer decode_wav(const std::vector<std::uint8_t>& bytes) {
  detail::ByteReader r(bytes);
  if (r.tag("RIFF header") != "RIFF") throw Error(Errc::unsupported_format, "not a RIFF file");
  r.u32("RIFF size");
  if (r.tag("WAVE tag") != "WAVE") throw Error(Errc::unsupported_format, "RIFF form is not WAVE");

  std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  while (true) {
    if (r.remaining() == 0) throw Error(Errc::parse, "no data chunk before end of file at byte offset " + std::to_string(r.offset()));
    const std::string id = r.tag("chunk id");
    const std::uint32_t size = r.u32("chunk size");
    if (id == "fmt ") {
      const std::size_t start = r.offset();
      format = r.u16("fmt format tag");
      channels = r.u16("fmt channels");
      rate = r.u32("fmt sample rate");
      r.u32("fmt byte rate");
      block_align = r.u16("fmt block align");
      bits = r.u16("fmt bits per sample");
      if (format == 0xFFFE) {  // WAVE_FORMAT_EXTENSIBLE: real tag is the first 2 bytes of the GUID
        r.u16("extensible cbSize");
        r.u16("extensible valid bits");
        r.u32("extensible channel mask");
        format = r.u16("extensible subformat");
      }
      const std::size_t used = r.offset() - start;
      if (size > used) r.skip(size - used, "fmt chunk");
      if (size % 2) r.skip(1, "chunk padding");
      have_fmt = true;
      const bool pcm16 = format == 1 && bits == 16;
      const bool float32 = format == 3 && bits == 32;
      if (!pcm16 && !float32)
        throw Error(Errc::unsupported_format, "format tag " + std::to_string(format) + " with " +
                                                  std::to_string(bits) + " bits per sample");
      if (channels < 1 || channels > 2)
        throw Error(Errc::unsupported_format, std::to_string(channels) + " channels (1 or 2 supported)");
      if (rate == 0) throw Error(Errc::unsupported_format, "sample rate 0");
      if (block_align != channels * bits / 8) throw Error(Errc::parse, "inconsistent block align");
    } else if (id == "data") {
      if (!have_fmt) throw Error(Errc::parse, "data chunk before fmt chunk at byte offset " + std::to_string(r.offset()));
      r.require(size, "data chunk");
      const std::size_t frames = size / block_align;
      AudioBuffer buf;
      buf.sample_rate = rate;
      buf.source_channels = channels;
      buf.samples.resize(frames);
      const std::uint8_t* p = r.here();
      for (std::size_t f = 0; f < frames; ++f) {
        double acc = 0.0;
        for (int c = 0; c < channels; ++c) {
          const std::uint8_t* s = p + f * block_align + static_cast<std::size_t>(c) * (bits / 8);
          if (bits == 16) {
            const auto v = static_cast<std::int16_t>(static_cast<std::uint16_t>(s[0] | (s[1] << 8)));
            acc += v / 32768.0;
          } else {
            std::uint32_t u = static_cast<std::uint32_t>(s[0]) | (static_cast<std::uint32_t>(s[1]) << 8) |
                              (static_cast<std::uint32_t>(s[2]) << 16) | (static_cast<std::uint32_t>(s[3]) << 24);
            float v;
            std::memcpy(&v, &u, 4);
            if (!std::isfinite(v)) throw Error(Errc::parse, "non-finite float sample in frame " + std::to_string(f));
            acc += v;
          }
        }
        buf.samples[f] = acc / channels;
      }
      return buf;
    } else {
      r.skip(size + (size % 2), "chunk body");
    }
  }
}

inline AudioBuffer read_wav(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return decode_wav(bytes);
}

/// 16-bit PCM mono encoding; samples are clipped to [-1, 32767/32768].
inline std::string encode_wav16(const std::vector<double>& samples, std::uint32_t sample_rate) {
  std::string out;
  const auto data_bytes = static_cast<std::uint32_t>(samples.size() * 2);
  out += "RIFF";
  detail::put_u32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  detail::put_u32(out, 16);
  detail::put_u16(out, 1);
  detail::put_u16(out, 1);
  detail::put_u32(out, sample_rate);
  detail::put_u32(out, sample_rate * 2);
  detail::put_u16(out, 2);
  detail::put_u16(out, 16);
  out += "data";
  detail::put_u32(out, data_bytes);
  for (double s : samples) {
    const double scaled = std::round(s * 32768.0);
    const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    detail::put_u16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

inline void write_wav16(const std::string& path, const std::vector<double>& samples, std::uint32_t sample_rate) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(Errc::io, "cannot open " + path + " for writing");
  const auto bytes = encode_wav16(samples, sample_rate);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace phasedist
