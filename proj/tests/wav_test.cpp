#include <gtest/gtest.h>

#include <filesystem>

#include "phasedist/wav.hpp"

using namespace phasedist;

namespace {

std::vector<std::uint8_t> bytes_of(const std::string& s) { return {s.begin(), s.end()}; }

// Generic RIFF/WAVE builder for formats the library's writer does not produce.
std::string build_wav(std::uint16_t format, std::uint16_t channels, std::uint16_t bits, std::uint32_t rate,
                      const std::string& data, const std::string& extra_chunk = {}) {
  std::string fmt;
  detail::put_u16(fmt, format);
  detail::put_u16(fmt, channels);
  detail::put_u32(fmt, rate);
  detail::put_u32(fmt, rate * channels * bits / 8);
  detail::put_u16(fmt, static_cast<std::uint16_t>(channels * bits / 8));
  detail::put_u16(fmt, bits);
  std::string body = "WAVE";
  body += extra_chunk;
  body += "fmt ";
  detail::put_u32(body, static_cast<std::uint32_t>(fmt.size()));
  body += fmt;
  body += "data";
  detail::put_u32(body, static_cast<std::uint32_t>(data.size()));
  body += data;
  std::string out = "RIFF";
  detail::put_u32(out, static_cast<std::uint32_t>(body.size()));
  return out + body;
}

std::string pcm16(std::initializer_list<int> values) {
  std::string s;
  for (int v : values) detail::put_u16(s, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  return s;
}

}  // namespace

TEST(Wav, SilentSecond) {
  const auto buf = decode_wav(bytes_of(encode_wav16(std::vector<double>(48000, 0.0), 48000)));
  EXPECT_EQ(buf.sample_rate, 48000.0);
  EXPECT_EQ(buf.samples, std::vector<double>(48000, 0.0));
  EXPECT_EQ(buf.source_channels, 1);
}

TEST(Wav, FullScaleScaling) {
  const auto buf = decode_wav(bytes_of(build_wav(1, 1, 16, 8000, pcm16({0x7FFF, 0x7FFF, -32768}))));
  EXPECT_DOUBLE_EQ(buf.samples[0], 32767.0 / 32768.0);
  EXPECT_NEAR(buf.samples[0], 1.0, 1.0 / 32768);
  EXPECT_DOUBLE_EQ(buf.samples[2], -1.0);
}

TEST(Wav, StereoDownmix) {
  const auto buf = decode_wav(bytes_of(build_wav(1, 2, 16, 8000, pcm16({1000, -1000, -5, 5, 300, 100}))));
  EXPECT_EQ(buf.source_channels, 2);
  ASSERT_EQ(buf.samples.size(), 3u);
  EXPECT_EQ(buf.samples[0], 0.0);
  EXPECT_EQ(buf.samples[1], 0.0);
  EXPECT_DOUBLE_EQ(buf.samples[2], 200.0 / 32768.0);
}

TEST(Wav, Float32AndExtraChunks) {
  std::string data;
  for (float f : {0.5f, -0.25f}) {
    std::uint32_t u;
    std::memcpy(&u, &f, 4);
    detail::put_u32(data, u);
  }
  std::string list = "LIST";
  detail::put_u32(list, 3);
  list += "abc";
  list += '\0';  // pad byte
  const auto buf = decode_wav(bytes_of(build_wav(3, 1, 32, 44100, data, list)));
  ASSERT_EQ(buf.samples.size(), 2u);
  EXPECT_EQ(buf.samples[0], 0.5);
  EXPECT_EQ(buf.samples[1], -0.25);
}

TEST(Wav, RoundTripIsSampleExact) {
  std::vector<double> x;
  for (int v = -32768; v < 32768; v += 37) x.push_back(v / 32768.0);
  const auto path = (std::filesystem::temp_directory_path() / "phasedist_wav_test.wav").string();
  write_wav16(path, x, 22050);
  const auto buf = read_wav(path);
  std::filesystem::remove(path);
  EXPECT_EQ(buf.samples, x);
  EXPECT_EQ(buf.sample_rate, 22050.0);
}

TEST(Wav, UnsupportedFormatNamesTag) {
  try {
    decode_wav(bytes_of(build_wav(1, 1, 24, 8000, std::string(6, '\0'))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unsupported_format);
    EXPECT_NE(std::string(e.what()).find("format tag 1 with 24 bits"), std::string::npos) << e.what();
  }
  try {
    decode_wav(bytes_of(build_wav(85, 1, 16, 8000, std::string(4, '\0'))));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::unsupported_format);
    EXPECT_NE(std::string(e.what()).find("format tag 85"), std::string::npos);
  }
  EXPECT_THROW(decode_wav(bytes_of(build_wav(1, 3, 16, 8000, std::string(6, '\0')))), Error);
  EXPECT_THROW(decode_wav(bytes_of(std::string("RIFX\0\0\0\0WAVE", 12))), Error);
}

TEST(Wav, TruncatedFileReportsOffset) {
  const auto full = build_wav(1, 1, 16, 8000, pcm16({1, 2, 3, 4}));
  const auto cut = full.substr(0, full.size() - 3);
  try {
    decode_wav(bytes_of(cut));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse);
    EXPECT_NE(std::string(e.what()).find("byte offset 44"), std::string::npos) << e.what();
  }
  try {
    decode_wav(bytes_of(full.substr(0, 20)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::parse);
  }
  EXPECT_THROW(read_wav("/nonexistent/file.wav"), Error);
}
