#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "ispear/corpus.hpp"

namespace ispear::corpus {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 24) & 0xff));
}

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

}  // namespace

AudioClip read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();

  if (n < 12 || std::memcmp(p, "RIFF", 4) != 0 || std::memcmp(p + 8, "WAVE", 4) != 0)
    throw Error(ErrorCode::BadFormat, path + ": not a RIFF/WAVE file");

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  // Chunk walk; unknown chunks (LIST, fact, ...) are skipped.
  std::size_t off = 12;
  while (off + 8 <= n) {
    const unsigned char* id = p + off;
    std::uint32_t len = read_u32(p + off + 4);
    off += 8;
    if (off + len > n) throw Error(ErrorCode::BadFormat, path + ": truncated chunk");
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (len < 16) throw Error(ErrorCode::BadFormat, path + ": short fmt chunk");
      format = read_u16(p + off);
      channels = read_u16(p + off + 2);
      sample_rate = read_u32(p + off + 4);
      bits = read_u16(p + off + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = p + off;
      data_len = len;
    }
    off += len + (len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr)
    throw Error(ErrorCode::BadFormat, path + ": missing fmt or data chunk");
  if (format != 1) throw Error(ErrorCode::BadFormat, path + ": not integer PCM");
  if (bits != 16) throw Error(ErrorCode::BadFormat, path + ": not 16-bit");
  if (channels != 1) throw Error(ErrorCode::BadFormat, path + ": not mono");
  if (sample_rate == 0) throw Error(ErrorCode::BadFormat, path + ": zero sample rate");

  std::size_t count = data_len / 2;
  if (count == 0) throw Error(ErrorCode::Empty, path + ": no samples");

  AudioClip clip;
  clip.sample_rate = static_cast<int>(sample_rate);
  clip.samples.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::int16_t s = static_cast<std::int16_t>(read_u16(data + 2 * i));
    clip.samples[i] = static_cast<double>(s) / 32768.0;
  }
  return clip;
}

void write_wav(const AudioClip& clip, const std::string& path) {
  const std::uint32_t count = static_cast<std::uint32_t>(clip.samples.size());
  const std::uint32_t data_len = count * 2;
  std::string out;
  out.reserve(44 + data_len);
  out.append("RIFF");
  put_u32(out, 36 + data_len);
  out.append("WAVE");
  out.append("fmt ");
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(clip.sample_rate) * 2);
  put_u16(out, 2);   // block align
  put_u16(out, 16);  // bits per sample
  out.append("data");
  put_u32(out, data_len);
  for (double v : clip.samples) {
    double clamped = std::clamp(v, -1.0, 1.0);
    long q = std::lround(clamped * 32767.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(q)));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::IoError, "cannot create " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw Error(ErrorCode::IoError, "write failure on " + path);
}

}  // namespace ispear::corpus
