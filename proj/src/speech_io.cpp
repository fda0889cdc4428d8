#include "lspstego/speech_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "lspstego/errors.hpp"

namespace lspstego {

namespace {

// Little-endian primitive I/O. Readers throw E on short reads.

template <typename E>
void read_exact(std::istream& in, void* dst, std::size_t n, const char* what) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw E(std::string("truncated ") + what);
}

template <typename E, typename T>
T read_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(T)> b{};
  read_exact<E>(in, b.data(), b.size(), what);
  std::make_unsigned_t<T> v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<std::make_unsigned_t<T>>(b[i]) << (8 * i);
  return static_cast<T>(v);
}

template <typename T>
void write_le(std::ostream& out, T value) {
  auto v = static_cast<std::make_unsigned_t<T>>(value);
  std::array<char, sizeof(T)> b{};
  for (std::size_t i = 0; i < sizeof(T); ++i) b[i] = static_cast<char>(v >> (8 * i) & 0xFF);
  out.write(b.data(), b.size());
}

template <typename E>
double read_f64(std::istream& in, const char* what) {
  return std::bit_cast<double>(read_le<E, std::uint64_t>(in, what));
}

void write_f64(std::ostream& out, double v) { write_le(out, std::bit_cast<std::uint64_t>(v)); }

template <typename E>
void expect_magic(std::istream& in, std::string_view magic, const char* format) {
  std::string got(magic.size(), '\0');
  in.read(got.data(), static_cast<std::streamsize>(got.size()));
  if (static_cast<std::size_t>(in.gcount()) != magic.size() || got != magic) {
    throw E(std::string(format) + ": bad magic, expected \"" + std::string(magic) + "\"");
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

void finish(std::ostream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

constexpr std::string_view kLspiMagic = "LSPIDX01";
constexpr std::string_view kMatrixMagic = "M3DMAGIC";
constexpr std::uint8_t kMatrixVersion = 0x01;
constexpr std::string_view kCodebookMagic = "LSPCBK01";

}  // namespace

// ---- WAV ----------------------------------------------------------------

WavClip read_wav(std::istream& in) {
  expect_magic<WavError>(in, "RIFF", "WAV");
  read_le<WavError, std::uint32_t>(in, "RIFF size");
  expect_magic<WavError>(in, "WAVE", "WAV");

  bool have_fmt = false;
  WavClip clip;
  int bits = 0;
  while (true) {
    char id[4];
    in.read(id, 4);
    if (in.gcount() == 0) break;
    if (in.gcount() != 4) throw WavError("truncated chunk header");
    const auto size = read_le<WavError, std::uint32_t>(in, "chunk size");
    const std::string chunk(id, 4);

    if (chunk == "fmt ") {
      if (size < 16) throw WavError("fmt chunk too short");
      const auto format = read_le<WavError, std::uint16_t>(in, "fmt chunk");
      clip.channels = read_le<WavError, std::uint16_t>(in, "fmt chunk");
      clip.sample_rate = static_cast<int>(read_le<WavError, std::uint32_t>(in, "fmt chunk"));
      read_le<WavError, std::uint32_t>(in, "fmt chunk");  // byte rate
      read_le<WavError, std::uint16_t>(in, "fmt chunk");  // block align
      bits = read_le<WavError, std::uint16_t>(in, "fmt chunk");
      std::vector<char> rest(size - 16 + (size & 1));
      read_exact<WavError>(in, rest.data(), rest.size(), "fmt chunk");
      if (format != 1) throw WavFormatUnsupported("unsupported audio format " + std::to_string(format) + " (need PCM = 1)");
      if (clip.sample_rate != kSampleRate)
        throw WavFormatUnsupported("unsupported sample rate " + std::to_string(clip.sample_rate) + " Hz (need 8000)");
      if (clip.channels != 1)
        throw WavFormatUnsupported("unsupported channel count " + std::to_string(clip.channels) + " (need 1)");
      if (bits != 16)
        throw WavFormatUnsupported("unsupported bits per sample " + std::to_string(bits) + " (need 16)");
      have_fmt = true;
    } else if (chunk == "data") {
      if (!have_fmt) throw WavError("data chunk before fmt chunk");
      if (size % 2 != 0) throw WavError("data chunk size not a multiple of the sample size");
      std::vector<unsigned char> raw(size);
      read_exact<WavError>(in, raw.data(), raw.size(), "data chunk");
      clip.samples.resize(size / 2);
      for (std::size_t i = 0; i < clip.samples.size(); ++i) {
        clip.samples[i] = static_cast<std::int16_t>(raw[2 * i] | (raw[2 * i + 1] << 8));
      }
      return clip;
    } else {
      std::vector<char> skip(size + (size & 1));
      read_exact<WavError>(in, skip.data(), skip.size(), "chunk");
    }
  }
  throw WavError(have_fmt ? "missing data chunk" : "missing fmt chunk");
}

WavClip read_wav(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_wav(in);
}

void write_wav(const WavClip& clip, std::ostream& out) {
  const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 2);
  out.write("RIFF", 4);
  write_le<std::uint32_t>(out, 36 + data_bytes);
  out.write("WAVEfmt ", 8);
  write_le<std::uint32_t>(out, 16);
  write_le<std::uint16_t>(out, 1);
  write_le<std::uint16_t>(out, static_cast<std::uint16_t>(clip.channels));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(clip.sample_rate));
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(clip.sample_rate * clip.channels * 2));
  write_le<std::uint16_t>(out, static_cast<std::uint16_t>(clip.channels * 2));
  write_le<std::uint16_t>(out, 16);
  out.write("data", 4);
  write_le<std::uint32_t>(out, data_bytes);
  std::vector<char> raw(data_bytes);
  for (std::size_t i = 0; i < clip.samples.size(); ++i) {
    const auto v = static_cast<std::uint16_t>(clip.samples[i]);
    raw[2 * i] = static_cast<char>(v & 0xFF);
    raw[2 * i + 1] = static_cast<char>(v >> 8);
  }
  out.write(raw.data(), static_cast<std::streamsize>(raw.size()));
}

void write_wav(const WavClip& clip, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_wav(clip, out);
  finish(out, path);
}

std::vector<SpeechFrame> frame_split(const WavClip& clip) {
  std::vector<SpeechFrame> frames;
  const auto& s = clip.samples;
  for (std::size_t start = 0; start < s.size(); start += kFrameSamples) {
    SpeechFrame f;
    const std::size_t n = std::min(kFrameSamples, s.size() - start);
    std::copy_n(s.begin() + static_cast<std::ptrdiff_t>(start), n, f.samples.begin());
    f.padded = n < kFrameSamples;
    frames.push_back(f);
  }
  return frames;
}

std::vector<std::int16_t> join_frames(std::span<const SpeechFrame> frames) {
  std::vector<std::int16_t> out;
  out.reserve(frames.size() * kFrameSamples);
  for (const auto& f : frames) out.insert(out.end(), f.samples.begin(), f.samples.end());
  return out;
}

// ---- LSPI ---------------------------------------------------------------

void write_lspi(std::span<const IndexTriple> frames, std::ostream& out) {
  out.write(kLspiMagic.data(), kLspiMagic.size());
  write_le<std::uint32_t>(out, static_cast<std::uint32_t>(frames.size()));
  for (const auto& t : frames) {
    const char b[3] = {static_cast<char>(t.ix), static_cast<char>(t.iy), static_cast<char>(t.iz)};
    out.write(b, 3);
  }
}

void write_lspi(std::span<const IndexTriple> frames, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_lspi(frames, out);
  finish(out, path);
}

std::vector<IndexTriple> read_lspi(std::istream& in) {
  expect_magic<LspiFormatError>(in, kLspiMagic, "LSPI");
  const auto count = read_le<LspiFormatError, std::uint32_t>(in, "LSPI frame count");
  std::vector<unsigned char> raw(static_cast<std::size_t>(count) * 3);
  read_exact<LspiFormatError>(in, raw.data(), raw.size(), "LSPI frames");
  std::vector<IndexTriple> frames(count);
  for (std::size_t i = 0; i < count; ++i) frames[i] = {raw[3 * i], raw[3 * i + 1], raw[3 * i + 2]};
  return frames;
}

std::vector<IndexTriple> read_lspi(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_lspi(in);
}

// ---- M3DM ---------------------------------------------------------------

void write_matrix(const MagicMatrix& m, std::ostream& out) {
  out.write(kMatrixMagic.data(), kMatrixMagic.size());
  out.put(static_cast<char>(kMatrixVersion));
  write_le<std::uint64_t>(out, m.seed());
  out.write(reinterpret_cast<const char*>(m.cells().data()), static_cast<std::streamsize>(m.cells().size()));
}

void write_matrix(const MagicMatrix& m, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_matrix(m, out);
  finish(out, path);
}

MagicMatrix read_matrix(std::istream& in, bool check) {
  expect_magic<MatrixFormatError>(in, kMatrixMagic, "M3DM");
  std::uint8_t version = 0;
  read_exact<MatrixFormatError>(in, &version, 1, "M3DM version");
  if (version != kMatrixVersion) throw MatrixFormatError("M3DM: unsupported version " + std::to_string(version));
  const auto seed = read_le<MatrixFormatError, std::uint64_t>(in, "M3DM seed");
  MagicMatrix::Cells cells{};
  read_exact<MatrixFormatError>(in, cells.data(), cells.size(), "M3DM cells");
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] >= kAlphabet)
      throw MatrixFormatError("M3DM: cell " + std::to_string(i) + " holds " + std::to_string(cells[i]) +
                              ", outside 0..63");
  auto m = MagicMatrix::from_cells(cells, seed);
  if (!check) return m;
  const auto report = validate(m);
  if (!report.ok()) {
    throw MatrixFormatError("M3DM: cube violates " + std::to_string(report.violations.size()) +
                            " constraints, first: " + report.violations.front().describe());
  }
  return m;
}

MagicMatrix read_matrix(const std::filesystem::path& path, bool check) {
  auto in = open_in(path);
  return read_matrix(in, check);
}

// ---- LSPC ---------------------------------------------------------------

void write_codebook(const Codebook& cb, std::ostream& out) {
  out.write(kCodebookMagic.data(), kCodebookMagic.size());
  for (int m = 0; m < kSubVectors; ++m)
    for (double v : cb.sub(m).rows()) write_f64(out, v);
}

void write_codebook(const Codebook& cb, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_codebook(cb, out);
  finish(out, path);
}

Codebook read_codebook(std::istream& in) {
  expect_magic<CodebookFormatError>(in, kCodebookMagic, "LSPC");
  std::array<SubCodebook, kSubVectors> subs;
  for (int m = 0; m < kSubVectors; ++m) {
    std::vector<double> rows(static_cast<std::size_t>(kSubDims[m]) * kCodebookSize);
    for (double& v : rows) v = read_f64<CodebookFormatError>(in, "LSPC entries");
    subs[m] = SubCodebook(kSubDims[m], std::move(rows));
  }
  return Codebook(std::move(subs));
}

Codebook read_codebook(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_codebook(in);
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  auto in = open_in(path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(std::span<const std::uint8_t> bytes, const std::filesystem::path& path) {
  auto out = open_out(path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  finish(out, path);
}

}  // namespace lspstego
