#include <doctest.h>

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lspstego/errors.hpp"
#include "lspstego/rng.hpp"
#include "lspstego/speech_io.hpp"
#include "temp_dir.hpp"

using namespace lspstego;

namespace {

void put_u32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>(v >> (8 * i) & 0xFF));
}
void put_u16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>(v >> 8));
}

// Canonical 44-byte header followed by the data chunk, built byte by byte.
std::string wav_bytes(std::uint32_t rate, std::uint16_t channels, std::uint16_t bits,
                      const std::vector<std::int16_t>& samples, std::uint16_t format = 1) {
  const std::uint32_t data_len = static_cast<std::uint32_t>(samples.size() * 2);
  std::string s = "RIFF";
  put_u32(s, 36 + data_len);
  s += "WAVEfmt ";
  put_u32(s, 16);
  put_u16(s, format);
  put_u16(s, channels);
  put_u32(s, rate);
  put_u32(s, rate * channels * bits / 8);
  put_u16(s, static_cast<std::uint16_t>(channels * bits / 8));
  put_u16(s, bits);
  s += "data";
  put_u32(s, data_len);
  for (auto v : samples) put_u16(s, static_cast<std::uint16_t>(v));
  return s;
}

std::vector<std::int16_t> ramp(std::size_t n) {
  std::vector<std::int16_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::int16_t>(static_cast<int>(i * 137 % 65536) - 32768);
  return v;
}

template <class T>
std::string bytes_of(const T& value, void (*writer)(const T&, std::ostream&)) {
  std::ostringstream out;
  writer(value, out);
  return out.str();
}

}  // namespace

TEST_SUITE("speech_io") {
  TEST_CASE("reads a hand-built 8 kHz mono 16-bit file") {
    const auto samples = ramp(240);
    std::istringstream in(wav_bytes(8000, 1, 16, samples));
    const auto clip = read_wav(in);
    CHECK(clip.sample_rate == 8000);
    CHECK(clip.channels == 1);
    CHECK(clip.samples == samples);
  }

  TEST_CASE("writer emits the canonical header") {
    WavClip clip;
    clip.samples = ramp(240);
    std::ostringstream out;
    write_wav(clip, out);
    CHECK(out.str() == wav_bytes(8000, 1, 16, clip.samples));
  }

  TEST_CASE("extra chunks before data are skipped") {
    const auto samples = ramp(10);
    std::string s = wav_bytes(8000, 1, 16, samples);
    std::string list = "LIST";
    put_u32(list, 3);
    list += "abc";
    list.push_back('\0');  // pad byte for the odd-sized chunk
    s.insert(36, list);
    std::istringstream in(s);
    CHECK(read_wav(in).samples == samples);
  }

  TEST_CASE("unsupported formats name the offending parameter") {
    auto message = [](const std::string& bytes) {
      std::istringstream in(bytes);
      try {
        read_wav(in);
      } catch (const WavFormatUnsupported& e) {
        return std::string(e.what());
      }
      return std::string("no error");
    };
    const auto stereo44 = message(wav_bytes(44100, 2, 16, ramp(20)));
    CHECK(stereo44.find("44100") != std::string::npos);
    CHECK(stereo44.find("sample rate") != std::string::npos);
    CHECK(message(wav_bytes(8000, 2, 16, ramp(20))).find("channel") != std::string::npos);
    CHECK(message(wav_bytes(8000, 1, 8, std::vector<std::int16_t>(10))).find("bit") != std::string::npos);
    CHECK(message(wav_bytes(8000, 1, 16, ramp(20), 3)).find("format") != std::string::npos);
  }

  TEST_CASE("malformed files") {
    const auto good = wav_bytes(8000, 1, 16, ramp(100));
    {
      std::istringstream in(good.substr(0, good.size() - 7));
      CHECK_THROWS_AS(read_wav(in), WavError);
    }
    {
      std::string bad = good;
      bad[0] = 'X';
      std::istringstream in(bad);
      CHECK_THROWS_AS(read_wav(in), WavError);
    }
    {
      std::istringstream in(good.substr(0, 20));
      CHECK_THROWS_AS(read_wav(in), WavError);
    }
    {
      std::istringstream in("");
      CHECK_THROWS_AS(read_wav(in), WavError);
    }
    TempDir dir;
    CHECK_THROWS_AS(read_wav(dir.path() / "none.wav"), std::runtime_error);
  }

  TEST_CASE("WAV round trips") {
    TempDir dir;
    SUBCASE("empty clip") {
      WavClip clip;
      write_wav(clip, dir.path() / "e.wav");
      CHECK(read_wav(dir.path() / "e.wav").samples.empty());
      CHECK(std::filesystem::file_size(dir.path() / "e.wav") == 44);
    }
    SUBCASE("one million samples") {
      WavClip clip;
      Rng rng(3);
      clip.samples.resize(1'000'000);
      for (auto& s : clip.samples) s = static_cast<std::int16_t>(static_cast<int>(rng.below(65536)) - 32768);
      write_wav(clip, dir.path() / "big.wav");
      CHECK(read_wav(dir.path() / "big.wav").samples == clip.samples);
    }
  }

  TEST_CASE("frame splitting") {
    WavClip clip;
    clip.samples = ramp(480);
    auto frames = frame_split(clip);
    CHECK(frames.size() == 2);
    CHECK_FALSE(frames[1].padded);

    clip.samples = ramp(250);
    frames = frame_split(clip);
    REQUIRE(frames.size() == 2);
    CHECK_FALSE(frames[0].padded);
    CHECK(frames[1].padded);
    for (std::size_t i = 0; i < 10; ++i) CHECK(frames[1].samples[i] == clip.samples[240 + i]);
    for (std::size_t i = 10; i < 240; ++i) CHECK(frames[1].samples[i] == 0);
    const auto joined = join_frames(frames);
    CHECK(joined.size() == 480);
    CHECK(std::equal(clip.samples.begin(), clip.samples.end(), joined.begin()));

    clip.samples.clear();
    CHECK(frame_split(clip).empty());
  }

  TEST_CASE("LSPI container") {
    std::vector<IndexTriple> frames;
    for (int i = 0; i < 300; ++i)
      frames.push_back({static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(255 - i % 256),
                        static_cast<std::uint8_t>(i * 7)});
    std::ostringstream out;
    write_lspi(frames, out);
    const std::string bytes = out.str();
    REQUIRE(bytes.size() == 8 + 4 + 3 * 300);
    CHECK(bytes.substr(0, 8) == "LSPIDX01");
    CHECK(static_cast<unsigned char>(bytes[8]) == 300 % 256);
    CHECK(static_cast<unsigned char>(bytes[9]) == 1);
    CHECK(static_cast<unsigned char>(bytes[12 + 3 * 5 + 2]) == 35);

    std::istringstream in(bytes);
    CHECK(read_lspi(in) == frames);

    std::string bad = bytes;
    bad[3] = 'x';
    std::istringstream bin(bad);
    CHECK_THROWS_AS(read_lspi(bin), LspiFormatError);
    std::istringstream tin(bytes.substr(0, bytes.size() - 1));
    CHECK_THROWS_AS(read_lspi(tin), LspiFormatError);

    TempDir dir;
    write_lspi(std::vector<IndexTriple>{}, dir.path() / "empty.lspi");
    CHECK(read_lspi(dir.path() / "empty.lspi").empty());
  }

  TEST_CASE("M3DM container") {
    const auto m = MagicMatrix::generate(0xDEADBEEF);
    std::ostringstream out;
    write_matrix(m, out);
    const std::string bytes = out.str();
    REQUIRE(bytes.size() == 8 + 1 + 8 + 512);
    CHECK(bytes.substr(0, 8) == "M3DMAGIC");
    CHECK(bytes[8] == 1);
    CHECK(static_cast<unsigned char>(bytes[9]) == 0xEF);
    CHECK(static_cast<unsigned char>(bytes[17 + MagicMatrix::offset(1, 2, 3)]) == m.at(1, 2, 3));

    std::istringstream in(bytes);
    const auto back = read_matrix(in);
    CHECK(back == m);
    std::ostringstream again;
    write_matrix(back, again);
    CHECK(again.str() == bytes);

    std::string bad_magic = bytes;
    bad_magic[0] = 'm';
    std::istringstream b1(bad_magic);
    CHECK_THROWS_AS(read_matrix(b1), MatrixFormatError);

    std::string bad_version = bytes;
    bad_version[8] = 2;
    std::istringstream b2(bad_version);
    CHECK_THROWS_AS(read_matrix(b2), MatrixFormatError);

    std::string swapped = bytes;
    std::swap(swapped[17], swapped[18]);
    std::istringstream b3(swapped);
    CHECK_THROWS_AS(read_matrix(b3), MatrixFormatError);
    std::istringstream b3b(swapped);
    CHECK_NOTHROW(read_matrix(b3b, false));

    std::string out_of_range = bytes;
    out_of_range[17 + 100] = static_cast<char>(64);
    std::istringstream b4(out_of_range);
    CHECK_THROWS_AS(read_matrix(b4, false), MatrixFormatError);

    std::istringstream b5(bytes.substr(0, 200));
    CHECK_THROWS_AS(read_matrix(b5), MatrixFormatError);
  }

  TEST_CASE("LSPC container") {
    const auto cb = make_synthetic_codebook(kDefaultCodebookSeed);
    TempDir dir;
    const auto path = dir.path() / "cb.lspc";
    write_codebook(cb, path);
    CHECK(std::filesystem::file_size(path) == 8 + 8 * 256 * 10);
    const auto back = read_codebook(path);
    CHECK(back == cb);
    for (int m = 0; m < kSubVectors; ++m)
      CHECK(std::memcmp(back.sub(m).rows().data(), cb.sub(m).rows().data(),
                        cb.sub(m).rows().size() * sizeof(double)) == 0);

    std::ostringstream out;
    write_codebook(cb, out);
    std::string bad = out.str();
    bad[5] = 'Q';
    std::istringstream bin(bad);
    CHECK_THROWS_AS(read_codebook(bin), CodebookFormatError);
    std::istringstream tin(out.str().substr(0, 1000));
    CHECK_THROWS_AS(read_codebook(tin), CodebookFormatError);
  }

  TEST_CASE("raw byte files") {
    TempDir dir;
    std::vector<std::uint8_t> data(1000);
    for (std::size_t i = 0; i < data.size(); ++i) data[i] = static_cast<std::uint8_t>(i * 31);
    write_bytes(data, dir.path() / "x.bin");
    CHECK(read_bytes(dir.path() / "x.bin") == data);
    write_bytes({}, dir.path() / "e.bin");
    CHECK(read_bytes(dir.path() / "e.bin").empty());
  }
}
