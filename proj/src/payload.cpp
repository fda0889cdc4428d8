#include <string>

#include "lspstego/errors.hpp"
#include "lspstego/stego_engine.hpp"

namespace lspstego {

namespace {

constexpr std::size_t kHeaderBits = 36;  // 32-bit length + 4 zero bits

int symbol_width(Scheme scheme) {
  const int w = bits_per_frame(scheme);
  if (w == 0) throw DomainError("scheme 'none' carries no payload");
  return w;
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

}  // namespace

unsigned bits_to_value(std::string_view bits) {
  unsigned v = 0;
  for (char c : bits) {
    if (c != '0' && c != '1') throw DomainError("bit string contains '" + std::string(1, c) + "'");
    v = (v << 1) | static_cast<unsigned>(c - '0');
  }
  return v;
}

std::string value_to_bits(unsigned value, int width) {
  std::string s(static_cast<std::size_t>(width), '0');
  for (int i = 0; i < width; ++i) s[width - 1 - i] = static_cast<char>('0' + (value >> i & 1U));
  return s;
}

std::vector<std::uint8_t> bytes_to_bits(std::span<const std::uint8_t> bytes) {
  std::vector<std::uint8_t> bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t b : bytes)
    for (int i = 7; i >= 0; --i) bits.push_back(static_cast<std::uint8_t>(b >> i & 1U));
  return bits;
}

std::size_t frames_required(std::size_t payload_bytes, Scheme scheme) {
  const auto w = static_cast<std::size_t>(symbol_width(scheme));
  return ceil_div(kHeaderBits, w) + ceil_div(payload_bytes * 8, w);
}

std::vector<int> frame_payload(std::span<const std::uint8_t> payload, Scheme scheme) {
  if (payload.size() > 0xFFFFFFFFULL) throw DomainError("payload exceeds 4 GiB length header");
  const auto w = static_cast<std::size_t>(symbol_width(scheme));
  const auto len = static_cast<std::uint32_t>(payload.size());

  std::vector<std::uint8_t> bits;
  bits.reserve(kHeaderBits + payload.size() * 8);
  for (int i = 31; i >= 0; --i) bits.push_back(static_cast<std::uint8_t>(len >> i & 1U));
  bits.resize(kHeaderBits, 0);
  const auto body = bytes_to_bits(payload);
  bits.insert(bits.end(), body.begin(), body.end());

  std::vector<int> symbols;
  symbols.reserve(ceil_div(bits.size(), w));
  for (std::size_t i = 0; i < bits.size(); i += w) {
    int v = 0;
    for (std::size_t j = 0; j < w; ++j) v = (v << 1) | (i + j < bits.size() ? bits[i + j] : 0);
    symbols.push_back(v);
  }
  return symbols;
}

int extract_symbol(const IndexTriple& t, Scheme scheme, const MagicMatrix& m) {
  switch (scheme) {
    case Scheme::kMagic3d: return extract_frame(t, m);
    case Scheme::kLsb2: return static_cast<int>(extract_lsb2_baseline(t));
    case Scheme::kParityQim: return static_cast<int>(extract_parity_qim_baseline(t));
    case Scheme::kNone: break;
  }
  throw DomainError("scheme 'none' carries no payload");
}

std::vector<std::uint8_t> extract_stream(std::span<const IndexTriple> stego, Scheme scheme,
                                         const MagicMatrix& m) {
  const auto w = static_cast<std::size_t>(symbol_width(scheme));
  const std::size_t header_frames = ceil_div(kHeaderBits, w);
  if (stego.size() < header_frames) {
    throw TruncationError("stream has " + std::to_string(stego.size()) +
                          " frames, length header needs " + std::to_string(header_frames));
  }
  std::uint64_t header = 0;
  for (std::size_t i = 0; i < header_frames; ++i)
    header = (header << w) | static_cast<unsigned>(extract_symbol(stego[i], scheme, m));
  const auto length = static_cast<std::uint32_t>(header >> (header_frames * w - 32));

  const std::size_t needed = frames_required(length, scheme);
  if (needed > stego.size()) {
    throw TruncationError("header declares " + std::to_string(length) + " bytes (" +
                          std::to_string(needed) + " frames) but stream has " +
                          std::to_string(stego.size()) + " frames");
  }

  std::vector<std::uint8_t> out(length, 0);
  const std::size_t total_bits = static_cast<std::size_t>(length) * 8;
  std::size_t bit = 0;
  for (std::size_t f = header_frames; f < needed; ++f) {
    const int symbol = extract_symbol(stego[f], scheme, m);
    for (int j = static_cast<int>(w) - 1; j >= 0 && bit < total_bits; --j, ++bit) {
      if (symbol >> j & 1) out[bit / 8] |= static_cast<std::uint8_t>(0x80U >> (bit % 8));
    }
  }
  return out;
}

std::vector<std::uint8_t> extract_stream(std::span<const IndexTriple> stego, const MagicMatrix& m) {
  return extract_stream(stego, Scheme::kMagic3d, m);
}

}  // namespace lspstego
