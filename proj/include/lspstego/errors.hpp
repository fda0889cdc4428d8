#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lspstego {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// LPC -> LSP root search could not isolate all ten line spectral frequencies.
class ConversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inconsistent codebook / quantizer configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The cover cannot carry the requested payload.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(std::size_t required_frames, std::size_t available_frames)
      : std::runtime_error("payload needs " + std::to_string(required_frames) +
                           " frames (" + std::to_string(required_frames * 6) +
                           " bits) but cover provides " + std::to_string(available_frames) +
                           " frames (" + std::to_string(available_frames * 6) + " bits)"),
        required_(required_frames),
        available_(available_frames) {}

  std::size_t required_frames() const noexcept { return required_; }
  std::size_t available_frames() const noexcept { return available_; }

 private:
  std::size_t required_;
  std::size_t available_;
};

/// Stego stream ends before the declared payload does.
class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Base for all container/file format failures. Each container has its own subclass.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WavError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// RIFF structure is well-formed but the audio parameters are not 8 kHz / mono / 16-bit PCM.
class WavFormatUnsupported : public WavError {
 public:
  using WavError::WavError;
};

class LspiFormatError : public FormatError {
 public:
  using FormatError::FormatError;
};

class MatrixFormatError : public FormatError {
 public:
  using FormatError::FormatError;
};

class CodebookFormatError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace lspstego
