#pragma once

#include <stdexcept>
#include <string>

namespace advtext {

// Error categories. exit_class() maps them onto the process exit codes
// used by the CLI (1 = config, 2 = data, 3 = runtime).
enum class Errc {
  ConfigError,
  MalformedRecord,
  UnknownLabel,
  DimensionMismatch,
  EmptyFile,
  NotBinary,
  EmptyClass,
  EmptyDocument,
  IndexOutOfRange,
  VersionMismatch,
  CorruptFile,
  LengthMismatch,
  UnknownGenre,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

inline int exit_class(Errc code) {
  switch (code) {
    case Errc::ConfigError:
      return 1;
    case Errc::MalformedRecord:
    case Errc::UnknownLabel:
    case Errc::DimensionMismatch:
    case Errc::EmptyFile:
    case Errc::NotBinary:
    case Errc::EmptyClass:
    case Errc::VersionMismatch:
    case Errc::CorruptFile:
    case Errc::UnknownGenre:
      return 2;
    default:
      return 3;
  }
}

}  // namespace advtext
