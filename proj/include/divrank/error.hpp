#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divrank {

enum class Errc {
  DisconnectedGraph,
  SelfLoop,
  NonPositiveMultiplicity,
  InvalidVertex,
  TooFewVertices,
  DimensionMismatch,
  DegreeOutOfRange,
  NotInH0,
  TOutOfRange,
  SingularMap,
  HeightNotDivisor,
  BadAlphaShape,
  BadArgument,
  ParseError,
  Overflow,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::NonPositiveMultiplicity: return "NonPositiveMultiplicity";
    case Errc::InvalidVertex: return "InvalidVertex";
    case Errc::TooFewVertices: return "TooFewVertices";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DegreeOutOfRange: return "DegreeOutOfRange";
    case Errc::NotInH0: return "NotInH0";
    case Errc::TOutOfRange: return "TOutOfRange";
    case Errc::SingularMap: return "SingularMap";
    case Errc::HeightNotDivisor: return "HeightNotDivisor";
    case Errc::BadAlphaShape: return "BadAlphaShape";
    case Errc::BadArgument: return "BadArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

/// Every domain failure in the library is reported as an Error carrying a code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  [[nodiscard]] Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace divrank
