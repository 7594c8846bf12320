#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace samestats {

enum class Errc {
  InvalidVertex,
  SelfLoop,
  OrderTooLarge,
  OrderTooSmall,
  OrderOutOfRange,
  NoEdges,
  BadReference,
  BadParam,
  MissingHistogram,
  ShapeError,
  EmptyInput,
  BadBins,
  MissingAtlas,
  UnknownStatistic,
  CodecError,
  CorruptAtlas,
  BadQuery,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

// All domain failures are reported through this exception; code() carries
// the machine-readable kind that the CLI and HTTP layers surface verbatim.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace samestats
