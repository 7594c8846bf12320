#include "samestats/error.hpp"

namespace samestats {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidVertex: return "InvalidVertex";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::OrderTooLarge: return "OrderTooLarge";
    case Errc::OrderTooSmall: return "OrderTooSmall";
    case Errc::OrderOutOfRange: return "OrderOutOfRange";
    case Errc::NoEdges: return "NoEdges";
    case Errc::BadReference: return "BadReference";
    case Errc::BadParam: return "BadParam";
    case Errc::MissingHistogram: return "MissingHistogram";
    case Errc::ShapeError: return "ShapeError";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::BadBins: return "BadBins";
    case Errc::MissingAtlas: return "MissingAtlas";
    case Errc::UnknownStatistic: return "UnknownStatistic";
    case Errc::CodecError: return "CodecError";
    case Errc::CorruptAtlas: return "CorruptAtlas";
    case Errc::BadQuery: return "BadQuery";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace samestats
