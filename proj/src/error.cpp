#include "hanstream/error.hpp"

namespace hanstream {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidFrame: return "invalid_frame";
    case Errc::DegenerateFinger: return "degenerate_finger";
    case Errc::ParseError: return "parse_error";
    case Errc::TypeError: return "type_error";
    case Errc::EmptyDataset: return "empty_dataset";
    case Errc::DegenerateDomain: return "degenerate_domain";
    case Errc::SpecError: return "spec_error";
    case Errc::EmptyGraph: return "empty_graph";
    case Errc::UnknownNode: return "unknown_node";
    case Errc::IncompleteSeries: return "incomplete_series";
    case Errc::DegenerateTime: return "degenerate_time";
    case Errc::SchemaError: return "schema_error";
    case Errc::DuplicateId: return "duplicate_id";
    case Errc::UnsupportedGesture: return "unsupported_gesture";
    case Errc::MissingData: return "missing_data";
    case Errc::UnknownScene: return "unknown_scene";
    case Errc::ReplayError: return "replay_error";
    case Errc::InvalidConfig: return "invalid_config";
  }
  return "unknown";
}

}  // namespace hanstream
