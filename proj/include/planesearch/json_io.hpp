#pragma once

#include "planesearch/grid.hpp"
#include "planesearch/preference.hpp"

#include <json.hpp>

#include <stdexcept>

namespace planesearch {

using Json = nlohmann::json;

/// Malformed document; the message names the offending location.
class JsonFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"n": int, "points": [[...]], "records": [{"winner": int, "losers": [int]}]}
Json dataset_to_json(const Dataset& dataset);
Dataset dataset_from_json(const Json& doc);

/// {"c": [...], "u": [...], "v": [...], "alpha_u": r, "alpha_v": r, "mode": "..."}
Json plane_to_json(const Plane& plane);
Plane plane_from_json(const Json& doc);

Json grid_spec_to_json(const GridSpec& spec);
GridSpec grid_spec_from_json(const Json& doc);

/// Plane fields plus {"level", "grid_center": [s, t], "choices": [[level, i, j]], "grid": {...}}.
Json session_to_json(const PlaneSession& session);
PlaneSession session_from_json(const Json& doc);

/// Parses text, converting parse errors into JsonFormatError with the byte offset.
Json parse_json(const std::string& text);

Json vector_to_json(const Vector& x);
Vector vector_from_json(const Json& doc, const std::string& where);

}  // namespace planesearch
