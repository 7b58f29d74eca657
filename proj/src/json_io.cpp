#include "planesearch/json_io.hpp"

namespace planesearch {

namespace {

const Json& field(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) throw JsonFormatError(where + ": expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) throw JsonFormatError(where + ": missing field \"" + key + "\"");
  return *it;
}

double number(const Json& doc, const std::string& where) {
  if (!doc.is_number()) throw JsonFormatError(where + ": expected a number");
  return doc.get<double>();
}

long long integer(const Json& doc, const std::string& where) {
  if (!doc.is_number_integer()) throw JsonFormatError(where + ": expected an integer");
  return doc.get<long long>();
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonFormatError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json vector_to_json(const Vector& x) {
  Json arr = Json::array();
  for (Index k = 0; k < x.size(); ++k) arr.push_back(x(k));
  return arr;
}

Vector vector_from_json(const Json& doc, const std::string& where) {
  if (!doc.is_array()) throw JsonFormatError(where + ": expected an array");
  Vector x(static_cast<Index>(doc.size()));
  for (std::size_t k = 0; k < doc.size(); ++k)
    x(static_cast<Index>(k)) = number(doc[k], where + "[" + std::to_string(k) + "]");
  return x;
}

Json dataset_to_json(const Dataset& dataset) {
  Json points = Json::array();
  for (const Vector& p : dataset.points()) points.push_back(vector_to_json(p));
  Json records = Json::array();
  for (const PreferenceRecord& r : dataset.records())
    records.push_back(Json{{"winner", r.winner}, {"losers", r.losers}});
  return Json{{"n", dataset.dim()}, {"points", std::move(points)}, {"records", std::move(records)}};
}

Dataset dataset_from_json(const Json& doc) {
  const long long n = integer(field(doc, "n", "dataset"), "dataset.n");
  if (n < 1) throw JsonFormatError("dataset.n: must be >= 1");
  Dataset data{SearchSpace(static_cast<int>(n))};
  const Json& points = field(doc, "points", "dataset");
  if (!points.is_array()) throw JsonFormatError("dataset.points: expected an array");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const std::string where = "dataset.points[" + std::to_string(i) + "]";
    const Vector x = vector_from_json(points[i], where);
    if (!data.space().contains(x)) throw JsonFormatError(where + ": not a point of [0,1]^n");
    if (data.find(x)) throw JsonFormatError(where + ": duplicate point");
    data.add_point(x);
  }
  const Json& records = field(doc, "records", "dataset");
  if (!records.is_array()) throw JsonFormatError("dataset.records: expected an array");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string where = "dataset.records[" + std::to_string(i) + "]";
    const Index winner = integer(field(records[i], "winner", where), where + ".winner");
    const Json& losers = field(records[i], "losers", where);
    if (!losers.is_array()) throw JsonFormatError(where + ".losers: expected an array");
    std::vector<Index> idx;
    for (std::size_t k = 0; k < losers.size(); ++k)
      idx.push_back(integer(losers[k], where + ".losers[" + std::to_string(k) + "]"));
    try {
      data.add_record(winner, std::move(idx));
    } catch (const std::invalid_argument& e) {
      throw JsonFormatError(where + ": " + e.what());
    }
  }
  return data;
}

Json plane_to_json(const Plane& plane) {
  return Json{{"c", vector_to_json(plane.center)},       {"u", vector_to_json(plane.u)},
              {"v", vector_to_json(plane.v)},            {"alpha_u", plane.neg_u_scale},
              {"alpha_v", plane.neg_v_scale},            {"mode", to_string(plane.mode)}};
}

Plane plane_from_json(const Json& doc) {
  Plane plane;
  plane.center = vector_from_json(field(doc, "c", "plane"), "plane.c");
  plane.u = vector_from_json(field(doc, "u", "plane"), "plane.u");
  plane.v = vector_from_json(field(doc, "v", "plane"), "plane.v");
  if (plane.u.size() != plane.center.size() || plane.v.size() != plane.center.size())
    throw JsonFormatError("plane: c, u and v must have equal length");
  plane.neg_u_scale = number(field(doc, "alpha_u", "plane"), "plane.alpha_u");
  plane.neg_v_scale = number(field(doc, "alpha_v", "plane"), "plane.alpha_v");
  const Json& mode = field(doc, "mode", "plane");
  if (!mode.is_string()) throw JsonFormatError("plane.mode: expected a string");
  try {
    plane.mode = boundary_mode_from_string(mode.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(std::string("plane.mode: ") + e.what());
  }
  return plane;
}

Json grid_spec_to_json(const GridSpec& spec) {
  return Json{{"resolution", spec.resolution}, {"levels", spec.levels}, {"zoom_factor", spec.zoom_factor}};
}

GridSpec grid_spec_from_json(const Json& doc) {
  GridSpec spec;
  spec.resolution = static_cast<int>(integer(field(doc, "resolution", "grid"), "grid.resolution"));
  spec.levels = static_cast<int>(integer(field(doc, "levels", "grid"), "grid.levels"));
  spec.zoom_factor = number(field(doc, "zoom_factor", "grid"), "grid.zoom_factor");
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw JsonFormatError(e.what());
  }
  return spec;
}

Json session_to_json(const PlaneSession& session) {
  Json doc = plane_to_json(session.plane());
  doc["level"] = session.level();
  doc["grid_center"] = Json::array({session.grid_center().s, session.grid_center().t});
  Json choices = Json::array();
  for (const GridChoice& c : session.choices()) choices.push_back(Json::array({c.level, c.i, c.j}));
  doc["choices"] = std::move(choices);
  doc["grid"] = grid_spec_to_json(session.spec());
  return doc;
}

PlaneSession session_from_json(const Json& doc) {
  Plane plane = plane_from_json(doc);
  const GridSpec spec = grid_spec_from_json(field(doc, "grid", "session"));
  const Json& choices = field(doc, "choices", "session");
  if (!choices.is_array()) throw JsonFormatError("session.choices: expected an array");
  std::vector<GridChoice> history;
  for (std::size_t k = 0; k < choices.size(); ++k) {
    const std::string where = "session.choices[" + std::to_string(k) + "]";
    const Json& c = choices[k];
    if (!c.is_array() || c.size() != 3) throw JsonFormatError(where + ": expected [level, i, j]");
    history.push_back(GridChoice{static_cast<int>(integer(c[0], where)), static_cast<int>(integer(c[1], where)),
                                 static_cast<int>(integer(c[2], where))});
  }
  PlaneSession session = [&] {
    try {
      return PlaneSession::replay(std::move(plane), spec, history);
    } catch (const std::exception& e) {
      throw JsonFormatError(std::string("session.choices: ") + e.what());
    }
  }();
  const long long level = integer(field(doc, "level", "session"), "session.level");
  const Vector center = vector_from_json(field(doc, "grid_center", "session"), "session.grid_center");
  if (level != session.level() || center.size() != 2 || center(0) != session.grid_center().s ||
      center(1) != session.grid_center().t)
    throw JsonFormatError("session: level/grid_center inconsistent with choices");
  return session;
}

}  // namespace planesearch
