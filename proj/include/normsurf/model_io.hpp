#pragma once

#include <string>

#include "normsurf/surface.hpp"

namespace normsurf {

/// Reads a surface model from its JSON document. Strict: unknown or missing
/// keys raise ParseError naming the field. The parsed model is not validated;
/// callers run validate() separately so that structural defects come back as
/// a report rather than an exception.
NormalSurfaceModel model_from_json(const std::string& text);
NormalSurfaceModel model_from_file(const std::string& path);

/// Canonical serialization: fixed key order, two-space indent, trailing
/// newline. parse followed by serialize is the identity on canonical
/// documents.
std::string model_to_json(const NormalSurfaceModel& model);

/// Divisor documents are flat {"name": "p/q", ...} objects.
Divisor divisor_from_json(const std::string& text, Level level);
Divisor divisor_from_file(const std::string& path, Level level);
std::string divisor_to_json(const Divisor& d);

} // namespace normsurf
