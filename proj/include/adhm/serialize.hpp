#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "adhm/gluing.hpp"
#include "adhm/spectral.hpp"

namespace adhm {

using Json = nlohmann::json;

// Parsing failures of every kind surface as ParseError.

Json scalar_to_json(const GaussianRational& x);
/// Accepts scalar text or a JSON integer.
GaussianRational scalar_from_json(const Json& j);
Json matrix_to_json(const MatrixC& m);
/// `rows` / `cols` fix the shape of empty matrices, whose JSON is [] or [[]].
MatrixC matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json config_to_json(const Config0& m);
Json config_to_json(const Config1& m);
using AnyConfig = std::variant<Config0, Config1>;
AnyConfig config_from_json(const Json& j);
AnyConfig read_config_file(const std::string& path);

Json point_to_json(const Point2& p);
Point2 point_from_json(const Json& j);
/// "x1,x2" with scalar text coordinates.
Point2 parse_point(const std::string& text);

Json ring_to_json(const GradedRing& r);
GradedRing ring_from_json(const Json& j);
Json map_to_json(const RingMap& f);
RingMap map_from_json(const Json& j);
Json module_to_json(const GradedModuleSpec& s);
GradedModuleSpec module_from_json(const Json& j);

/// Faces with dimension and ring, arrows by face name with their signed maps.
Json cover_to_json(const CoverDescription& c);
CoverDescription cover_from_json(const Json& j);

Json betti_to_json(const BettiTable& t);
BettiTable betti_from_json(const Json& j);

}  // namespace adhm
