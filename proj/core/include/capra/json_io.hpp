#pragma once

#include <cstddef>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "capra/conjugacy.hpp"
#include "capra/ext_real.hpp"
#include "capra/l0.hpp"
#include "capra/norms.hpp"
#include "capra/vector.hpp"

namespace capra {

using Json = nlohmann::ordered_json;

/// Finite values as numbers, infinities as "inf" / "-inf".
Json to_json(const ExtReal& v);
ExtReal ext_real_from_json(const Json& j);

/// Doubles that may be infinite (bounds, gaps) go through ExtReal.
Json number_to_json(double v);

Json to_json(VectorView x);
Vector vector_from_json(const Json& j);
/// Parses a JSON array such as "[1, -2.5, 0]".
Vector parse_vector(std::string_view text);

/// Sorted 1-based indices.
Json to_json(const SupportSet& K);
SupportSet support_set_from_json(const Json& j, std::size_t dim);

Json to_json(const PhiSpec& phi);
/// "l0", "sqrt", "levelset:k" or a JSON array of d+1 numbers / "inf" / "-inf".
PhiSpec parse_phi(std::string_view text, std::size_t d);

/// One vector per line, comma separated; blank lines are skipped.
/// Errors name the 1-based line number.
std::vector<Vector> read_vector_csv(std::istream& in);
std::vector<Vector> read_vector_csv_file(const std::string& path);
Vector parse_csv_line(std::string_view line);

}  // namespace capra
