#include "capra/json_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>

#include "capra/errors.hpp"

namespace capra {

Json to_json(const ExtReal& v) {
  if (v.is_plus_infinity()) return "inf";
  if (v.is_minus_infinity()) return "-inf";
  return v.value();
}

ExtReal ext_real_from_json(const Json& j) {
  if (j.is_number()) return ExtReal::from_double(j.get<double>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return ExtReal::plus_infinity();
    if (s == "-inf") return ExtReal::minus_infinity();
  }
  throw InvalidArgument("expected a number or \"inf\"/\"-inf\", got " + j.dump());
}

Json number_to_json(double v) {
  if (std::isnan(v)) return nullptr;
  return to_json(ExtReal::from_double(v));
}

Json to_json(VectorView x) {
  Json arr = Json::array();
  for (double v : x) arr.push_back(v);
  return arr;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("expected a nonempty JSON array of numbers");
  Vector x;
  x.reserve(j.size());
  for (const Json& e : j) {
    if (!e.is_number()) throw InvalidArgument("vector entry is not a number: " + e.dump());
    x.push_back(e.get<double>());
  }
  require_finite(x, "vector");
  return x;
}

Vector parse_vector(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("cannot parse vector '" + std::string(text) + "': " + e.what());
  }
  return vector_from_json(j);
}

Json to_json(const SupportSet& K) {
  Json arr = Json::array();
  for (std::size_t i : K.one_based()) arr.push_back(i);
  return arr;
}

SupportSet support_set_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw InvalidArgument("support set must be a JSON array");
  std::vector<std::size_t> idx;
  for (const Json& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 1) {
      throw InvalidArgument("support set entries are positive integers: " + e.dump());
    }
    idx.push_back(e.get<std::size_t>());
  }
  std::sort(idx.begin(), idx.end());
  return SupportSet::from_one_based(dim, idx);
}

Json to_json(const PhiSpec& phi) {
  Json arr = Json::array();
  for (const ExtReal& v : phi.values()) arr.push_back(to_json(v));
  return arr;
}

PhiSpec parse_phi(std::string_view text, std::size_t d) {
  if (text == "l0" || text == "id") return PhiSpec::identity(d);
  if (text == "sqrt") return PhiSpec::sqrt(d);
  constexpr std::string_view kLevel = "levelset:";
  if (text.substr(0, kLevel.size()) == kLevel) {
    const std::string num(text.substr(kLevel.size()));
    char* end = nullptr;
    errno = 0;
    const long k = std::strtol(num.c_str(), &end, 10);
    if (num.empty() || *end != '\0' || errno != 0 || k < 0) {
      throw InvalidArgument("cannot parse level from '" + std::string(text) + "'");
    }
    return PhiSpec::levelset(d, static_cast<std::size_t>(k));
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    throw InvalidArgument("phi must be l0, sqrt, levelset:k or a JSON array, got '" +
                          std::string(text) + "'");
  }
  if (!j.is_array()) throw InvalidArgument("phi must be a JSON array");
  if (j.size() != d + 1) {
    throw InvalidArgument("phi has " + std::to_string(j.size()) + " entries, expected d+1 = " +
                          std::to_string(d + 1));
  }
  std::vector<ExtReal> values;
  for (const Json& e : j) values.push_back(ext_real_from_json(e));
  return PhiSpec(std::move(values));
}

Vector parse_csv_line(std::string_view line) {
  Vector x;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string field(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw InvalidArgument("empty field");
    field = field.substr(first, last - first + 1);
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(field.c_str(), &end);
    if (*end != '\0' || errno != 0 || !std::isfinite(v)) {
      throw InvalidArgument("not a finite number: '" + field + "'");
    }
    x.push_back(v);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return x;
}

std::vector<Vector> read_vector_csv(std::istream& in) {
  std::vector<Vector> out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_csv_line(line));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("line " + std::to_string(number) + ": " + e.what());
    }
    if (out.size() > 1 && out.back().size() != out.front().size()) {
      throw InvalidArgument("line " + std::to_string(number) + ": expected " +
                            std::to_string(out.front().size()) + " entries, got " +
                            std::to_string(out.back().size()));
    }
  }
  if (out.empty()) throw InvalidArgument("vector file contains no vectors");
  return out;
}

std::vector<Vector> read_vector_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open vector file '" + path + "'");
  try {
    return read_vector_csv(in);
  } catch (const InvalidArgument& e) {
    throw InvalidArgument(path + ": " + e.what());
  }
}

}  // namespace capra
