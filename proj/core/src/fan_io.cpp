#include "toricsplit/fan_io.hpp"

#include <map>
#include <set>

#include <json.hpp>

#include "toricsplit/error.hpp"

namespace toricsplit {

using nlohmann::json;

std::string describe_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

namespace {

std::int64_t as_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer, got " + j.dump());
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw ParseError(path + ": integer out of range");
  return j.get<std::int64_t>();
}

const json& array_at(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw ParseError(std::string("missing key \"") + key + "\"");
  if (!it->is_array()) throw ParseError(std::string(key) + ": expected an array");
  return *it;
}

}  // namespace

Fan parse_fan_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto at = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError("malformed JSON at " + describe_offset(text, at) + ": " + e.what(), at);
  }
  if (!doc.is_object()) throw ParseError("fan document must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "dim" && it.key() != "rays" && it.key() != "maximal_cones")
      throw ParseError("unknown key \"" + it.key() + "\"");

  auto dim_it = doc.find("dim");
  if (dim_it == doc.end()) throw ParseError("missing key \"dim\"");
  const auto dim = as_integer(*dim_it, "dim");
  if (dim < 1 || dim > kMaxDimension)
    throw ParseError("dim: " + std::to_string(dim) + " outside [1, " + std::to_string(kMaxDimension) + "]");

  const auto& jrays = array_at(doc, "rays");
  std::vector<LatticeVector> rays;
  std::map<LatticeVector, std::size_t> seen;
  for (std::size_t i = 0; i < jrays.size(); ++i) {
    const auto path = "rays[" + std::to_string(i) + "]";
    if (!jrays[i].is_array()) throw ParseError(path + ": expected an array");
    if (jrays[i].size() != static_cast<std::size_t>(dim))
      throw ParseError(path + ": has " + std::to_string(jrays[i].size()) + " coordinates, expected " +
                       std::to_string(dim));
    std::vector<std::int64_t> c;
    for (std::size_t k = 0; k < jrays[i].size(); ++k) {
      const auto x = as_integer(jrays[i][k], path + "[" + std::to_string(k) + "]");
      if (x > kMaxInputEntry || x < -kMaxInputEntry)
        throw ParseError(path + "[" + std::to_string(k) + "]: |entry| exceeds " + std::to_string(kMaxInputEntry));
      c.push_back(x);
    }
    LatticeVector v(std::move(c));
    if (v.is_zero()) throw ParseError(path + ": zero ray");
    if (!v.is_primitive()) throw ParseError(path + ": " + v.to_string() + " is not primitive");
    auto [it, inserted] = seen.emplace(v, i);
    if (!inserted) throw ParseError(path + ": duplicates rays[" + std::to_string(it->second) + "]");
    rays.push_back(std::move(v));
  }

  const auto& jcones = array_at(doc, "maximal_cones");
  std::vector<Cone> cones;
  for (std::size_t i = 0; i < jcones.size(); ++i) {
    const auto path = "maximal_cones[" + std::to_string(i) + "]";
    if (!jcones[i].is_array()) throw ParseError(path + ": expected an array");
    std::vector<std::size_t> idx;
    std::set<std::size_t> in_cone;
    for (std::size_t k = 0; k < jcones[i].size(); ++k) {
      const auto epath = path + "[" + std::to_string(k) + "]";
      const auto x = as_integer(jcones[i][k], epath);
      if (x < 0 || static_cast<std::size_t>(x) >= rays.size())
        throw ParseError(epath + ": index " + std::to_string(x) + " out of range (" + std::to_string(rays.size()) +
                         " rays)");
      if (!in_cone.insert(static_cast<std::size_t>(x)).second)
        throw ParseError(epath + ": duplicate index " + std::to_string(x));
      idx.push_back(static_cast<std::size_t>(x));
    }
    cones.emplace_back(std::move(idx));
  }

  try {
    return Fan(static_cast<int>(dim), std::move(rays), std::move(cones));
  } catch (const StructuralError& e) {
    throw ParseError(std::string("fan structure: ") + e.what());
  }
}

namespace {

json to_json(const LatticeVector& v) {
  json a = json::array();
  for (auto c : v.coords()) a.push_back(c);
  return a;
}

json to_json(const IntegerMatrix& m) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(to_json(m.row(r)));
  return a;
}

json to_json(const Fan& f) {
  json rays = json::array();
  for (const auto& v : f.rays()) rays.push_back(to_json(v));
  json cones = json::array();
  for (const auto& c : f.maximal_cones()) cones.push_back(c.rays());
  return json{{"dim", f.dim()}, {"rays", rays}, {"maximal_cones", cones}};
}

}  // namespace

std::string fan_to_json(const Fan& f, int indent) { return to_json(f).dump(indent); }

std::string report_to_json(const ValidationReport& r) {
  return json{{"strongly_convex", r.strongly_convex},
              {"simplicial", r.simplicial},
              {"smooth", r.smooth},
              {"pairwise_faces", r.pairwise_faces},
              {"complete", r.complete}}
      .dump();
}

std::string factorization_to_json(const FactorizationResult& r) {
  json blocks = json::array();
  for (const auto& b : r.blocks) {
    json basis = json::array();
    for (const auto& v : b.sub_basis) basis.push_back(to_json(v));
    blocks.push_back(json{{"sub_basis", basis}, {"factor", to_json(b.factor)}});
  }
  return json{{"blocks", blocks}, {"change_of_basis", to_json(r.change_of_basis)}}.dump();
}

}  // namespace toricsplit
