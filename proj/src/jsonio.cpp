#include "rectpath/jsonio.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rectpath {

namespace {

using nlohmann::json;

std::vector<Point> parse_ring(const json& j) {
  std::vector<Point> r;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer())
      throw std::runtime_error("ring vertex must be [int,int]");
    r.push_back({v[0].get<i64>(), v[1].get<i64>()});
  }
  return r;
}

}  // namespace

std::variant<Domain, DomainError> load_domain_json(const std::string& text) {
  try {
    json j = json::parse(text);
    std::vector<std::vector<Point>> rings;
    rings.push_back(parse_ring(j.at("outer")));
    if (j.contains("holes"))
      for (const auto& h : j["holes"]) rings.push_back(parse_ring(h));
    return Domain::validate(std::move(rings));
  } catch (const std::exception& e) {
    return DomainError{"NonRectilinearEdge", std::string("bad JSON: ") + e.what()};
  }
}

std::variant<Domain, DomainError> load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    return DomainError{"NonRectilinearEdge", "cannot open file: " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_domain_json(ss.str());
}

std::string domain_to_json(const Domain& d) {
  json j;
  auto ring = [](const std::vector<Point>& r) {
    json a = json::array();
    for (Point p : r) a.push_back({p.x, p.y});
    return a;
  };
  j["outer"] = ring(d.rings[0]);
  j["holes"] = json::array();
  for (size_t i = 1; i < d.rings.size(); ++i)
    j["holes"].push_back(ring(d.rings[i]));
  return j.dump(2);
}

}  // namespace rectpath
