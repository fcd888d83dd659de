#include "fueter/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace fueter {

using json = nlohmann::json;

Domain::Domain(int n, Predicate contains, Distance ext_distance,
               Projector nearest_boundary, json description)
    : n_(n),
      contains_(std::move(contains)),
      distance_(std::move(ext_distance)),
      nearest_(std::move(nearest_boundary)),
      description_(std::move(description)) {
  if (n_ < 1) throw std::invalid_argument("domain dimension must be >= 1");
}

std::optional<Domain::Point> Domain::nearest_boundary(const Point& p) const {
  if (!nearest_) return std::nullopt;
  return nearest_(p);
}

json to_json(const QuaternionVectord& p) {
  json out = json::array();
  for (Eigen::Index i = 0; i < p.coords().size(); ++i) out.push_back(p.coords()[i]);
  return out;
}

QuaternionVectord quaternion_vector_from_json(const json& j) {
  if (!j.is_array() || j.empty() || j.size() % 4 != 0)
    throw std::invalid_argument("point must be a non-empty array of 4n reals");
  Eigen::VectorXd c(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) c[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return QuaternionVectord(c);
}

Domain Domain::ball(Point center, double radius) {
  if (!(radius > 0)) throw std::invalid_argument("ball radius must be positive");
  const int n = static_cast<int>(center.size());
  json d = {{"type", "ball"}, {"center", to_json(center)}, {"radius", radius}};
  return Domain(
      n,
      [center, radius](const Point& p) { return (p - center).norm() < radius; },
      [center, radius](const Point& p) {
        return std::max(0.0, radius - (p - center).norm());
      },
      [center, radius](const Point& p) -> std::optional<Point> {
        Point v = p - center;
        const double r = v.norm();
        if (r == 0.0) {
          v = Point(center.size());
          v.coords()[0] = 1.0;
          return center + radius * v;
        }
        return center + (radius / r) * v;
      },
      std::move(d));
}

Domain Domain::ball(int n, double radius) { return ball(Point(n), radius); }

Domain Domain::point_complement(Point removed) {
  const int n = static_cast<int>(removed.size());
  json d = {{"type", "point_complement"}, {"point", to_json(removed)}};
  return Domain(
      n, [removed](const Point& p) { return (p - removed).norm() > 0.0; },
      [removed](const Point& p) { return (p - removed).norm(); },
      [removed](const Point&) -> std::optional<Point> { return removed; },
      std::move(d));
}

Domain Domain::halfspace(Point normal, double offset) {
  const double len = normal.norm();
  if (!(len > 0)) throw std::invalid_argument("halfspace normal must be nonzero");
  const int n = static_cast<int>(normal.size());
  json d = {{"type", "halfspace"}, {"normal", to_json(normal)}, {"offset", offset}};
  Point unit = (1.0 / len) * normal;
  const double b = offset / len;
  return Domain(
      n, [unit, b](const Point& p) { return inner(unit, p) < b; },
      [unit, b](const Point& p) { return std::max(0.0, b - inner(unit, p)); },
      [unit, b](const Point& p) -> std::optional<Point> {
        return p + (b - inner(unit, p)) * unit;
      },
      std::move(d));
}

Domain Domain::intersection(std::vector<Domain> members) {
  if (members.empty()) throw std::invalid_argument("empty intersection");
  const int n = members.front().n();
  json d = {{"type", "intersection"}, {"members", json::array()}};
  for (const auto& m : members) {
    if (m.n() != n) throw std::invalid_argument("intersection members differ in n");
    d["members"].push_back(m.description());
  }
  auto shared = std::make_shared<const std::vector<Domain>>(std::move(members));
  return Domain(
      n,
      [shared](const Point& p) {
        return std::all_of(shared->begin(), shared->end(),
                           [&](const Domain& m) { return m.contains(p); });
      },
      // complement of an intersection is the union of complements
      [shared](const Point& p) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& m : *shared) best = std::min(best, m.ext_distance(p));
        return best;
      },
      [shared](const Point& p) -> std::optional<Point> {
        const Domain* arg = nullptr;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& m : *shared) {
          const double v = m.ext_distance(p);
          if (v < best) {
            best = v;
            arg = &m;
          }
        }
        if (arg == nullptr) return std::nullopt;
        return arg->nearest_boundary(p);
      },
      std::move(d));
}

Domain Domain::block_point_complement(int n, int block, Quaterniond removed) {
  if (block < 0 || block >= n) throw std::invalid_argument("block index out of range");
  json d = {{"type", "block_point_complement"},
            {"n", n},
            {"block", block + 1},
            {"point", {removed.x0, removed.x1, removed.x2, removed.x3}}};
  return Domain(
      n, [block, removed](const Point& p) { return (p[block] - removed).norm() > 0.0; },
      [block, removed](const Point& p) { return (p[block] - removed).norm(); },
      [block, removed](const Point& p) -> std::optional<Point> {
        Point out = p;
        out.set(block, removed);
        return out;
      },
      std::move(d));
}

Domain Domain::whole(int n) {
  return Domain(
      n, [](const Point&) { return true; },
      [](const Point&) { return std::numeric_limits<double>::infinity(); },
      [](const Point&) -> std::optional<Point> { return std::nullopt; },
      json{{"type", "whole"}, {"n", n}});
}

Domain Domain::empty(int n) {
  return Domain(
      n, [](const Point&) { return false; }, [](const Point&) { return 0.0; },
      [](const Point& p) -> std::optional<Point> { return p; },
      json{{"type", "empty"}, {"n", n}});
}

Domain domain_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  auto n_of = [&]() { return j.at("n").get<int>(); };
  if (type == "ball") {
    const double r = j.at("radius").get<double>();
    if (j.contains("center")) return Domain::ball(quaternion_vector_from_json(j["center"]), r);
    return Domain::ball(n_of(), r);
  }
  if (type == "point_complement") {
    if (j.contains("point")) return Domain::point_complement(quaternion_vector_from_json(j["point"]));
    return Domain::point_complement(QuaternionVectord(n_of()));
  }
  if (type == "halfspace")
    return Domain::halfspace(quaternion_vector_from_json(j.at("normal")),
                             j.at("offset").get<double>());
  if (type == "intersection") {
    std::vector<Domain> members;
    for (const auto& m : j.at("members")) members.push_back(domain_from_json(m));
    return Domain::intersection(std::move(members));
  }
  if (type == "block_point_complement") {
    const auto& p = j.at("point");
    return Domain::block_point_complement(
        n_of(), j.at("block").get<int>() - 1,
        Quaterniond(p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>(),
                    p.at(3).get<double>()));
  }
  if (type == "whole") return Domain::whole(n_of());
  if (type == "empty") return Domain::empty(n_of());
  throw std::invalid_argument("unknown domain type '" + type + "'");
}

namespace {

std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("expected key=value in '" + item + "'");
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

}  // namespace

Domain parse_domain(const std::string& text) {
  const auto first = text.find_first_not_of(" \t");
  if (first != std::string::npos && (text[first] == '{'))
    return domain_from_json(json::parse(text));

  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const auto params =
      colon == std::string::npos ? std::map<std::string, std::string>{} : parse_params(text.substr(colon + 1));
  auto get = [&](const std::string& key, const std::string& fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  const int n = std::stoi(get("n", "1"));
  if (head == "H*" || head == "point_complement") return Domain::point_complement(QuaternionVectord(n));
  if (head == "B" || head == "ball") return Domain::ball(n, std::stod(get("r", "1")));
  if (head == "whole") return Domain::whole(n);
  if (head == "empty") return Domain::empty(n);
  throw std::invalid_argument("unrecognised domain '" + text + "'");
}

}  // namespace fueter
