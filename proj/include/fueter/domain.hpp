#pragma once

// Open subsets of H^n given by a membership predicate and the exterior
// distance delta(p, U^c) = inf_{y not in U} ||p - y||.

#include "fueter/quaternion.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fueter {

class Domain {
 public:
  using Point = QuaternionVectord;
  using Predicate = std::function<bool(const Point&)>;
  using Distance = std::function<double(const Point&)>;
  using Projector = std::function<std::optional<Point>(const Point&)>;

  Domain(int n, Predicate contains, Distance ext_distance,
         Projector nearest_boundary = {}, nlohmann::json description = {});

  int n() const { return n_; }
  bool contains(const Point& p) const { return contains_(p); }
  double ext_distance(const Point& p) const { return distance_(p); }

  // A point of the boundary realising ext_distance(p), when the domain can
  // produce one in closed form.
  std::optional<Point> nearest_boundary(const Point& p) const;

  const nlohmann::json& description() const { return description_; }

  static Domain ball(Point center, double radius);
  static Domain ball(int n, double radius);
  static Domain point_complement(Point removed);
  // {p : <normal, p> < offset}
  static Domain halfspace(Point normal, double offset);
  static Domain intersection(std::vector<Domain> members);
  // {p : q_block != removed}
  static Domain block_point_complement(int n, int block, Quaterniond removed);
  static Domain whole(int n);
  static Domain empty(int n);

 private:
  int n_;
  Predicate contains_;
  Distance distance_;
  Projector nearest_;
  nlohmann::json description_;
};

// JSON form: {"type": "ball"|"point_complement"|"halfspace"|"intersection"|
// "block_point_complement"|"whole"|"empty", ...}. Points are flat arrays of
// reals, four per quaternion entry.
Domain domain_from_json(const nlohmann::json& j);

// Accepts JSON or the shorthands "H*:n=1", "B:r=1,n=2", "whole:n=2",
// "empty:n=1".
Domain parse_domain(const std::string& text);

nlohmann::json to_json(const QuaternionVectord& p);
QuaternionVectord quaternion_vector_from_json(const nlohmann::json& j);

}  // namespace fueter
