#include "ringflow/domain.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace ringflow {

void RingDomain::validate() const {
  if (!(lambda > 0.0 && lambda < 1.0))
    throw std::invalid_argument("RingDomain: lambda must lie in (0,1)");
  const int n = 720;
  for (int j = 0; j < n; ++j) {
    double t = 2.0 * kPi * j / n;
    double a = inner_radius(t), b = outer_radius(t);
    if (!(a > 0.0))
      throw std::invalid_argument("RingDomain: inner curve does not enclose the origin");
    if (!(a < b))
      throw std::invalid_argument("RingDomain: empty annulus (inner radius >= outer)");
  }
}

namespace {
nlohmann::json series_to_json(const FourierSeries& f) {
  return {{"cos", f.cos_c}, {"sin", f.sin_c}};
}

FourierSeries series_from_json(const nlohmann::json& j) {
  FourierSeries f;
  if (j.contains("cos")) f.cos_c = j.at("cos").get<std::vector<double>>();
  if (j.contains("sin")) f.sin_c = j.at("sin").get<std::vector<double>>();
  while (f.sin_c.size() < f.cos_c.size()) f.sin_c.push_back(0.0);
  while (f.cos_c.size() < f.sin_c.size()) f.cos_c.push_back(0.0);
  return f;
}
}  // namespace

std::string RingDomain::to_json() const {
  nlohmann::json j;
  j["lambda"] = lambda;
  j["v_inner"] = series_to_json(v_inner);
  j["v_outer"] = series_to_json(v_outer);
  return j.dump(2);
}

RingDomain RingDomain::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("domain spec: invalid JSON: ") + e.what());
  }
  RingDomain d;
  if (!j.contains("lambda")) throw std::invalid_argument("domain spec: missing 'lambda'");
  d.lambda = j.at("lambda").get<double>();
  if (j.contains("v_inner")) d.v_inner = series_from_json(j.at("v_inner"));
  if (j.contains("v_outer")) d.v_outer = series_from_json(j.at("v_outer"));
  d.validate();
  return d;
}

}  // namespace ringflow
