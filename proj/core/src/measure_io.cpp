#include "quantchar/measure_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "quantchar/error.hpp"

namespace quantchar {
namespace {

using nlohmann::json;

double number(const json& params, const char* key) {
  if (!params.contains(key) || !params.at(key).is_number())
    throw InvalidArgument(std::string("measure: params.") + key + " must be a number");
  return params.at(key).get<double>();
}

Point atom(const json& value) {
  if (value.is_number()) return Point{value.get<double>()};
  if (!value.is_array() || value.empty())
    throw InvalidArgument("measure: each atom must be a number or a nonempty array");
  Point p;
  for (const auto& c : value) {
    if (!c.is_number()) throw InvalidArgument("measure: atom coordinates must be numbers");
    p.push_back(c.get<double>());
  }
  return p;
}

}  // namespace

Measure measure_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("measure: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
    throw InvalidArgument("measure: missing string field 'kind'");
  const auto kind = doc.at("kind").get<std::string>();

  if (kind == "discrete") {
    if (!doc.contains("atoms") || !doc.at("atoms").is_array())
      throw InvalidArgument("measure: discrete law needs an 'atoms' array");
    Grid atoms;
    for (const auto& a : doc.at("atoms")) atoms.push_back(atom(a));
    if (!doc.contains("weights")) return DiscreteMeasure::uniform_over(std::move(atoms));
    if (!doc.at("weights").is_array()) throw InvalidArgument("measure: 'weights' must be an array");
    std::vector<double> weights;
    for (const auto& w : doc.at("weights")) {
      if (!w.is_number()) throw InvalidArgument("measure: weights must be numbers");
      weights.push_back(w.get<double>());
    }
    return DiscreteMeasure(std::move(atoms), std::move(weights));
  }

  const json params = doc.value("params", json::object());
  if (!params.is_object()) throw InvalidArgument("measure: 'params' must be an object");
  if (kind == "dirac") return Analytic1D::dirac(number(params, "c"));
  if (kind == "uniform") return Analytic1D::uniform(number(params, "a"), number(params, "b"));
  if (kind == "normal") return Analytic1D::normal(number(params, "m"), number(params, "s"));
  if (kind == "lognormal") return Analytic1D::lognormal(number(params, "m"), number(params, "s"));
  throw InvalidArgument("measure: unknown kind '" + kind + "'");
}

Measure load_measure(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("measure: cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return measure_from_json(buffer.str());
}

std::string measure_to_json(const Measure& mu) {
  json doc;
  if (const auto* d = mu.discrete()) {
    doc["kind"] = "discrete";
    doc["atoms"] = d->atoms();
    doc["weights"] = d->weights();
    return doc.dump();
  }
  const auto* a = mu.analytic();
  if (!a) throw Unsupported("measure_to_json: sampler-backed laws have no file form");
  const auto [first, second] = a->parameters();
  switch (a->family()) {
    case Analytic1D::Family::dirac:
      doc = {{"kind", "dirac"}, {"params", {{"c", first}}}};
      break;
    case Analytic1D::Family::uniform:
      doc = {{"kind", "uniform"}, {"params", {{"a", first}, {"b", second}}}};
      break;
    case Analytic1D::Family::normal:
      doc = {{"kind", "normal"}, {"params", {{"m", first}, {"s", second}}}};
      break;
    case Analytic1D::Family::lognormal:
      doc = {{"kind", "lognormal"}, {"params", {{"m", first}, {"s", second}}}};
      break;
  }
  return doc.dump();
}

}  // namespace quantchar
