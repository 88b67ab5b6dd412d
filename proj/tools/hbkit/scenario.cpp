#include "scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "hbkit/errors.hpp"
#include "hbkit/poisson/poisson.hpp"
#include "hbkit/symcalc/expr.hpp"

namespace hbkit::cli {

using json = nlohmann::json;
using geom::Mask;
using geom::VectorField;

namespace {

const std::set<std::string> kTopLevel{"schema",     "name",   "description",  "chart", "connection",
                                      "poisson",    "action", "premomentum",  "sigma", "casimir",
                                      "primitives", "Q",      "averaged_from"};

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string join(const std::string& path, std::size_t index) { return path + "[" + std::to_string(index) + "]"; }

const json& require(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError("missing field '" + join(path, key) + "'");
  return *it;
}

void expect(const json& j, json::value_t type, const std::string& path, const char* what) {
  const bool ok = type == json::value_t::number_integer ? j.is_number_integer() : j.type() == type;
  if (!ok) throw SchemaError("field '" + path + "' must be " + what);
}

void expect_object(const json& j, const std::string& path) { expect(j, json::value_t::object, path, "an object"); }
void expect_array(const json& j, const std::string& path) { expect(j, json::value_t::array, path, "an array"); }

std::string expect_string(const json& j, const std::string& path) {
  expect(j, json::value_t::string, path, "a string");
  return j.get<std::string>();
}

std::vector<std::string> names(const json& j, const std::string& path) {
  expect_array(j, path);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(expect_string(j[i], join(path, i)));
  return out;
}

Scalar expr(const ChartPtr& chart, const json& j, const std::string& path) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number_integer()) {
    text = std::to_string(j.get<long long>());
  } else {
    throw SchemaError("field '" + path + "' must be an expression string");
  }
  try {
    return symcalc::parse_scalar(chart, text);
  } catch (const ExpressionError& e) {
    throw ParseError("field '" + path + "': " + e.what());
  } catch (const UnknownSymbol& e) {
    throw ParseError("field '" + path + "': " + e.what());
  }
}

std::size_t coordinate(const ChartPtr& chart, const std::string& name, const std::string& path) {
  const auto s = chart->find(name);
  if (!s || s->kind != symcalc::SymbolKind::kCoordinate)
    throw SchemaError("field '" + path + "': '" + name + "' is not a coordinate");
  return chart->coordinate_index(name);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(' ');
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(' ') - a + 1);
}

// Keys are comma-separated coordinate names: "q,p" stands for d_q ^ d_p or
// dq ^ dp. Out-of-order keys pick up the sign of the permutation.
template <class T>
T alternating(const ChartPtr& chart, const json& j, std::size_t degree, const std::string& path) {
  expect_object(j, path);
  T out(chart, degree);
  for (const auto& [key, value] : j.items()) {
    const std::string at = join(path, key);
    std::vector<std::size_t> indices;
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, ',');) indices.push_back(coordinate(chart, trim(part), at));
    if (indices.size() != degree)
      throw SchemaError("field '" + at + "': expected " + std::to_string(degree) + " coordinate names");
    if (std::set<std::size_t>(indices.begin(), indices.end()).size() != degree)
      throw SchemaError("field '" + at + "': repeated coordinate");
    out += expr(chart, value, at) * T::basis(chart, indices);
  }
  return out;
}

DiffForm horizontal_form(const ChartPtr& chart, const json& j, std::size_t degree, const std::string& path) {
  DiffForm a = alternating<DiffForm>(chart, j, degree, path);
  if (!foliation::is_horizontal_form(a)) throw InvariantViolation("field '" + path + "' is not a horizontal form");
  return a;
}

ChartPtr load_chart(const json& j) {
  expect_object(j, "chart");
  for (const auto& [key, value] : j.items())
    if (key != "horizontal" && key != "vertical") throw SchemaError("unknown field 'chart." + key + "'");
  auto horizontal = names(require(j, "horizontal", "chart"), "chart.horizontal");
  auto vertical = names(require(j, "vertical", "chart"), "chart.vertical");
  if (horizontal.empty() || vertical.empty()) throw SchemaError("chart needs horizontal and vertical coordinates");
  try {
    return symcalc::Chart::make(std::move(horizontal), std::move(vertical));
  } catch (const ExpressionError& e) {
    throw SchemaError(std::string("chart: ") + e.what());
  }
}

// Each entry maps a horizontal coordinate to data about h_i; every key must
// be a horizontal coordinate.
std::size_t horizontal_key(const ChartPtr& chart, const std::string& key, const std::string& path) {
  const std::size_t i = coordinate(chart, key, path);
  if (!chart->is_horizontal(i)) throw SchemaError("field '" + path + "': '" + key + "' is not horizontal");
  return i;
}

foliation::Connection load_connection(const ChartPtr& chart, const Multivector& P, const json& j) {
  const std::string path = "connection";
  expect_object(j, path);
  if (j.size() != 1) throw SchemaError("connection needs exactly one of 'frame', 'potentials', 'gamma'");
  const auto& [kind, body] = *j.items().begin();
  const std::string at = join(path, kind);
  expect_object(body, at);
  std::vector<VectorField> frame;
  for (std::size_t i = 0; i < chart->n_horizontal(); ++i) frame.push_back(VectorField::coordinate(chart, i));

  if (kind == "frame") {
    for (const auto& [key, parts] : body.items()) {
      const std::size_t i = horizontal_key(chart, key, at);
      const std::string entry = join(at, key);
      expect_object(parts, entry);
      for (const auto& [v, value] : parts.items()) {
        const std::size_t a = coordinate(chart, v, entry);
        if (!chart->is_vertical(a)) throw SchemaError("field '" + entry + "': '" + v + "' is not vertical");
        frame[i].set(a, expr(chart, value, join(entry, v)));
      }
    }
    return foliation::connection_from_frame(frame);
  }
  if (kind == "potentials") {
    for (const auto& [key, value] : body.items()) {
      const std::size_t i = horizontal_key(chart, key, at);
      frame[i] += poisson::hamiltonian_vf(P, expr(chart, value, join(at, key)));
    }
    return foliation::connection_from_frame(frame);
  }
  if (kind == "gamma") {
    geom::VecValuedForm gamma(chart, 1);
    for (const auto& [out, row] : body.items()) {
      const std::size_t a = coordinate(chart, out, at);
      gamma.set_component(a, alternating<DiffForm>(chart, row, 1, join(at, out)));
    }
    try {
      return foliation::Connection(std::move(gamma));
    } catch (const InvariantViolation& e) {
      throw InvariantViolation("field '" + at + "': " + e.what());
    }
  }
  throw SchemaError("unknown field '" + at + "'");
}

action::TorusAction load_action(const ChartPtr& chart, const json& j) {
  const std::string path = "action";
  expect_array(j, path);
  if (j.empty()) throw SchemaError("field 'action' needs at least one flow");
  std::vector<action::CircleFlow> flows;
  std::vector<std::string> angles;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string at = join(path, k);
    expect_object(j[k], at);
    for (const auto& [key, value] : j[k].items())
      if (key != "angle" && key != "images") throw SchemaError("unknown field '" + join(at, key) + "'");
    const std::string angle = expect_string(require(j[k], "angle", at), join(at, "angle"));
    ChartPtr ext;
    try {
      ext = chart->extended({angle});
    } catch (const ExpressionError& e) {
      throw SchemaError("field '" + join(at, "angle") + "': " + e.what());
    }
    std::vector<Scalar> images;
    for (std::size_t i = 0; i < chart->dimension(); ++i)
      images.push_back(Scalar::symbol(ext, chart->coordinate_name(i)));
    const std::string img = join(at, "images");
    const json& body = require(j[k], "images", at);
    expect_object(body, img);
    for (const auto& [key, value] : body.items())
      images[coordinate(chart, key, img)] = expr(ext, value, join(img, key));
    flows.push_back({angle, std::move(images)});
    angles.push_back(angle);
  }
  if (std::set<std::string>(angles.begin(), angles.end()).size() != angles.size())
    throw SchemaError("field 'action': flows need distinct angles");
  try {
    return action::TorusAction(chart, std::move(flows));
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(std::string("field 'action': ") + e.what());
  }
}

Scenario build(const json& doc) {
  expect_object(doc, "<root>");
  for (const auto& [key, value] : doc.items())
    if (!kTopLevel.count(key)) throw SchemaError("unknown field '" + key + "'");
  const json& schema = require(doc, "schema", "");
  if (!schema.is_number_integer() || schema.get<long long>() != 1) throw SchemaError("field 'schema' must be 1");

  std::string name = doc.contains("name") ? expect_string(doc["name"], "name") : "scenario";
  const ChartPtr chart = load_chart(require(doc, "chart", ""));
  Multivector P = alternating<Multivector>(chart, require(doc, "poisson", ""), 2, "poisson");
  foliation::Connection gamma = load_connection(chart, P, require(doc, "connection", ""));

  std::optional<action::TorusAction> torus;
  if (doc.contains("action")) torus = load_action(chart, doc["action"]);

  std::optional<action::PreMomentumMap> mu;
  if (doc.contains("premomentum")) {
    if (!torus) throw SchemaError("field 'premomentum' needs an 'action'");
    const json& j = doc["premomentum"];
    expect_array(j, "premomentum");
    if (j.size() != torus->rank())
      throw SchemaError("field 'premomentum' needs one 1-form per flow (" + std::to_string(torus->rank()) + ")");
    mu.emplace();
    for (std::size_t k = 0; k < j.size(); ++k)
      mu->push_back(alternating<DiffForm>(chart, j[k], 1, join("premomentum", k)));
  }

  std::optional<DiffForm> sigma, casimir;
  if (doc.contains("sigma")) sigma = horizontal_form(chart, doc["sigma"], 2, "sigma");
  if (doc.contains("casimir")) casimir = horizontal_form(chart, doc["casimir"], 2, "casimir");
  if (doc.contains("Q")) horizontal_form(chart, doc["Q"], 1, "Q");

  std::optional<std::vector<Scalar>> primitives;
  if (doc.contains("primitives")) {
    if (!mu) throw SchemaError("field 'primitives' needs a 'premomentum'");
    const json& j = doc["primitives"];
    expect_array(j, "primitives");
    if (j.size() != mu->size()) throw SchemaError("field 'primitives' needs one function per 1-form");
    primitives.emplace();
    for (std::size_t k = 0; k < j.size(); ++k) primitives->push_back(expr(chart, j[k], join("primitives", k)));
  }
  return Scenario{std::move(name),      chart,         std::move(gamma), std::move(P),
                  std::move(torus),     std::move(mu), std::move(sigma), std::move(casimir),
                  std::move(primitives)};
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": invalid JSON");
  }
  return build(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

nlohmann::ordered_json to_json(const VectorField& X, bool vertical_only) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  const auto& chart = X.chart();
  for (std::size_t i = vertical_only ? chart->n_horizontal() : 0; i < X.size(); ++i)
    if (!X[i].is_zero()) out[chart->coordinate_name(i)] = symcalc::to_string(X[i]);
  return out;
}

namespace {

template <class T>
nlohmann::ordered_json alternating_json(const T& a) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (const auto& [m, c] : a.coefficients()) {
    std::string key;
    for (std::size_t i = 0; i < a.chart()->dimension(); ++i) {
      if (!(m & (Mask{1} << i))) continue;
      if (!key.empty()) key += ",";
      key += a.chart()->coordinate_name(i);
    }
    out[key] = symcalc::to_string(c);
  }
  return out;
}

}  // namespace

nlohmann::ordered_json to_json(const DiffForm& a) { return alternating_json(a); }
nlohmann::ordered_json to_json(const Multivector& A) { return alternating_json(A); }

nlohmann::ordered_json to_json(const Scenario& s) {
  nlohmann::ordered_json out;
  out["schema"] = 1;
  out["name"] = s.name;
  out["chart"] = {{"horizontal", s.chart->horizontal_coords()}, {"vertical", s.chart->vertical_coords()}};
  nlohmann::ordered_json frame = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < s.gamma.n_horizontal(); ++i) {
    auto parts = to_json(s.gamma.frame(i), true);
    if (!parts.empty()) frame[s.chart->coordinate_name(i)] = std::move(parts);
  }
  out["connection"] = {{"frame", std::move(frame)}};
  out["poisson"] = to_json(s.P);
  if (s.action) {
    nlohmann::ordered_json flows = nlohmann::ordered_json::array();
    for (std::size_t j = 0; j < s.action->rank(); ++j) {
      const auto& flow = s.action->flow(j);
      const auto& ext = s.action->flow_chart(j);
      nlohmann::ordered_json images = nlohmann::ordered_json::object();
      for (std::size_t i = 0; i < flow.images.size(); ++i)
        if (flow.images[i] != Scalar::symbol(ext, s.chart->coordinate_name(i)))
          images[s.chart->coordinate_name(i)] = symcalc::to_string(flow.images[i]);
      flows.push_back({{"angle", flow.angle}, {"images", std::move(images)}});
    }
    out["action"] = std::move(flows);
  }
  if (s.mu) {
    nlohmann::ordered_json mu = nlohmann::ordered_json::array();
    for (const auto& m : *s.mu) mu.push_back(to_json(m));
    out["premomentum"] = std::move(mu);
  }
  if (s.sigma) out["sigma"] = to_json(*s.sigma);
  if (s.casimir) out["casimir"] = to_json(*s.casimir);
  if (s.primitives) {
    nlohmann::ordered_json K = nlohmann::ordered_json::array();
    for (const auto& k : *s.primitives) K.push_back(symcalc::to_string(k));
    out["primitives"] = std::move(K);
  }
  return out;
}

}  // namespace hbkit::cli
