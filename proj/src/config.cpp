#include "kansa/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "kansa/errors.hpp"
#include "kansa/io.hpp"
#include "kansa/problems.hpp"

namespace kansa::config {

std::string_view schema_text();  // generated from docs/config.schema.json

namespace {

const std::set<std::string> kSupportedKeywords = {
    "$schema", "title",   "description", "type",    "enum",     "properties",       "required",
    "additionalProperties", "items",    "minItems", "maxItems", "minimum", "exclusiveMinimum", "exclusiveMaximum"};

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError("config: " + (path.empty() ? std::string("<root>") : path) + ": " + message);
}

bool has_type(const Json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
  }
  throw std::logic_error("schema: unsupported type '" + type + "'");
}

void validate_node(const Json& v, const Json& schema, const std::string& path) {
  for (const auto& [key, _] : schema.items()) {
    if (!kSupportedKeywords.contains(key)) throw std::logic_error("schema: unsupported keyword '" + key + "'");
  }
  if (schema.contains("type")) {
    const std::string type = schema["type"];
    if (!has_type(v, type)) fail(path, "expected " + type + ", got " + std::string(v.type_name()));
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& option : schema["enum"]) found = found || option == v;
    if (!found) fail(path, "value " + v.dump() + " is not one of " + schema["enum"].dump());
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (schema.contains("minimum") && x < schema["minimum"].get<double>()) {
      fail(path, "must be >= " + schema["minimum"].dump() + " (got " + v.dump() + ")");
    }
    if (schema.contains("exclusiveMinimum") && !(x > schema["exclusiveMinimum"].get<double>())) {
      fail(path, "must be > " + schema["exclusiveMinimum"].dump() + " (got " + v.dump() + ")");
    }
    if (schema.contains("exclusiveMaximum") && !(x < schema["exclusiveMaximum"].get<double>())) {
      fail(path, "must be < " + schema["exclusiveMaximum"].dump() + " (got " + v.dump() + ")");
    }
  }
  if (v.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"]) {
        if (!v.contains(key.get<std::string>())) fail(child(path, key), "required field is missing");
      }
    }
    const Json props = schema.value("properties", Json::object());
    const bool closed = schema.contains("additionalProperties") && schema["additionalProperties"] == false;
    for (const auto& [key, value] : v.items()) {
      if (props.contains(key)) {
        validate_node(value, props[key], child(path, key));
      } else if (closed) {
        fail(child(path, key), "unknown key");
      }
    }
  }
  if (v.is_array()) {
    if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) {
      fail(path, "needs at least " + schema["minItems"].dump() + " items");
    }
    if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) {
      fail(path, "allows at most " + schema["maxItems"].dump() + " items");
    }
    if (schema.contains("items")) {
      for (std::size_t i = 0; i < v.size(); ++i) validate_node(v[i], schema["items"], path + "[" + std::to_string(i) + "]");
    }
  }
}

Point to_point(const Json& coords) { return Point(coords.get<std::vector<double>>()); }

std::vector<Point> to_points(const Json& list) {
  std::vector<Point> out;
  for (const auto& c : list) out.push_back(to_point(c));
  return out;
}

void require_dim(const std::vector<Point>& points, std::size_t d, const std::string& path) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].dim() != d) {
      fail(path + "[" + std::to_string(i) + "]", "expected " + std::to_string(d) + " coordinates");
    }
  }
}

DomainPtr build_domain(Json& domain) {
  const std::string type = domain["type"];
  if (type == "box") {
    if (domain.contains("lower") != domain.contains("upper")) fail("domain", "box needs both lower and upper");
    if (!domain.contains("lower")) {
      const std::size_t d = domain.value("dimension", std::size_t{2});
      domain["lower"] = std::vector<double>(d, 0.0);
      domain["upper"] = std::vector<double>(d, 1.0);
    }
    if (domain["lower"].size() != domain["upper"].size()) fail("domain.upper", "dimension differs from domain.lower");
    if (domain.contains("dimension") && domain["dimension"].get<std::size_t>() != domain["lower"].size()) {
      fail("domain.dimension", "does not match the corner coordinates");
    }
    domain["dimension"] = domain["lower"].size();
    return make_box(to_point(domain["lower"]), to_point(domain["upper"]));
  }
  if (type == "ball") {
    if (!domain.contains("center")) fail("domain.center", "required for a ball");
    if (!domain.contains("radius")) fail("domain.radius", "required for a ball");
    if (domain["center"].size() > 3) fail("domain.center", "balls are supported in 2 and 3 dimensions");
    domain["dimension"] = domain["center"].size();
    return make_ball(to_point(domain["center"]), domain["radius"].get<double>());
  }
  if (!domain.contains("vertices")) fail("domain.vertices", "required for a polygon");
  domain["dimension"] = 2;
  return make_polygon(to_points(domain["vertices"]));
}

}  // namespace

const Json& schema() {
  static const Json parsed = Json::parse(schema_text());
  return parsed;
}

void validate_schema(const Json& instance, const Json& s) { validate_node(instance, s, ""); }

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports "parse error at line L, column C: ..."
    std::string what = e.what();
    const auto pos = what.find("parse error");
    throw ConfigError("config: malformed JSON: " + (pos == std::string::npos ? what : what.substr(pos)));
  }
  validate_schema(j, schema());

  RunConfig cfg;
  if (overrides.seed) j["seed"] = *overrides.seed;
  if (overrides.output_dir) j["output_dir"] = *overrides.output_dir;
  cfg.seed = j.value("seed", std::uint64_t{0});
  cfg.output_dir = j.value("output_dir", std::string("."));
  j["seed"] = cfg.seed;
  j["output_dir"] = cfg.output_dir;

  Json& kernel = j["kernel"];
  cfg.kernel.family = parse_family(kernel["family"].get<std::string>());
  cfg.kernel.epsilon = kernel["epsilon"];
  if (kernel.contains("beta")) cfg.kernel.beta = kernel["beta"].get<double>();
  if (kernel.contains("nu")) cfg.kernel.nu = kernel["nu"].get<double>();
  if (auto err = validate(cfg.kernel)) fail("kernel", *err);

  if (!j.contains("domain")) j["domain"] = {{"type", "box"}};
  cfg.domain = build_domain(j["domain"]);
  const std::size_t d = cfg.domain->dimension();

  if (!j.contains("density")) j["density"] = {{"kind", "uniform"}};
  Json& density = j["density"];
  if (density["kind"] == "custom") {
    if (!density.contains("name")) fail("density.name", "required for a custom density");
    if (!density.contains("center") || !density.contains("width")) {
      fail("density", "gaussian_bump needs center and width");
    }
    if (density["center"].size() != d) fail("density.center", "dimension differs from the domain");
    cfg.density = Density::gaussian_bump(to_point(density["center"]), density["width"].get<double>());
    validate_density(*cfg.domain, cfg.density, cfg.seed);
  } else if (density.contains("name") || density.contains("center") || density.contains("width")) {
    fail("density", "uniform density takes no parameters");
  }

  if (!j.contains("boundary")) j["boundary"] = Json::object();
  Json& boundary = j["boundary"];
  const std::string strategy = boundary.value("strategy", std::string("equispaced"));
  boundary["strategy"] = strategy;
  boundary["seed"] = boundary.value("seed", cfg.seed);
  cfg.boundary.seed = boundary["seed"];
  if (strategy == "user_list") {
    if (!boundary.contains("points")) fail("boundary.points", "required for strategy user_list");
    cfg.boundary.strategy = BoundaryStrategy::UserList;
    cfg.boundary.points = to_points(boundary["points"]);
    require_dim(cfg.boundary.points, d, "boundary.points");
    if (boundary.contains("m") && boundary["m"].get<std::size_t>() != cfg.boundary.points.size()) {
      fail("boundary.m", "does not match the number of listed points");
    }
    boundary["m"] = cfg.boundary.points.size();
  } else {
    if (boundary.contains("points")) fail("boundary.points", "only allowed with strategy user_list");
    cfg.boundary.strategy = strategy == "random" ? BoundaryStrategy::Random : BoundaryStrategy::Equispaced;
    boundary["m"] = boundary.value("m", std::size_t{16});
  }
  cfg.boundary.m = boundary["m"];

  if (!j.contains("interior")) j["interior"] = Json::object();
  Json& interior = j["interior"];
  if (interior.contains("points")) {
    cfg.interior_points = to_points(interior["points"]);
    require_dim(cfg.interior_points, d, "interior.points");
    if (interior.contains("n") && interior["n"].get<std::size_t>() != cfg.interior_points.size()) {
      fail("interior.n", "does not match the number of listed points");
    }
    interior["n"] = cfg.interior_points.size();
  }
  interior["n"] = interior.value("n", std::size_t{32});
  cfg.n = interior["n"];

  if (!j.contains("problem")) j["problem"] = {{"name", "manufactured_sine"}};
  Json& problem = j["problem"];
  cfg.problem.name = problem["name"];
  if (cfg.problem.name == "constant") {
    if (!problem.contains("value")) fail("problem.value", "required for the constant problem");
    cfg.problem.value = problem["value"];
  } else if (problem.contains("value")) {
    fail("problem.value", "only allowed for the constant problem");
  }
  if (cfg.problem.name == "tabulated") {
    if (!problem.contains("file")) fail("problem.file", "required for the tabulated problem");
    cfg.problem.file = problem["file"];
  } else if (problem.contains("file")) {
    fail("problem.file", "only allowed for the tabulated problem");
  }

  if (!j.contains("solve")) j["solve"] = Json::object();
  j["solve"]["grid"] = j["solve"].value("grid", std::size_t{0});
  cfg.grid = j["solve"]["grid"];
  if (cfg.grid == 1) fail("solve.grid", "a grid needs at least 2 points per axis");

  if (j.contains("experiment")) {
    if (!j["experiment"].contains("params")) j["experiment"]["params"] = Json::object();
    cfg.experiment = ExperimentConfig{j["experiment"]["name"], j["experiment"]["params"]};
  }
  cfg.resolved = std::move(j);
  return cfg;
}

RunConfig load_config(const std::string& path, const Overrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), overrides);
}

PoissonProblem make_problem(const RunConfig& config) {
  const auto& name = config.problem.name;
  if (name == "zero") return zero_problem(config.domain);
  if (name == "constant") return constant_problem(config.domain, config.problem.value);
  if (name == "manufactured_sine") return manufactured_sine_problem(config.domain);
  return tabulated_problem(config.domain, io::read_tabulated(config.problem.file, config.dimension()));
}

CollocationSet make_collocation(const RunConfig& config) {
  if (config.problem.name == "tabulated") {
    auto data = io::read_tabulated(config.problem.file, config.dimension());
    return make_collocation_set(std::move(data.interior), std::move(data.boundary), config.domain.get());
  }
  auto interior = config.interior_points.empty()
                      ? sample_interior(*config.domain, config.density, config.n, config.seed)
                      : config.interior_points;
  auto boundary = sample_boundary(*config.domain, config.boundary);
  return make_collocation_set(std::move(interior), std::move(boundary), config.domain.get());
}

harness::SamplingSetup sampling(const RunConfig& config) { return {config.domain, config.density, config.boundary}; }

}  // namespace kansa::config
