#include "lcert/cli/scenario.hpp"

#include "lcert/geom/io.hpp"
#include "lcert/geom/polytope.hpp"
#include "lcert/util/error.hpp"

#include <cstdio>
#include <fstream>

namespace lcert::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, (path.empty() ? std::string("scenario") : path) + ": " + msg);
}

// Field access with the dotted path carried along for error messages.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

  Node at(const char* key) const {
    if (!j_.is_object()) bad(path_, "expected an object");
    if (!j_.contains(key)) bad(child(key), "missing");
    return Node(j_.at(key), child(key));
  }

  double num() const {
    if (!j_.is_number()) bad(path_, "expected a number");
    return j_.get<double>();
  }

  int integer() const {
    if (!j_.is_number_integer()) bad(path_, "expected an integer");
    return j_.get<int>();
  }

  std::string str() const {
    if (!j_.is_string()) bad(path_, "expected a string");
    return j_.get<std::string>();
  }

  bool boolean() const {
    if (!j_.is_boolean()) bad(path_, "expected a boolean");
    return j_.get<bool>();
  }

  geom::Vector vec() const {
    try {
      return geom::vector_from_json(j_);
    } catch (const Error& e) {
      bad(path_, e.what());
    }
  }

  geom::Matrix mat() const {
    try {
      return geom::matrix_from_json(j_);
    } catch (const Error& e) {
      bad(path_, e.what());
    }
  }

  std::size_t size() const {
    if (!j_.is_array()) bad(path_, "expected an array");
    return j_.size();
  }

  Node operator[](std::size_t i) const { return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  const std::string& path() const { return path_; }
  const json& raw() const { return j_; }

 private:
  std::string child(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
};

void require(bool ok, const Node& n, const std::string& msg) {
  if (!ok) bad(n.path(), msg);
}

geom::Box parse_box(const Node& n) {
  const auto lo = n.at("lower").vec();
  const auto hi = n.at("upper").vec();
  require(lo.size() == hi.size(), n, "lower and upper differ in dimension");
  require(((hi - lo).array() > 0.0).all(), n, "upper must exceed lower in every coordinate");
  return geom::Box(lo, hi);
}

// {"box": {...}} | {"ball": {"radius", "facets", "circumscribed"}} | {"polytope": {"A", "b"}}
geom::HPolytope parse_set(const Node& n) {
  if (n.has("box")) return parse_box(n.at("box")).to_hpolytope();
  if (n.has("ball")) {
    const Node b = n.at("ball");
    const double r = b.at("radius").num();
    const int m = b.at("facets").integer();
    require(r > 0.0, b.at("radius"), "must be positive");
    require(m >= 3, b.at("facets"), "needs at least 3 facets");
    const bool circ = b.has("circumscribed") ? b.at("circumscribed").boolean() : false;
    return geom::regular_polygon(r, m, circ);
  }
  if (n.has("polytope")) {
    try {
      return geom::hpolytope_from_json(n.at("polytope").raw());
    } catch (const Error& e) {
      bad(n.path() + ".polytope", e.what());
    }
  }
  bad(n.path(), "expected one of box, ball, polytope");
}

LinearSpec parse_linear(const Node& root) {
  LinearSpec s;
  const Node sys = root.at("system");
  const Node modes = sys.at("modes");
  for (std::size_t i = 0; i < modes.size(); ++i) s.modes.push_back(modes[i].mat());
  require(s.modes.size() >= 2, modes, "at least two modes are required");
  s.X = parse_box(sys.at("X"));
  s.W = parse_set(sys.at("W"));
  for (std::size_t i = 0; i < s.modes.size(); ++i)
    require(s.modes[i].rows() == s.X.dim() && s.modes[i].cols() == s.X.dim(), modes[i], "must be square of the state dimension");
  require(s.W.dim() == s.X.dim(), sys.at("W"), "dimension differs from X");
  try {
    sysmodel::LinearSwitchedSystem check(s.modes, s.X, s.W);
  } catch (const Error& e) {
    bad(sys.path(), e.what());
  }

  const Node om = root.at("omega0");
  const auto raw = parse_set(om);
  require(raw.dim() == s.X.dim(), om, "dimension differs from X");
  s.omega0 = geom::intersect(raw, s.X);
  require(!geom::has_no_interior(s.omega0, 1e-9), om, "has empty interior inside X");

  const Node alg = root.at("algorithm");
  s.k_stop = alg.at("k_stop").integer();
  require(s.k_stop >= 1, alg.at("k_stop"), "must be at least 1");
  s.eps = alg.at("eps").num();
  require(s.eps >= 0.0, alg.at("eps"), "must be nonnegative");
  if (alg.has("law_tol")) {
    s.law_tol = alg.at("law_tol").num();
    require(s.law_tol >= 0.0, alg.at("law_tol"), "must be nonnegative");
  }
  if (alg.has("law_grid")) {
    s.law_grid = alg.at("law_grid").integer();
    require(s.law_grid >= 2, alg.at("law_grid"), "must be at least 2");
  }
  return s;
}

AMRSpec parse_amr(const Node& root) {
  AMRSpec s;
  const Node sys = root.at("system");
  const Node p = sys.at("params");
  s.params.alpha = p.at("alpha").num();
  s.params.N = p.at("N").num();
  s.params.beta = p.at("beta").num();
  s.params.K = p.at("K").num();
  s.params.D_M = p.at("D_M").num();
  s.params.mu = p.at("mu").num();
  try {
    s.params.validate();
  } catch (const Error& e) {
    bad(p.path(), e.what());
  }
  s.delta = sys.at("delta").num();
  require(s.delta > 0.0, sys.at("delta"), "must be positive");
  s.wb = sys.at("wb").num();
  s.ws = sys.at("ws").num();
  require(s.wb >= 0.0, sys.at("wb"), "must be nonnegative");
  require(s.ws >= 0.0, sys.at("ws"), "must be nonnegative");

  const Node alg = root.at("algorithm");
  const Node grid = alg.at("grid");
  s.grid.b_max = grid.at("b_max").num();
  s.grid.per_axis = grid.at("per_axis").integer();
  require(s.grid.b_max > 0.0, grid.at("b_max"), "must be positive");
  require(s.grid.b_max <= s.params.N, grid.at("b_max"), "must not exceed N");
  require(s.grid.per_axis >= 2, grid.at("per_axis"), "must be at least 2");
  s.eps = alg.at("eps").num();
  require(s.eps >= 0.0, alg.at("eps"), "must be nonnegative");
  if (alg.has("k_max")) {
    s.k_max = alg.at("k_max").integer();
    require(s.k_max >= 0, alg.at("k_max"), "must be nonnegative");
  }

  const Node om = root.at("omega0");
  s.b0 = om.at("b0").num();
  require(s.b0 >= 0.0, om.at("b0"), "must be nonnegative");
  require(s.b0 < s.grid.b_max, om.at("b0"), "must be below algorithm.grid.b_max");
  return s;
}

SimulationSpec parse_simulation(const Node& n, const LinearSpec& lin) {
  SimulationSpec s;
  s.x0 = n.at("x0").vec();
  require(s.x0.size() == lin.X.dim(), n.at("x0"), "dimension differs from X");
  require(lin.X.contains(s.x0, 0.0), n.at("x0"), "must lie in X");
  s.steps = n.at("steps").integer();
  require(s.steps >= 0, n.at("steps"), "must be nonnegative");
  s.n_runs = n.at("n_runs").integer();
  require(s.n_runs >= 1, n.at("n_runs"), "must be at least 1");
  const Node seed = n.at("seed");
  require(seed.raw().is_number_unsigned(), seed, "expected a nonnegative integer");
  s.seed = seed.raw().get<std::uint64_t>();
  return s;
}

}  // namespace

Scenario parse_scenario(const json& j) {
  const Node root(j, "");
  require(j.is_object(), root, "scenario must be a JSON object");
  Scenario sc;
  sc.source = j;
  sc.name = root.at("name").str();
  require(!sc.name.empty(), root.at("name"), "must not be empty");
  sc.kind = root.at("system").at("type").str();
  if (sc.kind == "linear") {
    sc.linear = parse_linear(root);
    if (root.has("simulation")) sc.simulation = parse_simulation(root.at("simulation"), *sc.linear);
    require(sc.linear->X.dim() == 2 || !root.has("simulation"), root, "simulation and plotting are planar");
  } else if (sc.kind == "amr") {
    sc.amr = parse_amr(root);
    if (root.has("simulation")) bad("simulation", "not used by the amr pipeline");
  } else {
    bad("system.type", "expected linear or amr");
  }
  sc.output_dir = root.has("output_dir") ? std::filesystem::path(root.at("output_dir").str())
                                         : std::filesystem::path("runs") / sc.name;
  return sc;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigError, path.string() + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigError, path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

std::string config_hash(const json& j) {
  std::uint64_t h = 14695981039346656037ULL;
  for (const unsigned char c : j.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace lcert::cli
