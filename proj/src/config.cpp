#include "lorenzlab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "lorenzlab/error.hpp"

namespace lorenzlab {

namespace pt = boost::property_tree;

std::string_view to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::fpe: return "fpe";
    case ExperimentKind::lorenz: return "lorenz";
    case ExperimentKind::agents: return "agents";
    case ExperimentKind::analytic: return "analytic";
    case ExperimentKind::compare: return "compare";
    case ExperimentKind::scale_map: return "scale-map";
  }
  return "fpe";
}

ExperimentKind experiment_kind_from_string(std::string_view s) {
  for (auto k : {ExperimentKind::fpe, ExperimentKind::lorenz, ExperimentKind::agents,
                 ExperimentKind::analytic, ExperimentKind::compare, ExperimentKind::scale_map})
    if (s == to_string(k)) return k;
  throw ValidationError("unknown experiment kind '" + std::string(s) +
                        "' (fpe, lorenz, agents, analytic, compare, scale-map)");
}

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
  static const std::map<std::string, std::set<std::string>> s{
      {"experiment", {"kind", "seed", "kernel"}},
      {"grid", {"x_min", "x_max", "nodes", "domain"}},
      {"time", {"t_start", "t_end", "dt", "output_interval"}},
      {"coefficients", {"drift", "sigma", "mu", "diffusion", "D", "gamma"}},
      {"initial", {"kind", "mean", "std", "a", "b", "sigma_log", "x", "rho"}},
      {"lorenz",
       {"f_count", "initial", "a", "width", "mean", "std", "values", "right_boundary",
        "right_value", "curvature_floor", "max_floor_fraction"}},
      {"agents", {"agents", "transactions", "record_every", "time_scale", "replicas",
                  "lorenz_f_count"}},
      {"analytic", {"solution", "f", "times", "D", "a", "s0", "sigma", "mu", "f_count"}},
      {"compare", {"sup_tol", "f_lo", "f_hi"}},
      {"scale_map", {"times", "D", "a", "f_count", "ds", "tol", "f_lo", "f_hi"}},
      {"tolerances", {"mass", "convex", "gini", "collapse", "negative", "tail", "moment"}},
      {"output", {"dir", "format"}},
  };
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Line of `key` inside `[section]` (section "" = before any header); 0 if
// the key came from an override or is absent.
std::size_t line_of(std::string_view text, const std::string& section, const std::string& key) {
  std::istringstream in{std::string(text)};
  std::string line, current;
  for (std::size_t n = 1; std::getline(in, line); ++n) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == ';' || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      current = trim(std::string_view(t).substr(1, t.size() - 2));
      if (key.empty() && current == section) return n;
      continue;
    }
    const auto eq = t.find('=');
    if (current == section && eq != std::string::npos && trim(t.substr(0, eq)) == key) return n;
  }
  return 0;
}

class Reader {
 public:
  Reader(const pt::ptree& tree, std::string_view text, std::string_view source)
      : tree_(tree), text_(text), source_(source) {}

  [[noreturn]] void fail(const std::string& section, const std::string& key,
                         const std::string& msg) const {
    const std::size_t line = line_of(text_, section, key);
    std::string where = std::string(source_);
    if (line) where += ":" + std::to_string(line);
    const std::string name = section.empty() ? key
                             : key.empty()   ? "[" + section + "]"
                                             : "[" + section + "] " + key;
    throw ValidationError(where + ": " + name + ": " + msg);
  }

  std::optional<std::string> raw(const std::string& section, const std::string& key) const {
    const std::string path = section.empty() ? key : section + "." + key;
    if (auto v = tree_.get_optional<std::string>(pt::ptree::path_type(path, '.')))
      return trim(*v);
    return std::nullopt;
  }

  double real(const std::string& section, const std::string& key, double fallback) const {
    const auto v = raw(section, key);
    return v ? parse_real(section, key, *v) : fallback;
  }

  template <class U>
  U uint(const std::string& section, const std::string& key, U fallback) const {
    const auto v = raw(section, key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    const auto res = std::from_chars(v->data(), v->data() + v->size(), out);
    if (res.ec != std::errc{} || res.ptr != v->data() + v->size())
      fail(section, key, "expected a non-negative integer, got '" + *v + "'");
    return static_cast<U>(out);
  }

  std::string word(const std::string& section, const std::string& key,
                   const std::string& fallback) const {
    return raw(section, key).value_or(fallback);
  }

  std::vector<double> list(const std::string& section, const std::string& key,
                           std::vector<double> fallback) const {
    const auto v = raw(section, key);
    if (!v) return fallback;
    std::vector<double> out;
    std::string item;
    std::istringstream in(*v);
    while (std::getline(in, item, ',')) out.push_back(parse_real(section, key, trim(item)));
    return out;
  }

  // Converts enum-like words, attaching the line to the message.
  template <class F>
  auto convert(const std::string& section, const std::string& key, const std::string& fallback,
               F f) const {
    const std::string w = word(section, key, fallback);
    try {
      return f(w);
    } catch (const ValidationError& e) {
      fail(section, key, e.what());
    }
  }

 private:
  double parse_real(const std::string& section, const std::string& key, const std::string& s) const {
    double out = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
      fail(section, key, "expected a number, got '" + s + "'");
    return out;
  }

  const pt::ptree& tree_;
  std::string_view text_;
  std::string_view source_;
};

void check_keys(const pt::ptree& tree, const Reader& r, std::string_view text) {
  // The parser drops empty sections, so headers are checked on the text.
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    const std::string t = trim(line);
    if (t.size() > 2 && t.front() == '[' && t.back() == ']') {
      const std::string name = trim(std::string_view(t).substr(1, t.size() - 2));
      if (!schema().count(name)) r.fail(name, "", "unknown section");
    }
  }
  for (const auto& [name, node] : tree) {
    if (node.empty() && line_of(text, name, "") == 0) {
      if (name != "schema_version") r.fail("", name, "unknown top-level key");
      continue;
    }
    const auto it = schema().find(name);
    if (it == schema().end()) r.fail(name, "", "unknown section");
    for (const auto& [key, leaf] : node) {
      if (!leaf.empty() || !it->second.count(key)) r.fail(name, key, "unknown key");
    }
  }
}

InitialCondition read_initial(const Reader& r) {
  const std::string kind = r.word("initial", "kind", "gaussian");
  if (kind == "gaussian") return GaussianInit{r.real("initial", "mean", 0.0), r.real("initial", "std", 1.0)};
  if (kind == "uniform") return UniformInit{r.real("initial", "a", 0.0), r.real("initial", "b", 1.0)};
  if (kind == "lognormal")
    return LognormalInit{r.real("initial", "mean", 1.0), r.real("initial", "sigma_log", 0.5)};
  if (kind == "tabulated") return TabulatedInit{r.list("initial", "x", {}), r.list("initial", "rho", {})};
  r.fail("initial", "kind", "unknown initial condition '" + kind +
                                "' (gaussian, uniform, lognormal, tabulated)");
}

CoefficientSpec read_coeffs(const Reader& r) {
  CoefficientSpec c;
  const std::string drift = r.word("coefficients", "drift", "none");
  if (drift == "ou")
    c.drift = OUDrift{r.real("coefficients", "sigma", 1.0), r.real("coefficients", "mu", 0.0)};
  else if (drift != "none")
    r.fail("coefficients", "drift", "unknown drift '" + drift + "' (none, ou)");
  const std::string diff = r.word("coefficients", "diffusion", "constant");
  if (diff == "constant")
    c.diffusion = ConstantDiffusion{r.real("coefficients", "D", 1.0)};
  else if (diff == "yard_sale")
    c.diffusion = YardSaleDiffusion{r.real("coefficients", "gamma", 0.1)};
  else
    r.fail("coefficients", "diffusion", "unknown diffusion '" + diff + "' (constant, yard_sale)");
  return c;
}

template <class E>
E pick(const std::string& w, std::initializer_list<std::pair<const char*, E>> options,
       const char* what) {
  std::string names;
  for (const auto& [name, value] : options) {
    if (w == name) return value;
    names += names.empty() ? name : std::string(", ") + name;
  }
  throw ValidationError("unknown " + std::string(what) + " '" + w + "' (" + names + ")");
}

}  // namespace

ExperimentConfig parse_config(std::string_view text, std::string_view source,
                              const Overrides& overrides) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ValidationError(std::string(source) + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  for (const auto& [path, value] : overrides) {
    if (path.find('.') == std::string::npos && path != "schema_version")
      throw ValidationError("override '" + path + "' must have the form section.key=value");
    tree.put(pt::ptree::path_type(path, '.'), value);
  }
  const Reader r(tree, text, source);
  check_keys(tree, r, text);

  ExperimentConfig c;
  if (!r.raw("", "schema_version")) r.fail("", "schema_version", "missing (expected 1)");
  c.schema_version = r.uint<int>("", "schema_version", 0);
  if (c.schema_version != kSchemaVersion)
    r.fail("", "schema_version", "unsupported version " + std::to_string(c.schema_version));

  c.kind = r.convert("experiment", "kind", "fpe",
                     [](const std::string& w) { return experiment_kind_from_string(w); });
  c.seed = r.uint<std::uint64_t>("experiment", "seed", 1);
  c.kernel = r.convert("experiment", "kernel", "scan",
                       [](const std::string& w) { return kernel_from_string(w); });

  c.grid.x_min = r.real("grid", "x_min", c.grid.x_min);
  c.grid.x_max = r.real("grid", "x_max", c.grid.x_max);
  c.grid.nodes = r.uint<std::size_t>("grid", "nodes", c.grid.nodes);
  c.grid.domain = r.convert("grid", "domain", std::string(to_string(c.grid.domain)),
                            [](const std::string& w) { return domain_from_string(w); });

  c.time.t_start = r.real("time", "t_start", c.time.t_start);
  c.time.t_end = r.real("time", "t_end", c.time.t_end);
  c.time.dt = r.real("time", "dt", c.time.dt);
  c.time.output_interval = r.real("time", "output_interval", c.time.output_interval);

  c.coeffs = read_coeffs(r);
  c.initial = read_initial(r);

  auto& L = c.lorenz;
  L.f_count = r.uint<std::size_t>("lorenz", "f_count", L.f_count);
  L.initial = r.convert("lorenz", "initial", "from_density", [](const std::string& w) {
    return pick<CurveInitKind>(w,
                               {{"from_density", CurveInitKind::from_density},
                                {"linear", CurveInitKind::linear},
                                {"quadratic", CurveInitKind::quadratic},
                                {"gaussian", CurveInitKind::gaussian},
                                {"tabulated", CurveInitKind::tabulated}},
                               "initial curve");
  });
  L.a = r.real("lorenz", "a", L.a);
  L.width = r.real("lorenz", "width", L.width);
  L.mean = r.real("lorenz", "mean", L.mean);
  L.std = r.real("lorenz", "std", L.std);
  L.values = r.list("lorenz", "values", {});
  L.right_boundary = r.convert("lorenz", "right_boundary", "fixed", [](const std::string& w) {
    return pick<BoundaryKind>(w, {{"fixed", BoundaryKind::fixed}, {"ou_mean", BoundaryKind::ou_mean}},
                              "right boundary policy");
  });
  L.has_right_value = r.raw("lorenz", "right_value").has_value();
  L.right_value = r.real("lorenz", "right_value", 0.0);
  L.curvature_floor = r.real("lorenz", "curvature_floor", L.curvature_floor);
  L.max_floor_fraction = r.real("lorenz", "max_floor_fraction", L.max_floor_fraction);

  auto& A = c.agents;
  A.agents = r.uint<std::size_t>("agents", "agents", A.agents);
  A.transactions = r.uint<std::uint64_t>("agents", "transactions", A.transactions);
  A.record_every = r.uint<std::uint64_t>("agents", "record_every", A.record_every);
  A.time_scale = r.real("agents", "time_scale", A.time_scale);
  A.replicas = r.uint<std::size_t>("agents", "replicas", A.replicas);
  A.lorenz_f_count = r.uint<std::size_t>("agents", "lorenz_f_count", A.lorenz_f_count);

  auto& N = c.analytic;
  N.solution = r.convert("analytic", "solution", "heat", [](const std::string& w) {
    return pick<AnalyticSolution>(w, {{"heat", AnalyticSolution::heat}, {"ou", AnalyticSolution::ou}},
                                  "analytic solution");
  });
  N.f = r.list("analytic", "f", N.f);
  N.times = r.list("analytic", "times", N.times);
  N.D = r.real("analytic", "D", N.D);
  N.a = r.real("analytic", "a", N.a);
  N.s0 = r.real("analytic", "s0", N.s0);
  N.sigma = r.real("analytic", "sigma", N.sigma);
  N.mu = r.real("analytic", "mu", N.mu);
  N.f_count = r.uint<std::size_t>("analytic", "f_count", N.f_count);

  c.compare.sup_tol = r.real("compare", "sup_tol", c.compare.sup_tol);
  c.compare.f_lo = r.real("compare", "f_lo", c.compare.f_lo);
  c.compare.f_hi = r.real("compare", "f_hi", c.compare.f_hi);

  auto& S = c.scale_map;
  S.times = r.list("scale_map", "times", S.times);
  S.D = r.real("scale_map", "D", S.D);
  S.a = r.real("scale_map", "a", S.a);
  S.f_count = r.uint<std::size_t>("scale_map", "f_count", S.f_count);
  S.ds = r.real("scale_map", "ds", S.ds);
  S.tol = r.real("scale_map", "tol", S.tol);
  S.f_lo = r.real("scale_map", "f_lo", S.f_lo);
  S.f_hi = r.real("scale_map", "f_hi", S.f_hi);

  auto& T = c.tol;
  T.mass = r.real("tolerances", "mass", T.mass);
  T.convex = r.real("tolerances", "convex", T.convex);
  T.gini = r.real("tolerances", "gini", T.gini);
  T.collapse = r.real("tolerances", "collapse", T.collapse);
  T.negative = r.real("tolerances", "negative", T.negative);
  T.tail = r.real("tolerances", "tail", T.tail);
  T.moment = r.real("tolerances", "moment", T.moment);

  c.output_dir = r.word("output", "dir", "");
  c.format = r.convert("output", "format", "csv",
                       [](const std::string& w) { return io::format_from_string(w); });
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path, const Overrides& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(path.string() + ":0: cannot read config file");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path.string(), overrides);
}

FpeRunConfig ExperimentConfig::fpe_config() const {
  FpeRunConfig f;
  f.x_min = grid.x_min;
  f.x_max = grid.x_max;
  f.nodes = grid.nodes;
  f.domain = grid.domain;
  f.initial = initial;
  f.coeffs = coeffs;
  f.dt = time.dt;
  f.t_end = time.t_end;
  f.output_interval = time.output_interval;
  f.metric_f_count = lorenz.f_count;
  f.tol = tol;
  f.kernel = kernel;
  return f;
}

LorenzRunConfig ExperimentConfig::lorenz_config() const {
  LorenzRunConfig l;
  l.f_count = lorenz.f_count;
  switch (lorenz.initial) {
    case CurveInitKind::from_density:
      l.initial = FromDensityInit{initial, grid.x_min, grid.x_max, grid.nodes, grid.domain};
      break;
    case CurveInitKind::linear: l.initial = LinearCurveInit{lorenz.a, lorenz.width}; break;
    case CurveInitKind::quadratic: l.initial = QuadraticCurveInit{}; break;
    case CurveInitKind::gaussian: l.initial = GaussianCurveInit{lorenz.mean, lorenz.std}; break;
    case CurveInitKind::tabulated: l.initial = TabulatedCurveInit{lorenz.values}; break;
  }
  l.coeffs = coeffs;
  if (lorenz.right_boundary == BoundaryKind::ou_mean) {
    const auto* ou = std::get_if<OUDrift>(&coeffs.drift);
    if (!ou) throw ValidationError("[lorenz] right_boundary = ou_mean needs drift = ou");
    const double start = make_initial_curve(l.initial, l.f_count, tol).right_boundary();
    l.right_boundary = OUMeanBoundary{start, ou->mu, ou->sigma};
  } else {
    l.right_boundary = FixedBoundary{lorenz.has_right_value ? std::optional(lorenz.right_value)
                                                            : std::nullopt};
  }
  l.domain = grid.domain;
  l.dt = time.dt;
  l.t_start = time.t_start;
  l.t_end = time.t_end;
  l.output_interval = time.output_interval;
  l.curvature_floor = lorenz.curvature_floor;
  l.max_floor_fraction = lorenz.max_floor_fraction;
  l.tol = tol;
  l.kernel = kernel;
  return l;
}

AgentRunConfig ExperimentConfig::agent_config() const {
  AgentRunConfig a;
  a.agents = agents.agents;
  const auto* ys = std::get_if<YardSaleDiffusion>(&coeffs.diffusion);
  if (!ys) throw ValidationError("agents: [coefficients] diffusion must be yard_sale");
  a.gamma = ys->gamma;
  a.transactions = agents.transactions;
  a.record_every = agents.record_every;
  a.lorenz_f_count = agents.lorenz_f_count;
  a.time_scale = agents.time_scale;
  return a;
}

void ExperimentConfig::validate() const {
  switch (kind) {
    case ExperimentKind::fpe: fpe_config().validate(); break;
    case ExperimentKind::lorenz: lorenz_config().validate(); break;
    case ExperimentKind::agents:
      agent_config().validate();
      if (agents.replicas == 0) throw ValidationError("agents: replicas must be >= 1");
      if (grid.domain != Domain::positive_half_line)
        throw ValidationError("agents: the initial wealth density needs domain = positive");
      break;
    case ExperimentKind::compare:
      fpe_config().validate();
      lorenz_config().validate();
      if (!(compare.f_lo >= 0.0 && compare.f_lo < compare.f_hi && compare.f_hi <= 1.0))
        throw ValidationError("compare: need 0 <= f_lo < f_hi <= 1");
      if (!(compare.sup_tol > 0.0)) throw ValidationError("compare: sup_tol must be > 0");
      break;
    case ExperimentKind::analytic: {
      if (analytic.f_count < 3) throw ValidationError("analytic: f_count must be >= 3");
      for (double f : analytic.f)
        if (!(f >= 0.0 && f <= 1.0)) throw ValidationError("analytic: f values must lie in [0, 1]");
      for (double t : analytic.times)
        if (!(t >= 0.0)) throw ValidationError("analytic: times must be >= 0");
      if (analytic.solution == AnalyticSolution::ou)
        analytic::OUParams{analytic.a, analytic.mu, analytic.sigma, analytic.D, analytic.s0}.validate();
      else if (!(analytic.D > 0.0) || !(analytic.s0 >= 0.0))
        throw ValidationError("analytic: need D > 0 and s0 >= 0");
      break;
    }
    case ExperimentKind::scale_map:
      if (scale_map.f_count < 5) throw ValidationError("scale-map: f_count must be >= 5");
      if (!(scale_map.D > 0.0)) throw ValidationError("scale-map: D must be > 0");
      if (!(scale_map.ds > 0.0)) throw ValidationError("scale-map: ds must be > 0");
      for (double t : scale_map.times)
        if (!(t > 0.0)) throw ValidationError("scale-map: times must be > 0");
      break;
  }
}

namespace {

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += io::format_double(v[i]);
  }
  return out;
}

struct IniWriter {
  std::string text;
  void section(const char* name) { text += std::string(text.empty() ? "" : "\n") + "[" + name + "]\n"; }
  void kv(const char* key, std::string_view v) { text += std::string(key) + " = " + std::string(v) + "\n"; }
  void kv(const char* key, double v) { kv(key, io::format_double(v)); }
  void kv(const char* key, std::uint64_t v) { kv(key, std::to_string(v)); }
  void kv(const char* key, const std::vector<double>& v) { kv(key, join(v)); }
};

}  // namespace

std::string to_ini(const ExperimentConfig& c) {
  IniWriter w;
  w.text = "schema_version = " + std::to_string(c.schema_version) + "\n";
  w.section("experiment");
  w.kv("kind", to_string(c.kind));
  w.kv("seed", c.seed);
  w.kv("kernel", to_string(c.kernel));

  w.section("grid");
  w.kv("x_min", c.grid.x_min);
  w.kv("x_max", c.grid.x_max);
  w.kv("nodes", std::uint64_t{c.grid.nodes});
  w.kv("domain", to_string(c.grid.domain));

  w.section("time");
  w.kv("t_start", c.time.t_start);
  w.kv("t_end", c.time.t_end);
  w.kv("dt", c.time.dt);
  w.kv("output_interval", c.time.output_interval);

  w.section("coefficients");
  if (const auto* ou = std::get_if<OUDrift>(&c.coeffs.drift)) {
    w.kv("drift", "ou");
    w.kv("sigma", ou->sigma);
    w.kv("mu", ou->mu);
  } else {
    w.kv("drift", "none");
  }
  if (const auto* cd = std::get_if<ConstantDiffusion>(&c.coeffs.diffusion)) {
    w.kv("diffusion", "constant");
    w.kv("D", cd->D);
  } else {
    w.kv("diffusion", "yard_sale");
    w.kv("gamma", std::get<YardSaleDiffusion>(c.coeffs.diffusion).gamma);
  }

  w.section("initial");
  std::visit(
      [&](const auto& ic) {
        using T = std::decay_t<decltype(ic)>;
        if constexpr (std::is_same_v<T, GaussianInit>) {
          w.kv("kind", "gaussian");
          w.kv("mean", ic.mean);
          w.kv("std", ic.std);
        } else if constexpr (std::is_same_v<T, UniformInit>) {
          w.kv("kind", "uniform");
          w.kv("a", ic.a);
          w.kv("b", ic.b);
        } else if constexpr (std::is_same_v<T, LognormalInit>) {
          w.kv("kind", "lognormal");
          w.kv("mean", ic.mean);
          w.kv("sigma_log", ic.sigma_log);
        } else {
          w.kv("kind", "tabulated");
          w.kv("x", ic.x);
          w.kv("rho", ic.rho);
        }
      },
      c.initial);

  const auto& L = c.lorenz;
  w.section("lorenz");
  w.kv("f_count", std::uint64_t{L.f_count});
  static constexpr const char* kInit[] = {"from_density", "linear", "quadratic", "gaussian",
                                          "tabulated"};
  w.kv("initial", kInit[static_cast<int>(L.initial)]);
  w.kv("a", L.a);
  w.kv("width", L.width);
  w.kv("mean", L.mean);
  w.kv("std", L.std);
  if (!L.values.empty()) w.kv("values", L.values);
  w.kv("right_boundary", L.right_boundary == BoundaryKind::fixed ? "fixed" : "ou_mean");
  if (L.has_right_value) w.kv("right_value", L.right_value);
  w.kv("curvature_floor", L.curvature_floor);
  w.kv("max_floor_fraction", L.max_floor_fraction);

  const auto& A = c.agents;
  w.section("agents");
  w.kv("agents", std::uint64_t{A.agents});
  w.kv("transactions", A.transactions);
  w.kv("record_every", A.record_every);
  w.kv("time_scale", A.time_scale);
  w.kv("replicas", std::uint64_t{A.replicas});
  w.kv("lorenz_f_count", std::uint64_t{A.lorenz_f_count});

  const auto& N = c.analytic;
  w.section("analytic");
  w.kv("solution", N.solution == AnalyticSolution::heat ? "heat" : "ou");
  w.kv("f", N.f);
  w.kv("times", N.times);
  w.kv("D", N.D);
  w.kv("a", N.a);
  w.kv("s0", N.s0);
  w.kv("sigma", N.sigma);
  w.kv("mu", N.mu);
  w.kv("f_count", std::uint64_t{N.f_count});

  w.section("compare");
  w.kv("sup_tol", c.compare.sup_tol);
  w.kv("f_lo", c.compare.f_lo);
  w.kv("f_hi", c.compare.f_hi);

  const auto& S = c.scale_map;
  w.section("scale_map");
  w.kv("times", S.times);
  w.kv("D", S.D);
  w.kv("a", S.a);
  w.kv("f_count", std::uint64_t{S.f_count});
  w.kv("ds", S.ds);
  w.kv("tol", S.tol);
  w.kv("f_lo", S.f_lo);
  w.kv("f_hi", S.f_hi);

  w.section("tolerances");
  w.kv("mass", c.tol.mass);
  w.kv("convex", c.tol.convex);
  w.kv("gini", c.tol.gini);
  w.kv("collapse", c.tol.collapse);
  w.kv("negative", c.tol.negative);
  w.kv("tail", c.tol.tail);
  w.kv("moment", c.tol.moment);

  w.section("output");
  w.kv("format", io::to_string(c.format));
  return w.text;
}

std::filesystem::path resolve_output_dir(const ExperimentConfig& c) {
  std::filesystem::path dir =
      c.output_dir.empty() ? std::filesystem::path("lorenzlab_out") / std::string(to_string(c.kind))
                           : std::filesystem::path(c.output_dir);
  if (dir.is_relative()) {
    if (const char* root = std::getenv("LORENZLAB_OUTPUT_ROOT"); root && *root) dir = root / dir;
  }
  return dir;
}

}  // namespace lorenzlab
