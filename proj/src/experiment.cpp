#include "lorenzlab/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "lorenzlab/analytic.hpp"
#include "lorenzlab/error.hpp"
#include "lorenzlab/metrics.hpp"
#include "lorenzlab/transforms.hpp"

#ifndef LORENZLAB_VERSION
#define LORENZLAB_VERSION "0.0.0"
#endif

namespace lorenzlab {

using nlohmann::ordered_json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return io::format_double(v);
}

double curve_gini(const LorenzCurve& c, bool positive) {
  if (!positive || !(c.right_boundary() > 0.0)) return kNaN;
  return gini_from_lorenz(c.normalized());
}

}  // namespace

double band_sup(std::span<const double> v, std::size_t n, std::size_t offset, double lo, double hi) {
  double m = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    const double f = fgrid_node(k + offset, n);
    if (f >= lo - 1e-12 && f <= hi + 1e-12) m = std::max(m, std::abs(v[k]));
  }
  return m;
}

bool ComparisonReport::all_pass() const {
  for (const auto& p : pairs)
    for (bool ok : p.pass)
      if (!ok) return false;
  return true;
}

ComparisonReport compare_curves(const std::vector<std::string>& sources,
                                const std::vector<std::vector<LorenzCurve>>& curves,
                                double tolerance, double f_lo, double f_hi, bool positive) {
  if (sources.size() != curves.size() || sources.empty())
    throw ValidationError("compare: need one curve list per source");
  const std::size_t nt = curves.front().size();
  for (const auto& c : curves)
    if (c.size() != nt) throw ValidationError("compare: sources have different time counts");
  ComparisonReport r;
  r.sources = sources;
  r.tolerance = tolerance;
  r.f_lo = f_lo;
  r.f_hi = f_hi;
  for (std::size_t t = 0; t < nt; ++t) r.times.push_back(curves.front()[t].time());
  for (const auto& list : curves) {
    std::vector<double> g;
    for (const auto& c : list) g.push_back(curve_gini(c, positive));
    r.gini.push_back(std::move(g));
  }
  for (std::size_t a = 0; a < sources.size(); ++a) {
    for (std::size_t b = a + 1; b < sources.size(); ++b) {
      PairDistance p{sources[a], sources[b], {}, {}, {}};
      for (std::size_t t = 0; t < nt; ++t) {
        const auto& ca = curves[a][t];
        const auto& cb = curves[b][t];
        if (ca.size() != cb.size()) throw ValidationError("compare: curves differ in f_count");
        const std::size_t n = ca.size();
        std::vector<double> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = ca[i] - cb[i];
        double l1 = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) {
          const double f0 = ca.f(i), f1 = ca.f(i + 1);
          if (f0 >= f_lo - 1e-12 && f1 <= f_hi + 1e-12)
            l1 += 0.5 * (std::abs(d[i]) + std::abs(d[i + 1])) * (f1 - f0);
        }
        const double sup = band_sup(d, n, 0, f_lo, f_hi);
        p.sup.push_back(sup);
        p.l1.push_back(l1);
        p.pass.push_back(sup <= tolerance);
      }
      r.pairs.push_back(std::move(p));
    }
  }
  return r;
}

std::string report_json(const ComparisonReport& r) {
  ordered_json j;
  j["tolerance"] = r.tolerance;
  j["f_band"] = {r.f_lo, r.f_hi};
  ordered_json times = ordered_json::array();
  for (double t : r.times) times.push_back(number(t));
  j["times"] = times;
  ordered_json gini = ordered_json::object();
  for (std::size_t s = 0; s < r.sources.size(); ++s) {
    ordered_json g = ordered_json::array();
    for (double v : r.gini[s]) g.push_back(number(v));
    gini[r.sources[s]] = g;
  }
  j["gini"] = gini;
  ordered_json pairs = ordered_json::array();
  for (const auto& p : r.pairs) {
    ordered_json e;
    e["a"] = p.a;
    e["b"] = p.b;
    ordered_json sup = ordered_json::array(), l1 = ordered_json::array(), pass = ordered_json::array();
    for (std::size_t t = 0; t < p.sup.size(); ++t) {
      sup.push_back(number(p.sup[t]));
      l1.push_back(number(p.l1[t]));
      pass.push_back(static_cast<bool>(p.pass[t]));
    }
    e["sup"] = sup;
    e["l1"] = l1;
    e["pass"] = pass;
    pairs.push_back(e);
  }
  j["pairs"] = pairs;
  j["all_pass"] = r.all_pass();
  return j.dump(1) + '\n';
}

std::string report_csv(const ComparisonReport& r) {
  std::string out = "time,a,b,sup,l1,pass\n";
  for (const auto& p : r.pairs)
    for (std::size_t t = 0; t < r.times.size(); ++t)
      out += io::format_double(r.times[t]) + ',' + p.a + ',' + p.b + ',' +
             io::format_double(p.sup[t]) + ',' + io::format_double(p.l1[t]) + ',' +
             (p.pass[t] ? "1" : "0") + '\n';
  return out;
}

std::optional<std::vector<LorenzCurve>> analytic_oracle(const ExperimentConfig& config,
                                                        const std::vector<double>& times,
                                                        std::size_t f_count) {
  const auto* g = std::get_if<GaussianInit>(&config.initial);
  const auto* cd = std::get_if<ConstantDiffusion>(&config.coeffs.diffusion);
  if (!g || !cd || !(g->std > 0.0)) return std::nullopt;
  std::vector<LorenzCurve> out;
  for (double t : times) {
    if (const auto* ou = std::get_if<OUDrift>(&config.coeffs.drift))
      out.push_back(analytic::ou_lorenz_curve(f_count, t, {g->mean, ou->mu, ou->sigma, cd->D, g->std}));
    else
      out.push_back(analytic::heat_lorenz_curve(f_count, t, cd->D, g->mean, g->std));
  }
  return out;
}

Triangulation run_triangulation(const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.lorenz.initial = CurveInitKind::from_density;
  c.time.t_start = 0.0;
  Triangulation tri;
  tri.fpe = run_fpe(c.fpe_config());
  LorenzRunConfig lc = c.lorenz_config();
  tri.lorenz = run_lorenz(lc);
  if (tri.fpe.snapshots.size() != tri.lorenz.snapshots.size())
    throw NumericalAbort("compare: FPE and Lorenz runs recorded different snapshot counts");

  std::vector<double> times;
  for (const auto& d : tri.fpe.snapshots) {
    tri.fpe_curves.push_back(lorenz_from_density(d, c.lorenz.f_count, c.tol).with_time(d.time));
    times.push_back(d.time);
  }
  std::vector<std::string> names{"fpe", "lorenz"};
  std::vector<std::vector<LorenzCurve>> curves{tri.fpe_curves, tri.lorenz.snapshots};
  tri.analytic = analytic_oracle(c, times, c.lorenz.f_count);
  if (tri.analytic) {
    names.push_back("analytic");
    curves.push_back(*tri.analytic);
  }
  tri.report = compare_curves(names, curves, c.compare.sup_tol, c.compare.f_lo, c.compare.f_hi,
                              c.grid.domain == Domain::positive_half_line);
  return tri;
}

bool ScaleMapResult::pass() const {
  for (double r : residual_sup)
    if (!(r <= tolerance)) return false;
  return true;
}

ScaleMapResult run_scale_map(const ScaleMapSection& sm) {
  ScaleMapResult out;
  out.tolerance = sm.tol;
  for (double t : sm.times) {
    const double s = analytic::scaled_time(t);
    auto mapped = [&](double si) {
      return analytic::heat_to_quadratic_map(
                 analytic::heat_lorenz_curve(sm.f_count, analytic::heat_time(si), sm.D, sm.a))
          .curve;
    };
    const auto prev = mapped(s - 0.5 * sm.ds);
    const auto next = mapped(s + 0.5 * sm.ds);
    const auto res = analytic::quadratic_potential_residual(prev, next, sm.ds, sm.D);
    out.times.push_back(t);
    out.s.push_back(s);
    out.residual_sup.push_back(band_sup(res, sm.f_count, 1, sm.f_lo, sm.f_hi));
    out.scaled.push_back(mapped(s));
  }
  return out;
}

namespace {

struct Writer {
  std::filesystem::path dir;
  std::vector<std::string> files;

  void text(const std::string& name, std::string_view body) {
    io::write_text(dir / name, body);
    files.push_back(name);
  }
  void entries(const std::string& sub, const std::vector<io::IndexEntry>& e) {
    for (const auto& x : e) files.push_back(sub.empty() ? x.file : sub + "/" + x.file);
    files.push_back(sub.empty() ? "index.json" : sub + "/index.json");
  }
};

ordered_json tolerances_json(const Tolerances& t) {
  return {{"mass", t.mass},         {"convex", t.convex}, {"gini", t.gini},
          {"collapse", t.collapse}, {"negative", t.negative}, {"tail", t.tail},
          {"moment", t.moment}};
}

void write_manifest(Writer& w, const ExperimentConfig& c, ordered_json results) {
  ordered_json m;
  m["tool"] = "lorenzlab";
  m["version"] = LORENZLAB_VERSION;
  m["schema_version"] = c.schema_version;
  m["kind"] = std::string(to_string(c.kind));
  m["seed"] = c.seed;
  m["kernel"] = std::string(to_string(c.kernel));
  m["tolerances"] = tolerances_json(c.tol);
  m["results"] = std::move(results);
  std::vector<std::string> files = w.files;
  m["files"] = files;
  m["config"] = to_ini(c);
  io::write_text(w.dir / "manifest.json", m.dump(1) + '\n');
}

std::string fmt(double v) { return io::format_double(v); }

}  // namespace

ExperimentOutcome run_experiment(const ExperimentConfig& c, const std::filesystem::path& dir) {
  c.validate();
  Writer w{dir, {}};
  ordered_json results = ordered_json::object();
  std::string summary;

  switch (c.kind) {
    case ExperimentKind::fpe: {
      const FpeRun run = run_fpe(c.fpe_config());
      w.entries("", io::emit_plot_data(std::span<const DensityField>(run.snapshots), run.metrics,
                                       dir, c.format));
      results["steps"] = run.steps;
      results["snapshots"] = run.snapshots.size();
      summary = "fpe: " + std::to_string(run.steps) + " steps, " +
                std::to_string(run.snapshots.size()) + " snapshots, final t = " +
                fmt(run.snapshots.back().time);
      break;
    }
    case ExperimentKind::lorenz: {
      const LorenzRun run = run_lorenz(c.lorenz_config());
      w.entries("", io::emit_plot_data(std::span<const LorenzCurve>(run.snapshots), run.metrics,
                                       dir, c.format));
      results["steps"] = run.steps;
      results["snapshots"] = run.snapshots.size();
      summary = "lorenz: " + std::to_string(run.steps) + " steps, " +
                std::to_string(run.snapshots.size()) + " snapshots, final t = " +
                fmt(run.snapshots.back().time());
      break;
    }
    case ExperimentKind::agents: {
      const AgentRunConfig ac = c.agent_config();
      const auto grid = SpatialGrid::uniform(c.grid.x_min, c.grid.x_max, c.grid.nodes, c.grid.domain);
      const auto wealth = quantile_wealths(make_initial_density(c.initial, grid), ac.agents);
      const AgentRun run = run_agents(wealth, ac, c.seed, 0, true);
      std::vector<io::IndexEntry> idx;
      for (std::size_t k = 0; k < run.snapshots.size(); ++k) {
        const std::string stem = io::snapshot_stem("wealth", k, run.snapshots.size());
        io::write_text(dir / (stem + ".csv"), io::wealth_csv(run.snapshots[k]));
        idx.push_back({stem + ".csv", "wealth", run.metrics.times[k]});
      }
      for (std::size_t k = 0; k < run.curves.size(); ++k) {
        const std::string stem = io::snapshot_stem("curve", k, run.curves.size());
        io::write_text(dir / (stem + ".csv"), io::curve_csv(run.curves[k]));
        idx.push_back({stem + ".csv", "curve", run.curves[k].time()});
      }
      io::write_text(dir / "metrics.csv", io::metrics_csv(run.metrics));
      idx.push_back({"metrics.csv", "metrics", run.metrics.times.back()});
      if (c.agents.replicas > 1) {
        const auto ens = run_ensemble(wealth, ac, c.seed, c.agents.replicas);
        const std::vector<std::string> header{"time", "mean_gini", "stderr_gini", "max_total_drift"};
        const std::vector<std::vector<double>> cols{ens.times, ens.mean_gini, ens.stderr_gini,
                                                    ens.max_total_drift};
        io::write_text(dir / "ensemble.csv", io::csv_table(header, cols));
        idx.push_back({"ensemble.csv", "ensemble", ens.times.back()});
        results["ensemble_final_gini"] = number(ens.mean_gini.back());
      }
      io::write_index(dir, idx);
      w.entries("", idx);
      ordered_json streams = ordered_json::array();
      for (std::size_t r = 0; r < c.agents.replicas; ++r) streams.push_back({c.seed, r});
      results["replica_seeds"] = streams;
      results["time_scale"] = ac.time_scale;
      results["total_initial"] = run.total_initial;
      results["total_final"] = run.total_final;
      results["final_gini"] = number(run.metrics.gini.back());
      summary = "agents: N = " + std::to_string(ac.agents) + ", " + std::to_string(ac.transactions) +
                " transactions, final Gini = " + fmt(run.metrics.gini.back());
      break;
    }
    case ExperimentKind::analytic: {
      const auto& a = c.analytic;
      const analytic::OUParams ou{a.a, a.mu, a.sigma, a.D, a.s0};
      auto value = [&](double f, double t) {
        return a.solution == AnalyticSolution::heat ? analytic::heat_lorenz(f, t, a.D, a.a, a.s0)
                                                    : analytic::ou_lorenz(f, t, ou);
      };
      std::vector<LorenzCurve> curves;
      std::vector<double> tcol, fcol, lcol;
      for (double t : a.times) {
        curves.push_back(a.solution == AnalyticSolution::heat
                             ? analytic::heat_lorenz_curve(a.f_count, t, a.D, a.a, a.s0)
                             : analytic::ou_lorenz_curve(a.f_count, t, ou));
        for (double f : a.f) {
          tcol.push_back(t);
          fcol.push_back(f);
          lcol.push_back(value(f, t));
        }
      }
      MetricSeries metrics;
      for (const auto& cv : curves)
        metrics.push(curve_metrics(cv, c.grid.domain, c.tol));
      w.entries("", io::emit_plot_data(std::span<const LorenzCurve>(curves), metrics, dir, c.format));
      const std::vector<std::string> header{"t", "f", "L"};
      const std::vector<std::vector<double>> cols{tcol, fcol, lcol};
      w.text("values.csv", io::csv_table(header, cols));
      ordered_json vals = ordered_json::array();
      for (std::size_t k = 0; k < lcol.size(); ++k)
        vals.push_back({{"t", tcol[k]}, {"f", fcol[k]}, {"L", number(lcol[k])}});
      results["values"] = vals;
      for (std::size_t k = 0; k < lcol.size(); ++k)
        summary += (k ? "\n" : "") + std::string("L(f = ") + fmt(fcol[k]) + ", t = " + fmt(tcol[k]) +
                   ") = " + fmt(lcol[k]);
      break;
    }
    case ExperimentKind::compare: {
      const Triangulation tri = run_triangulation(c);
      w.entries("fpe", io::emit_plot_data(std::span<const DensityField>(tri.fpe.snapshots),
                                          tri.fpe.metrics, dir / "fpe", c.format));
      w.entries("lorenz", io::emit_plot_data(std::span<const LorenzCurve>(tri.lorenz.snapshots),
                                             tri.lorenz.metrics, dir / "lorenz", c.format));
      w.text("report.json", report_json(tri.report));
      w.text("report.csv", report_csv(tri.report));
      results["all_pass"] = tri.report.all_pass();
      double worst = 0.0;
      for (const auto& p : tri.report.pairs)
        for (double s : p.sup) worst = std::max(worst, s);
      results["max_sup"] = worst;
      summary = std::string("compare: ") + (tri.report.all_pass() ? "PASS" : "FAIL") +
                ", largest sup distance " + fmt(worst) + " (tolerance " + fmt(c.compare.sup_tol) + ")";
      break;
    }
    case ExperimentKind::scale_map: {
      const ScaleMapResult r = run_scale_map(c.scale_map);
      MetricSeries metrics;
      for (const auto& cv : r.scaled) metrics.push(curve_metrics(cv, Domain::real_line, c.tol));
      w.entries("", io::emit_plot_data(std::span<const LorenzCurve>(r.scaled), metrics, dir, c.format));
      const std::vector<std::string> header{"t", "s", "residual_sup"};
      const std::vector<std::vector<double>> cols{r.times, r.s, r.residual_sup};
      w.text("residual.csv", io::csv_table(header, cols));
      results["pass"] = r.pass();
      double worst = 0.0;
      for (double v : r.residual_sup) worst = std::max(worst, v);
      results["max_residual"] = worst;
      summary = std::string("scale-map: ") + (r.pass() ? "PASS" : "FAIL") + ", largest residual " +
                fmt(worst) + " (tolerance " + fmt(r.tolerance) + ")";
      break;
    }
  }
  write_manifest(w, c, std::move(results));
  return {w.files, summary};
}

}  // namespace lorenzlab
