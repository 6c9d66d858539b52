#include "isoflow_cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <isoflow/closed_form.hpp>
#include <isoflow/collapse.hpp>
#include <isoflow/embedding.hpp>
#include <isoflow/errors.hpp>
#include <isoflow/io.hpp>

#include "isoflow_cli/verify.hpp"

namespace isoflow::cli {

namespace {

template <typename T>
T require(const std::optional<T>& v, const char* flag, std::string_view family) {
  if (!v) throw InvalidInput(std::string("--") + flag + " is required for " + std::string(family));
  return *v;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CurvatureBlock parse_block(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidInput("block '" + text + "' is not kappa:mult");
  try {
    std::size_t used = 0;
    const double kappa = std::stod(text.substr(0, colon), &used);
    if (used != colon) throw std::invalid_argument(text);
    const std::string mult_text = text.substr(colon + 1);
    const int mult = std::stoi(mult_text, &used);
    if (used != mult_text.size()) throw std::invalid_argument(text);
    return {kappa, mult};
  } catch (const std::logic_error&) {
    throw InvalidInput("block '" + text + "' is not kappa:mult");
  }
}

// Multiplicities of a spherical family from --mults, --m, --m1/--m2 or --l/--n.
std::vector<int> sphere_mults(const SurfaceArgs& a, int g) {
  if (!a.mults.empty()) return a.mults;
  if (g == 3 || g == 6) return {require(a.m, "m", "this family")};
  if (g == 4) return {require(a.m1, "m1", "sphere-g4"), require(a.m2, "m2", "sphere-g4")};
  if (g == 2) {
    const int l = require(a.l, "l", "sphere-product");
    return {l, require(a.n, "n", "sphere-product") - l};
  }
  return {require(a.n, "n", "sphere-umbilic")};
}

IsoparametricSurface sphere_family(const SurfaceArgs& a, int g) {
  const auto mults = sphere_mults(a, g);
  if (a.s && a.kappa1) throw InvalidInput("give either --s or --kappa1, not both");
  if (a.s) return sphere_curvatures_from_g(g, *a.s, mults);
  return sphere_from_kappa1(g, require(a.kappa1, "kappa1 (or --s)", "a spherical family"), mults);
}

struct Rows {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> values;
};

void write_rows(const Rows& rows, const std::string& format, const IsoparametricSurface& surface,
                const std::string& engine, std::ostream& os) {
  if (format == "csv") {
    for (std::size_t i = 0; i < rows.columns.size(); ++i) os << (i ? "," : "") << rows.columns[i];
    os << '\n';
    for (const auto& r : rows.values) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << fmt(r[i]);
      os << '\n';
    }
    return;
  }
  nlohmann::json data = nlohmann::json::array();
  for (const auto& r : rows.values) {
    nlohmann::json row = nlohmann::json::object();
    for (std::size_t i = 0; i < r.size(); ++i) row[rows.columns[i]] = r[i];
    data.push_back(std::move(row));
  }
  os << nlohmann::json{{"surface", surface_to_json(surface)}, {"engine", engine}, {"rows", data}}.dump(2) << '\n';
}

template <typename Fn>
void with_output(const std::string& path, std::ostream& out, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(out);
    return;
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  fn(file);
  file.flush();
  if (!file) throw IoError("write to '" + path + "' failed");
}

struct EvolveConfig {
  double t_start = 0.0;
  std::optional<double> t_end;
  int samples = 101;
  std::string engine = "closed";
  std::string format = "csv";
  std::string out;
  std::optional<double> max_discrepancy;
};

// Numerical profiles covering [min(t0,0), max(t1,0)].
struct OdeCover {
  std::optional<NumericProfile> forward, backward;

  std::optional<double> xi(double t) const {
    if (t == 0.0) return 0.0;
    const auto& p = t > 0.0 ? forward : backward;
    if (!p) return std::nullopt;
    const double reach = p->t_last();
    if (std::abs(t) > std::abs(reach) * (1.0 + 1e-14)) return std::nullopt;
    return p->xi(t);
  }
};

int cmd_evolve(const IsoparametricSurface& s, const EvolveConfig& c, const OdeOptions& opts, std::ostream& out,
               std::ostream& err) {
  const double t_end = require(c.t_end, "t-end", "evolve");
  if (c.samples < 1) throw InvalidInput("--samples must be positive");
  const bool use_closed = c.engine != "ode";
  const bool use_ode = c.engine != "closed";
  const ClosedFormProfile closed = resolve_profile(s);
  OdeCover ode;
  if (use_ode) {
    const double hi = std::max(c.t_start, t_end);
    const double lo = std::min(c.t_start, t_end);
    if (hi > 0.0) ode.forward = integrate(s, hi, opts);
    if (lo < 0.0) ode.backward = integrate(s, lo, opts);
  }

  Rows rows;
  rows.columns = {"t", "xi", "H"};
  const auto blocks = s.blocks();
  for (std::size_t i = 1; i <= blocks.size(); ++i) rows.columns.push_back("kappa_hat_" + std::to_string(i));
  for (std::size_t i = 1; i <= blocks.size(); ++i) rows.columns.push_back("metric_factor_" + std::to_string(i));
  if (use_closed && use_ode) {
    rows.columns.push_back("xi_ode");
    rows.columns.push_back("discrepancy");
  }

  int clipped = 0;
  double worst = 0.0;
  for (int i = 0; i < c.samples; ++i) {
    const double t = c.samples == 1 ? c.t_start : c.t_start + (t_end - c.t_start) * i / (c.samples - 1);
    std::optional<double> xi_closed;
    if (use_closed && t >= closed.t_min() && t < closed.t_star()) xi_closed = closed.xi(t);
    const std::optional<double> xi_ode = use_ode ? ode.xi(t) : std::nullopt;
    if ((use_closed && !xi_closed) || (use_ode && !xi_ode)) {
      ++clipped;
      continue;
    }
    const double xi = use_closed ? *xi_closed : *xi_ode;
    std::vector<double> row{t, xi};
    try {
      row.push_back(mean_curvature(s, xi));
      for (const auto& b : blocks) row.push_back(parallel_curvature(s.space_form(), b.kappa, xi));
    } catch (const SingularParallel&) {
      ++clipped;
      continue;
    }
    for (const auto& b : blocks) row.push_back(parallel_metric_factor(s.space_form(), b.kappa, xi));
    if (use_closed && use_ode) {
      const double d = std::abs(*xi_closed - *xi_ode);
      worst = std::max(worst, d);
      row.push_back(*xi_ode);
      row.push_back(d);
    }
    rows.values.push_back(std::move(row));
  }
  if (clipped > 0)
    err << "warning: " << clipped << " of " << c.samples << " rows lie beyond the flow's domain (t* = "
        << fmt(closed.t_star()) << ") and were clipped\n";
  with_output(c.out, out, [&](std::ostream& os) { write_rows(rows, c.format, s, c.engine, os); });
  if (use_closed && use_ode) {
    err << "max |xi_closed - xi_ode| = " << fmt(worst) << '\n';
    if (c.max_discrepancy && !(worst <= *c.max_discrepancy)) return kCheckFailed;
  }
  return kSuccess;
}

int cmd_collapse(const IsoparametricSurface& s, const std::string& path, const OdeOptions& opts, std::ostream& out) {
  const CollapseReport closed = analyze(s, resolve_profile(s), opts.horizon);
  const CollapseReport ode = analyze(s, integrate(s, opts.horizon, opts), opts.horizon);
  nlohmann::json delta = nullptr;
  if (std::isfinite(closed.t_star) && std::isfinite(ode.t_star)) delta = std::abs(closed.t_star - ode.t_star);
  const nlohmann::json j{{"surface", surface_to_json(s)}, {"closed", closed}, {"ode", ode}, {"delta_t_star", delta}};
  with_output(path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return kSuccess;
}

int cmd_verify(const std::vector<NamedSurface>& instances, const std::vector<std::string>& checks,
               const OdeOptions& opts, std::ostream& out) {
  std::vector<CheckResult> results;
  for (const auto& inst : instances) {
    auto r = run_checks(inst, checks, opts);
    results.insert(results.end(), r.begin(), r.end());
  }
  std::size_t width = 8;
  for (const auto& r : results) width = std::max(width, r.instance.size());
  std::size_t failed = 0;
  out << std::left << std::setw(16) << "check" << std::setw(static_cast<int>(width) + 2) << "instance"
      << std::setw(6) << "status" << std::setw(12) << "value" << std::setw(10) << "tol" << "note\n";
  for (const auto& r : results) {
    if (!r.passed) ++failed;
    std::ostringstream value, tol;
    value << std::setprecision(3) << r.value;
    tol << std::setprecision(3) << r.tolerance;
    out << std::left << std::setw(16) << r.check << std::setw(static_cast<int>(width) + 2) << r.instance
        << std::setw(6) << (r.passed ? "PASS" : "FAIL") << std::setw(12) << value.str() << std::setw(10)
        << tol.str() << r.note << '\n';
  }
  out << results.size() << " checks on " << instances.size() << " instances, " << failed << " failed\n";
  return failed == 0 ? kSuccess : kCheckFailed;
}

struct ExportConfig {
  std::vector<double> times;
  std::vector<int> resolution{24};
  std::string out_dir = ".";
  bool sidecar = false;
};

int cmd_export(const IsoparametricSurface& s, const ExportConfig& c, std::ostream& out, std::ostream& err) {
  if (!has_embedding(s))
    throw UnsupportedEmbedding("the " + std::string(family_name(s.family())) +
                               " family has no explicit embedding to export");
  if (c.times.empty()) throw InvalidInput("--times needs at least one value");
  const ClosedFormProfile profile = resolve_profile(s);
  if (s.dimension() + (s.space_form().curvature() == 0 ? 1 : 2) > 4)
    err << "warning: ambient dimension above 4; most viewers cannot display this export\n";
  std::filesystem::create_directories(c.out_dir);
  int written = 0;
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    const double t = c.times[i];
    if (!(t >= profile.t_min() && t < profile.t_star())) {
      err << "warning: t = " << fmt(t) << " is outside the flow's domain (t* = " << fmt(profile.t_star())
          << "); skipped\n";
      continue;
    }
    const SampledSurface snap = sample(s, c.resolution, t, profile);
    std::ostringstream stem;
    stem << family_name(s.family()) << '_' << std::setw(3) << std::setfill('0') << i;
    const auto base = std::filesystem::path(c.out_dir) / stem.str();
    export_csv(snap, base.string() + ".csv");
    if (c.sidecar) export_metadata(snap, base.string() + ".json");
    out << base.string() << ".csv\n";
    ++written;
  }
  err << written << " snapshot(s) written\n";
  return kSuccess;
}

void add_surface_flags(CLI::App* cmd, SurfaceArgs& a) {
  cmd->add_option("--family", a.family, "Family tag, e.g. sphere-product, hyperbolic-cylinder, minimal");
  cmd->add_option("--surface", a.surface_file, "JSON surface file");
  cmd->add_option("--space-form", a.space_form, "Ambient curvature -1, 0 or 1 (with --blocks)");
  cmd->add_option("--blocks", a.blocks, "Curvature blocks kappa:mult")->delimiter(',');
  cmd->add_option("--m", a.m);
  cmd->add_option("--n", a.n);
  cmd->add_option("--l", a.l);
  cmd->add_option("--m1", a.m1);
  cmd->add_option("--m2", a.m2);
  cmd->add_option("--g", a.g, "Number of distinct curvatures of a spherical family");
  cmd->add_option("--kappa", a.kappa);
  cmd->add_option("--kappa1", a.kappa1);
  cmd->add_option("--s", a.s, "Spherical parameter, kappa_j = cot(s + (j-1) pi / g)");
  cmd->add_option("--mults", a.mults, "Multiplicities, full or short form")->delimiter(',');
}

}  // namespace

bool SurfaceArgs::empty() const {
  return family.empty() && !surface_file && !space_form && blocks.empty() && !g;
}

IsoparametricSurface build_surface(const SurfaceArgs& a) {
  if (a.surface_file) {
    if (!a.family.empty() || !a.blocks.empty()) throw InvalidInput("--surface cannot be combined with --family");
    return load_surface(*a.surface_file);
  }
  if (!a.blocks.empty()) {
    std::vector<CurvatureBlock> blocks;
    for (const auto& b : a.blocks) blocks.push_back(parse_block(b));
    const SpaceForm sf(require(a.space_form, "space-form", "--blocks"));
    if (a.family.empty()) throw InvalidInput("--blocks needs --family");
    return IsoparametricSurface::create(sf, std::move(blocks), family_from_name(a.family));
  }
  if (a.family.empty()) {
    if (a.g) return sphere_family(a, *a.g);
    throw InvalidInput("no surface given: use --family, --g, --blocks or --surface");
  }
  const Family f = family_from_name(a.family);
  const std::string_view name = a.family;
  switch (f) {
    case Family::EuclideanCylinder:
      return make_euclidean_cylinder(require(a.m, "m", name), require(a.n, "n", name), require(a.kappa, "kappa", name));
    case Family::Horosphere: return make_horosphere(require(a.n, "n", name), require(a.kappa, "kappa", name));
    case Family::HyperbolicUmbilic:
      return make_hyperbolic_umbilic(require(a.n, "n", name), require(a.kappa, "kappa", name));
    case Family::HyperbolicCylinder:
      return make_hyperbolic_cylinder(require(a.m1, "m1", name), require(a.m2, "m2", name),
                                      require(a.kappa1, "kappa1", name));
    case Family::SphereUmbilic: return make_sphere_umbilic(require(a.n, "n", name), require(a.kappa, "kappa", name));
    case Family::SphereProduct:
      if (a.s || !a.mults.empty()) return sphere_family(a, 2);
      return make_sphere_product(require(a.l, "l", name), require(a.n, "n", name), require(a.kappa1, "kappa1", name));
    case Family::SphereG3: return sphere_family(a, 3);
    case Family::SphereG4: return sphere_family(a, 4);
    case Family::SphereG6: return sphere_family(a, 6);
    case Family::Minimal: break;
  }
  throw InvalidInput("minimal surfaces are given with --space-form and --blocks, or --surface");
}

OdeOptions resolve_tolerances(std::optional<double> rel_tol, std::optional<double> abs_tol) {
  OdeOptions opts;
  if (const char* env = std::getenv("ISOFLOW_TOL"); env && *env) {
    const std::string text(env);
    const auto comma = text.find(',');
    try {
      opts.rel_tol = std::stod(text.substr(0, comma));
      if (comma != std::string::npos) opts.abs_tol = std::stod(text.substr(comma + 1));
    } catch (const std::logic_error&) {
      throw InvalidInput("ISOFLOW_TOL must be 'rel' or 'rel,abs', got '" + text + "'");
    }
  }
  if (rel_tol) opts.rel_tol = *rel_tol;
  if (abs_tol) opts.abs_tol = *abs_tol;
  opts.validate();
  return opts;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mean curvature flow of isoparametric hypersurfaces in space forms", "isoflow"};
  app.require_subcommand(1);
  std::optional<double> rel_tol, abs_tol, horizon;
  app.add_option("--rel-tol", rel_tol, "Integrator relative tolerance (overrides ISOFLOW_TOL)");
  app.add_option("--abs-tol", abs_tol, "Integrator absolute tolerance (overrides ISOFLOW_TOL)");
  app.add_option("--horizon", horizon, "Time after which a flow without collapse counts as eternal");

  SurfaceArgs surface_args;
  EvolveConfig evolve;
  auto* ev = app.add_subcommand("evolve", "Tabulate xi(t), curvatures and metric factors");
  add_surface_flags(ev, surface_args);
  ev->add_option("--t-start", evolve.t_start);
  ev->add_option("--t-end", evolve.t_end)->required();
  ev->add_option("--samples", evolve.samples);
  ev->add_option("--engine", evolve.engine)->check(CLI::IsMember({"closed", "ode", "both"}));
  ev->add_option("--format", evolve.format)->check(CLI::IsMember({"csv", "json"}));
  ev->add_option("--out", evolve.out, "Output file (default: standard output)");
  ev->add_option("--max-discrepancy", evolve.max_discrepancy, "With --engine both: exit 1 above this bound");

  std::string collapse_out;
  auto* co = app.add_subcommand("collapse", "Collapse time and limit from both engines, as JSON");
  add_surface_flags(co, surface_args);
  co->add_option("--out", collapse_out);

  std::vector<std::string> checks;
  auto* ve = app.add_subcommand("verify", "Run the invariant checks on one surface or the built-in grid");
  add_surface_flags(ve, surface_args);
  ve->add_option("--check", checks, "Subset of checks")->delimiter(',');

  ExportConfig export_cfg;
  auto* ex = app.add_subcommand("export", "Write evolved point clouds as CSV snapshots");
  add_surface_flags(ex, surface_args);
  ex->add_option("--times", export_cfg.times)->delimiter(',')->required();
  ex->add_option("--resolution", export_cfg.resolution, "Grid points per parameter")->delimiter(',');
  ex->add_option("--out-dir", export_cfg.out_dir);
  ex->add_flag("--sidecar", export_cfg.sidecar, "Also write a JSON metadata file per snapshot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidConfig;
  }

  try {
    OdeOptions opts = resolve_tolerances(rel_tol, abs_tol);
    if (horizon) {
      opts.horizon = *horizon;
      opts.validate();
    }
    if (ve->parsed()) {
      std::vector<NamedSurface> instances;
      if (surface_args.empty()) {
        instances = verification_grid();
      } else {
        IsoparametricSurface s = build_surface(surface_args);
        instances.push_back({std::string(family_name(s.family())), std::move(s)});
      }
      return cmd_verify(instances, checks, opts, out);
    }
    const IsoparametricSurface s = build_surface(surface_args);
    if (ev->parsed()) return cmd_evolve(s, evolve, opts, out, err);
    if (co->parsed()) return cmd_collapse(s, collapse_out, opts, out);
    return cmd_export(s, export_cfg, out, err);
  } catch (const UnsupportedEmbedding& e) {
    err << "error: " << e.what() << '\n';
    return kUnsupported;
  } catch (const IntegrationFailure& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const SingularParallel& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const AnalysisIncomplete& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidConfig;
  }
}

}  // namespace isoflow::cli
