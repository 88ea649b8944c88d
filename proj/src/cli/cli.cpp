#include "dsc/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "dsc/delta_zoo.hpp"
#include "dsc/discretization.hpp"
#include "dsc/error.hpp"
#include "dsc/kernel.hpp"
#include "dsc/pde.hpp"
#include "dsc/table.hpp"

namespace dsc::cli {

namespace {

struct Common {
  std::string format = "csv";
  std::string output;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub->add_option("--output", c.output, "Write the table to this file instead of stdout");
  // Consumed by expand_config before parsing; registered for --help.
  sub->add_option("--config", "Read key = value options from a file");
}

struct KernelOpts {
  std::string family = "shannon";
  double delta = 1.0;
  std::string sigma;
  double sigma_over_delta = 3.2;
  int order = 0;
  int half_bandwidth = 4;
  int family_order = 0;
};

void add_kernel_options(CLI::App* sub, KernelOpts& k) {
  sub->add_option("--family", k.family, "Kernel family")->capture_default_str();
  sub->add_option("--delta", k.delta, "Grid spacing")->capture_default_str();
  sub->add_option("--sigma", k.sigma, "Gaussian width (or inf); overrides --sigma-over-delta");
  sub->add_option("--sigma-over-delta", k.sigma_over_delta, "Ratio r = sigma/delta")
      ->capture_default_str();
  sub->add_option("--order", k.order, "Derivative order q (0..4)")->capture_default_str();
  sub->add_option("--half-bandwidth", k.half_bandwidth, "Half bandwidth M")->capture_default_str();
  sub->add_option("--family-order", k.family_order,
                  "Dirichlet/Lagrange order L (0 selects max(M, 50))")
      ->capture_default_str();
}

double parse_sigma(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "none") return kNoRegularization;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || used == 0) throw ParameterError("invalid --sigma '" + text + "'");
  return v;
}

KernelParams make_kernel(const KernelOpts& k) {
  KernelParams p = KernelParams::from_ratio(parse_kernel_family(k.family), k.delta,
                                            k.sigma_over_delta, k.half_bandwidth,
                                            k.family_order);
  if (!k.sigma.empty()) p.sigma = parse_sigma(k.sigma);
  p.validate();
  return p;
}

BoundarySpec make_boundary(const std::string& kind, double k1) {
  const BoundaryKind b = parse_boundary_kind(kind);
  switch (b) {
    case BoundaryKind::Periodic: return BoundarySpec::periodic();
    case BoundaryKind::Clamped: return BoundarySpec::both(EdgeCondition::clamped());
    case BoundaryKind::SimplySupported:
      return BoundarySpec::both(EdgeCondition::simply_supported());
    case BoundaryKind::TransverselySupported:
      return BoundarySpec::both(EdgeCondition::transversely_supported(k1));
    case BoundaryKind::General: break;
  }
  throw UnsupportedError("general boundaries are not available from the command line");
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size() || item.empty())
      throw ParameterError(std::string("invalid number in ") + what + ": '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw ParameterError(std::string(what) + " is empty");
  return out;
}

// ---- kernel ---------------------------------------------------------------

struct KernelCmd {
  std::string action = "dump";
  KernelOpts k;
  double from = -5.0;
  double to = 5.0;
  int points = 101;
  int nodes = 8;
  std::string boundary = "periodic";
  double k1 = 0.0;
};

OutputTable run_kernel(const KernelCmd& c) {
  const KernelParams p = make_kernel(c.k);
  if (c.action == "dump") {
    const WeightTable t = build_weights(p, c.k.order);
    OutputTable table({"j", "offset", "weight"});
    for (int j = -t.half_bandwidth; j <= t.half_bandwidth; ++j)
      table.add_row({static_cast<double>(j), j * p.delta, t[j]});
    return table;
  }
  if (c.action == "eval") {
    if (c.points < 2) throw ParameterError("--points must be at least 2");
    OutputTable table({"offset", "value"});
    for (int i = 0; i < c.points; ++i) {
      const double x = c.from + (c.to - c.from) * i / (c.points - 1);
      table.add_row({x, eval_derivative(p, c.k.order, x)});
    }
    return table;
  }
  const DiffMatrix m =
      build_diff_matrix(c.nodes, build_weights(p, c.k.order), make_boundary(c.boundary, c.k1));
  OutputTable table({"row", "col", "offset", "coeff"});
  for (int r = 0; r < m.size(); ++r)
    for (auto [col, v] : m.row(r))
      table.add_row({static_cast<double>(r), static_cast<double>(col),
                     static_cast<double>(r - col), v});
  return table;
}

// ---- zoo ------------------------------------------------------------------

struct ZooCmd {
  std::string kind = "gauss";
  std::string schedule = "0.5,0.1,0.02";
  std::string test_fn = "cos";
  int lorentz_order = 1;
  double landau_support = 1.0;
  int poussin_p = 0;
  double lo = -10.0;
  double hi = 10.0;
  double step = 0.0;
};

OutputTable run_zoo(const ZooCmd& c) {
  zoo::DeltaSequence seq;
  seq.kind = zoo::parse_delta_kind(c.kind);
  if (seq.kind == zoo::DeltaKind::DilatedDensity) seq = zoo::DeltaSequence::gauss_density();
  seq.lorentz_order = c.lorentz_order;
  seq.landau_support = c.landau_support;
  seq.poussin_p = c.poussin_p;
  std::function<double(double)> phi;
  if (c.test_fn == "cos") phi = [](double x) { return std::cos(x); };
  else if (c.test_fn == "one") phi = [](double) { return 1.0; };
  else if (c.test_fn == "gauss") phi = [](double x) { return std::exp(-x * x); };
  else throw ParameterError("unknown test function '" + c.test_fn + "'");
  const zoo::Quadrature quad{c.lo, c.hi, c.step};
  const auto schedule = parse_list(c.schedule, "--schedule");
  const auto values = zoo::convergence_probe(seq, schedule, phi, quad);
  OutputTable table({"param", "integral", "abs_error", "min_value", "mass"});
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto pm = zoo::positivity_and_mass(seq, schedule[i], quad);
    table.add_row({schedule[i], values[i], std::abs(values[i] - phi(0.0)), pm.min_value, pm.mass});
  }
  return table;
}

// ---- waveguide ------------------------------------------------------------

struct WaveguideCmd {
  int n = 24;
  int m = 0;
  double sigma_over_delta = 3.2;
  int modes = 20;
  std::string shape = "square";
  double omega = std::numeric_limits<double>::quiet_NaN();
  double eps_nu = 1.0;
  int field = 0;
};

OutputTable run_waveguide(const WaveguideCmd& c) {
  const pde::GuideShape shape = pde::parse_guide_shape(c.shape);
  pde::WaveguideProblem p =
      shape == pde::GuideShape::Square
          ? pde::WaveguideProblem::square(c.n, c.m > 0 ? c.m : c.n, c.sigma_over_delta, c.modes)
          : pde::WaveguideProblem::shaped(shape, c.n, c.sigma_over_delta, c.m, c.modes);
  if (!std::isnan(c.omega)) p.omega = c.omega;
  p.eps_nu = c.eps_nu;
  if (c.field < 0 || c.field > c.modes) throw ParameterError("--field must lie in 0..modes");
  p.keep_modes = c.field;
  const pde::EigenReport r = pde::solve_waveguide(p);

  if (c.field > 0) {
    const FieldSamples& f = r.modes.back();
    OutputTable table({"x", "y", "amplitude", "interior"});
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const auto ijk = f.grid.unravel(i);
      table.add_row({f.grid.axis(0).coord(ijk[0]), f.grid.axis(1).coord(ijk[1]), f.values[i],
                     p.grid.interior(i) && ijk[0] > 0 && ijk[1] > 0 &&
                             ijk[0] < f.grid.count(0) - 1 && ijk[1] < f.grid.count(1) - 1
                         ? 1.0
                         : 0.0});
    }
    return table;
  }
  OutputTable table({"mode", "eigenvalue[1/m^2]", "analytic[1/m^2]", "abs_error[1/m^2]",
                     "cutoff_omega", "alpha[1/m]"});
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = 0; k < r.eigenvalues.size(); ++k) {
    const bool exact = k < r.analytic.size();
    table.add_row({static_cast<double>(k + 1), r.eigenvalues[k], exact ? r.analytic[k] : nan,
                   exact ? r.abs_error[k] : nan, r.cutoff[k], r.alpha[k]});
  }
  return table;
}

// ---- poisson --------------------------------------------------------------

struct PoissonCmd {
  int nodes = 32;
  bool laplace_only = false;
  double sigma_over_delta = 3.2;
  int m = 0;
  double v_top = 10.0;
  double v_bottom = 0.0;
  double v_left = 0.0;
  double v_right = 0.0;
  std::vector<std::string> patches;
  std::vector<std::string> probes;
};

OutputTable run_poisson(const PoissonCmd& c) {
  pde::ElectrostaticsProblem p = c.laplace_only ? pde::ElectrostaticsProblem::laplace_box()
                                                : pde::ElectrostaticsProblem::charged_box();
  p.nodes = c.nodes;
  p.sigma_over_delta = c.sigma_over_delta;
  p.half_bandwidth = c.m;
  p.v_top = c.v_top;
  p.v_bottom = c.v_bottom;
  p.v_left = c.v_left;
  p.v_right = c.v_right;
  if (!c.patches.empty()) {
    if (c.laplace_only) throw ParameterError("--patch conflicts with --laplace-only");
    p.patches.clear();
    for (const auto& s : c.patches) {
      const auto v = parse_list(s, "--patch");
      if (v.size() != 6) throw ParameterError("--patch expects x0,x1,y0,y1,rho,eps_r");
      p.patches.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
    }
  }
  if (!c.probes.empty()) {
    p.probes.clear();
    for (const auto& s : c.probes) {
      const auto v = parse_list(s, "--probe");
      if (v.size() != 2) throw ParameterError("--probe expects x,y");
      p.probes.push_back({v[0], v[1]});
    }
  }
  const pde::FieldReport r = pde::solve_electrostatics(p);
  OutputTable table({"x[m]", "y[m]", "potential[V]", "is_probe"});
  const Grid& g = r.field.grid;
  for (std::size_t i = 0; i < r.field.values.size(); ++i) {
    const auto ijk = g.unravel(i);
    table.add_row({g.axis(0).coord(ijk[0]), g.axis(1).coord(ijk[1]), r.field.values[i], 0.0});
  }
  for (const auto& q : r.probes) table.add_row({q.x, q.y, q.value, 1.0});
  return table;
}

// ---- wave -----------------------------------------------------------------

struct WaveCmd {
  int dims = 3;
  int n = 24;
  int m = 0;
  double sigma_over_delta = 3.2;
  double t_end = 10.0;
  double report_every = 1.0;
  double dt = 0.0;
  double eps_nu = 1.0;
  bool energy = false;
};

OutputTable run_wave(const WaveCmd& c) {
  pde::WavePropagationProblem p = pde::WavePropagationProblem::cube(
      c.dims, c.n, c.m > 0 ? c.m : c.n, c.sigma_over_delta, c.t_end, c.report_every);
  p.dt = c.dt;
  p.eps_nu = c.eps_nu;
  p.track_energy = c.energy;
  const pde::ErrorTrace tr = pde::propagate_wave(p);
  std::vector<std::string> cols{"t", "linf_error"};
  if (c.energy) cols.emplace_back("energy");
  OutputTable table(cols);
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    std::vector<OutputTable::Cell> row{tr.times[i], tr.linf_error[i]};
    if (c.energy) row.emplace_back(tr.energy[i]);
    table.add_row(std::move(row));
  }
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Replaces every --config FILE with the file's `key = value` lines turned
/// into --key=value arguments placed right after the subcommand, so explicit
/// flags (parsed later, last one wins) take precedence.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::vector<std::string> from_files;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw CLI::ArgumentMismatch("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw CLI::FileError("cannot read config file '" + path + "'");
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw CLI::ConversionError(path + ":" + std::to_string(number) + ": expected key = value");
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty() || key == "config")
        throw CLI::ConversionError(path + ":" + std::to_string(number) + ": invalid key");
      from_files.push_back("--" + key + "=" + value);
    }
  }
  if (rest.empty()) return from_files;
  // The subcommand name is the first argument.
  std::vector<std::string> out{rest.front()};
  out.insert(out.end(), from_files.begin(), from_files.end());
  out.insert(out.end(), rest.begin() + 1, rest.end());
  return out;
}

void emit(const OutputTable& table, const Common& c, std::ostream& out) {
  const TableFormat f = parse_table_format(c.format);
  if (c.output.empty()) {
    table.write(out, f);
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw ArgumentError("cannot open '" + c.output + "' for writing");
  table.write(file, f);
  if (!file) throw ArgumentError("failed writing '" + c.output + "'");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete singular convolution toolkit", "dsc"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  KernelCmd kc;
  ZooCmd zc;
  WaveguideCmd wg;
  PoissonCmd pc;
  WaveCmd wc;

  auto* kernel = app.add_subcommand("kernel", "Kernel values, weight tables and matrices");
  kernel->add_option("action", kc.action, "dump | eval | matrix")
      ->check(CLI::IsMember({"dump", "eval", "matrix"}))
      ->capture_default_str();
  add_kernel_options(kernel, kc.k);
  kernel->add_option("--from", kc.from, "eval: first offset")->capture_default_str();
  kernel->add_option("--to", kc.to, "eval: last offset")->capture_default_str();
  kernel->add_option("--points", kc.points, "eval: number of offsets")->capture_default_str();
  kernel->add_option("--nodes", kc.nodes, "matrix: node count")->capture_default_str();
  kernel->add_option("--boundary", kc.boundary, "matrix: boundary kind")->capture_default_str();
  kernel->add_option("--k1", kc.k1, "matrix: K1 of a transversely supported edge")
      ->capture_default_str();
  add_common(kernel, common);

  auto* zoo = app.add_subcommand("zoo", "Delta-sequence convergence probes");
  zoo->add_option("--kind", zc.kind, "Delta sequence kind")->capture_default_str();
  zoo->add_option("--schedule", zc.schedule, "Comma separated parameter values")
      ->capture_default_str();
  zoo->add_option("--test-fn", zc.test_fn, "cos | one | gauss")->capture_default_str();
  zoo->add_option("--lorentz-order", zc.lorentz_order, "Lorentz order n")->capture_default_str();
  zoo->add_option("--landau-support", zc.landau_support, "Landau support a")
      ->capture_default_str();
  zoo->add_option("--poussin-p", zc.poussin_p, "de la Vallee Poussin p")->capture_default_str();
  zoo->add_option("--lo", zc.lo, "Quadrature lower limit")->capture_default_str();
  zoo->add_option("--hi", zc.hi, "Quadrature upper limit")->capture_default_str();
  zoo->add_option("--step", zc.step, "Quadrature step (0 = automatic)")->capture_default_str();
  add_common(zoo, common);

  auto* guide = app.add_subcommand("waveguide", "TM waveguide eigenvalues");
  guide->add_option("--n", wg.n, "Intervals per side")->capture_default_str();
  guide->add_option("--m", wg.m, "Half bandwidth (0 = n)")->capture_default_str();
  guide->add_option("--sigma-over-delta", wg.sigma_over_delta, "Ratio r = sigma/delta")
      ->capture_default_str();
  guide->add_option("--modes", wg.modes, "Number of eigenvalues")->capture_default_str();
  guide->add_option("--shape", wg.shape, "square | t | e")->capture_default_str();
  guide->add_option("--omega", wg.omega, "Angular frequency for the alpha column");
  guide->add_option("--eps-nu", wg.eps_nu, "Material factor eps*nu")->capture_default_str();
  guide->add_option("--field", wg.field, "Dump the field of this mode instead of the spectrum")
      ->capture_default_str();
  add_common(guide, common);

  auto* poisson = app.add_subcommand("poisson", "Potential in a conducting box");
  poisson->add_option("--nodes", pc.nodes, "Nodes per axis, walls included")
      ->capture_default_str();
  poisson->add_flag("--laplace-only", pc.laplace_only, "Drop the charged patch");
  poisson->add_option("--sigma-over-delta", pc.sigma_over_delta, "Ratio r = sigma/delta")
      ->capture_default_str();
  poisson->add_option("--m", pc.m, "Half bandwidth (0 = nodes - 1)")->capture_default_str();
  poisson->add_option("--v-top", pc.v_top, "Lid potential [V]")->capture_default_str();
  poisson->add_option("--v-bottom", pc.v_bottom, "Bottom wall potential [V]")
      ->capture_default_str();
  poisson->add_option("--v-left", pc.v_left, "Left wall potential [V]")->capture_default_str();
  poisson->add_option("--v-right", pc.v_right, "Right wall potential [V]")
      ->capture_default_str();
  poisson->add_option("--patch", pc.patches, "x0,x1,y0,y1,rho,eps_r (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  poisson->add_option("--probe", pc.probes, "x,y (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  add_common(poisson, common);

  auto* wave = app.add_subcommand("wave", "Periodic wave propagation error trace");
  wave->add_option("--dims", wc.dims, "Spatial dimensions")->capture_default_str();
  wave->add_option("--n", wc.n, "Nodes per axis")->capture_default_str();
  wave->add_option("--m", wc.m, "Half bandwidth (0 = n)")->capture_default_str();
  wave->add_option("--sigma-over-delta", wc.sigma_over_delta, "Ratio r = sigma/delta")
      ->capture_default_str();
  wave->add_option("--t-end", wc.t_end, "Final time")->capture_default_str();
  wave->add_option("--report-every", wc.report_every, "Report interval")->capture_default_str();
  wave->add_option("--dt", wc.dt, "Time step (0 = stability rule)")->capture_default_str();
  wave->add_option("--eps-nu", wc.eps_nu, "Material factor eps*nu")->capture_default_str();
  wave->add_flag("--energy", wc.energy, "Add the discrete energy column");
  add_common(wave, common);

  try {
    const std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (auto* sub : app.get_subcommands())
      if (sub->get_help_ptr() && sub->get_help_ptr()->count() > 0) {
        out << sub->help();
        return kOk;
      }
    err << "error: " << msg << '\n';
    return kUsage;
  }

  try {
    for (auto* sub : app.get_subcommands()) {
      if (sub->get_help_ptr() && sub->get_help_ptr()->count() > 0) {
        out << sub->help();
        return kOk;
      }
    }
    OutputTable table({});
    if (kernel->parsed()) table = run_kernel(kc);
    else if (zoo->parsed()) table = run_zoo(zc);
    else if (guide->parsed()) table = run_waveguide(wg);
    else if (poisson->parsed()) table = run_poisson(pc);
    else table = run_wave(wc);
    emit(table, common, out);
    return kOk;
  } catch (const DivergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kDivergence;
  } catch (const GeometryError& e) {
    err << "error: " << e.what() << '\n';
    return kGeometry;
  } catch (const NumericError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const DegenerateBoundaryError& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace dsc::cli
