#include "gave_cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "gave/comparators.hpp"
#include "gave/conditions.hpp"
#include "gave/errors.hpp"
#include "gave/generators.hpp"
#include "gave/io.hpp"
#include "gave/lcp.hpp"
#include "gave/linalg.hpp"

namespace gave::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double to_real(const std::string& s) {
  std::string_view v = s;
  if (!v.empty() && v.front() == '+') v.remove_prefix(1);
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size() || v.empty() || !std::isfinite(out)) {
    throw ConfigError("not a number: '" + s + "'");
  }
  return out;
}

// Round to 12 significant digits so grid points print as typed (0.79, not 0.79000000000000004).
double tidy(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// ---------------------------------------------------------------------------
// Problem sources.

struct ProblemOptions {
  std::string example;
  std::string m = "60";
  double mu = 4.0;
  bool singular_b = true;
  std::uint64_t seed = 42;
  std::string input;
  double gamma = 1.0;
  double theta = 1.0;
};

struct SolverOptions {
  std::optional<double> tol;
  std::optional<std::size_t> max_iter;
  std::string x0;
  std::string y0 = "rhs";
  double tau = 1.0;
  double omega_scale = 0.5;
  double q1 = 10.0;
  double q2 = 0.5;
};

enum class Experiment { Example51, Example52, Example53, CustomFile };

std::string experiment_name(Experiment e) {
  switch (e) {
    case Experiment::Example51: return "example51";
    case Experiment::Example52: return "example52";
    case Experiment::Example53: return "example53";
    case Experiment::CustomFile: return "custom-file";
  }
  return "custom-file";
}

Experiment parse_experiment(const ProblemOptions& o) {
  if (!o.input.empty()) {
    if (!o.example.empty()) throw ConfigError("--example and --input are mutually exclusive");
    return Experiment::CustomFile;
  }
  const std::string& e = o.example;
  if (e == "5.1" || e == "51" || e == "example51") return Experiment::Example51;
  if (e == "5.2" || e == "52" || e == "example52") return Experiment::Example52;
  if (e == "5.3" || e == "53" || e == "example53") return Experiment::Example53;
  if (e.empty()) throw ConfigError("a problem source is required: --example {5.1,5.2,5.3} or --input DIR");
  throw ConfigError("unknown example '" + e + "' (expected 5.1, 5.2 or 5.3)");
}

struct Source {
  Experiment experiment = Experiment::CustomFile;
  std::optional<std::size_t> m;
  std::optional<LcpProblem> lcp;
  std::optional<GaveProblem> gave;
  std::optional<Vector> solution;
  std::string record;

  std::size_t size() const { return lcp ? lcp->size() : gave->size(); }
};

Source load_directory(const fs::path& dir) {
  Source s;
  s.experiment = Experiment::CustomFile;
  s.record = "input=" + dir.string();
  const auto has = [&](const char* name) { return fs::exists(dir / name); };
  if (has("M.txt") && has("q.txt")) {
    s.lcp.emplace(io::load_matrix(dir / "M.txt").compacted(), io::load_vector(dir / "q.txt"));
    if (has("zstar.txt")) s.solution = io::load_vector(dir / "zstar.txt");
  } else if (has("A.txt") && has("B.txt") && has("b.txt")) {
    s.gave.emplace(io::load_matrix(dir / "A.txt").compacted(),
                   io::load_matrix(dir / "B.txt").compacted(), io::load_vector(dir / "b.txt"));
    if (has("xstar.txt")) s.solution = io::load_vector(dir / "xstar.txt");
  } else {
    throw ConfigError("input directory " + dir.string() +
                      " needs M.txt and q.txt, or A.txt, B.txt and b.txt");
  }
  return s;
}

Source load_source(const ProblemOptions& o, Experiment e, std::size_t m) {
  if (e == Experiment::CustomFile) return load_directory(o.input);
  Source s;
  s.experiment = e;
  s.m = m;
  if (e == Experiment::Example53) {
    gen::RandomGaveSpec spec;
    spec.m = m;
    spec.seed = o.seed;
    spec.make_b_singular = o.singular_b;
    s.gave.emplace(gen::gen_random_gave(spec));
    s.solution = gen::reference_solution(s.gave->size());
    s.record = gen::to_record(spec);
  } else {
    gen::BlockTridiagonalSpec spec;
    spec.m = m;
    spec.mu = o.mu;
    spec.z_star_pattern = e == Experiment::Example51 ? Vector{1.0, 2.0} : Vector{1.0, 10.0};
    auto ex = gen::gen_lcp_example(spec);
    s.lcp.emplace(std::move(ex.problem));
    s.solution = std::move(ex.z_star);
    s.record = gen::to_record(spec);
  }
  return s;
}

std::size_t single_m(const std::string& text) {
  const auto values = parse_size_list(text);
  if (values.size() != 1) throw ConfigError("--m takes a single value here, got '" + text + "'");
  return values.front();
}

ModulusConfig modulus_config(const ProblemOptions& o, double theta) {
  ModulusConfig mc;
  mc.gamma = o.gamma;
  mc.theta = theta;
  return mc;
}

// ---------------------------------------------------------------------------
// Methods.

struct Method {
  std::string name;
  bool amgs = false;
  bool ggs_lcp = false;
  GaveMethod gave = GaveMethod::Ggs;

  bool needs_lcp() const { return amgs || ggs_lcp; }
  bool has_tau() const { return !needs_lcp() && uses_tau(gave); }
};

const char* kMethodList = "ggs, picard, mn, gn, ssmn, mnms, gnms, rms, fpi, ggs-lcp, amgs";

Method parse_method(const std::string& name) {
  Method m;
  m.name = name;
  if (name == "amgs") {
    m.amgs = true;
  } else if (name == "ggs-lcp") {
    m.ggs_lcp = true;
  } else if (auto g = parse_gave_method(name)) {
    m.gave = *g;
  } else {
    throw ConfigError("unknown method '" + name + "' (expected one of: " + kMethodList + ")");
  }
  return m;
}

SolverConfig solver_config(const SolverOptions& o, const Source& src) {
  SolverConfig c;
  c.tol = o.tol.value_or(src.lcp ? 1e-5 : 1e-8);
  c.max_iter = o.max_iter.value_or(100);
  if (!o.x0.empty()) {
    c.x0 = parse_x0_rule(o.x0);
  } else {
    c.x0 = src.lcp ? X0Rule::Alt10 : X0Rule::Zeros;
  }
  c.y0 = parse_y0_rule(o.y0);
  c.tau = o.tau;
  c.omega.scale = o.omega_scale;
  c.q1 = o.q1;
  c.q2 = o.q2;
  c.validate();
  return c;
}

SolveReport run_method(const Method& method, const Source& src, const SolverConfig& cfg,
                       const ModulusConfig& mc) {
  if (method.needs_lcp()) {
    if (!src.lcp) {
      throw ConfigError("method " + method.name +
                        " needs an LCP problem (--example 5.1/5.2, or M.txt and q.txt)");
    }
    return method.amgs ? solve_amgs(*src.lcp, mc, cfg) : solve_ggs_lcp(*src.lcp, mc, cfg);
  }
  if (src.gave) return solve_gave(method.gave, *src.gave, cfg);
  // GAVE methods on an LCP source run on its modulus reformulation.
  return solve_gave(method.gave, lcp_to_gave(*src.lcp, mc), cfg);
}

std::optional<double> row_parameter(const Method& method, const Source& src, double theta,
                                    double tau) {
  if (method.has_tau()) return tau;
  if (src.lcp) return theta;
  return std::nullopt;
}

ResultRow make_row(const Source& src, const Method& method, const SolveReport& report) {
  ResultRow row;
  row.experiment = experiment_name(src.experiment);
  row.method = method.name;
  row.m = src.m;
  row.n = src.size();
  row.iterations = report.iterations;
  const double res = report.final_residual();
  if (std::isfinite(res)) row.residual = res;
  row.cpu_seconds = report.wall_time_seconds;
  row.termination = std::string(to_string(report.termination));
  return row;
}

int exit_code(Termination t) {
  switch (t) {
    case Termination::Converged: return 0;
    case Termination::MaxIterations: return 2;
    case Termination::NumericalBreakdown: return 3;
  }
  return 1;
}

std::string provenance(const std::string& command, const std::vector<std::string>& fields) {
  return "# gave " + command + " version=" + kVersion + " prng=" + gen::UniformStream::name() +
         (fields.empty() ? "" : " " + join(fields, " "));
}

// Writes to the -o path when given, otherwise to `out`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& out) : out_(&out) {
    if (!path.empty()) {
      if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
      file_.open(path);
      if (!file_) throw ConfigError("cannot open " + path + " for writing");
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void add_problem_options(CLI::App* app, ProblemOptions& p) {
  app->add_option("--example", p.example, "Generator: 5.1, 5.2 (block-tridiagonal LCP) or 5.3 (random GAVE)");
  app->add_option("--input", p.input, "Directory with M.txt/q.txt or A.txt/B.txt/b.txt");
  app->add_option("--mu", p.mu, "Diagonal shift of the LCP generator")->capture_default_str();
  app->add_flag("--singular-b,!--no-singular-b", p.singular_b,
                "Copy B's second-to-last row into its last row (5.3)")
      ->capture_default_str();
  app->add_option("--seed", p.seed, "PRNG seed (5.3)")->capture_default_str();
  app->add_option("--gamma", p.gamma, "Modulus scaling gamma > 0")->capture_default_str();
}

void add_solver_options(CLI::App* app, SolverOptions& s) {
  app->add_option("--tol", s.tol, "Stopping tolerance (default 1e-5 for LCPs, 1e-8 for GAVEs)");
  app->add_option("--max-iter", s.max_iter, "Iteration cap (default 100)");
  app->add_option("--x0", s.x0, "Initial guess: zeros or alt10 (default alt10 for LCPs)");
  app->add_option("--y0", s.y0, "Start of the y sequence: rhs, zeros or abs-x0")->capture_default_str();
  app->add_option("--omega-scale", s.omega_scale, "Omega = scale * D_A for mn, ssmn, mnms")
      ->capture_default_str();
  app->add_option("--q1", s.q1, "GNMS Q1 = q1 I")->capture_default_str();
  app->add_option("--q2", s.q2, "GNMS Q2 = q2 I")->capture_default_str();
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_solve(const ProblemOptions& p, const SolverOptions& s, const std::string& method_name,
              const std::string& output, const std::string& history, std::ostream& out) {
  const Method method = parse_method(method_name);
  const Experiment e = parse_experiment(p);
  const Source src = load_source(p, e, e == Experiment::CustomFile ? 0 : single_m(p.m));
  const SolverConfig cfg = solver_config(s, src);
  const ModulusConfig mc = modulus_config(p, p.theta);
  const SolveReport report = run_method(method, src, cfg, mc);

  ResultRow row = make_row(src, method, report);
  row.parameter = row_parameter(method, src, p.theta, s.tau);
  Sink sink(output, out);
  sink.stream() << provenance("solve", {"method=" + method.name, src.record}) << '\n'
                << result_header() << '\n'
                << format_row(row) << '\n';
  if (!history.empty()) {
    Sink h(history, out);
    h.stream() << "iteration,residual\n";
    for (std::size_t k = 0; k < report.residual_history.size(); ++k) {
      h.stream() << k << ',' << fmt("%.17g", report.residual_history[k]) << '\n';
    }
  }
  return exit_code(report.termination);
}

struct BenchOptions {
  std::string methods;
  std::size_t repeats = 10;
  std::string theta_grid;
  std::string tau_grid;
};

int cmd_bench(const ProblemOptions& p, const SolverOptions& s, const BenchOptions& b,
              const std::string& output, std::ostream& out, std::ostream& err) {
  std::vector<Method> methods;
  for (const auto& name : split(b.methods, ',')) {
    if (!name.empty()) methods.push_back(parse_method(name));
  }
  if (methods.empty()) throw ConfigError("--methods is empty");
  if (b.repeats == 0) throw ConfigError("--repeats must be >= 1");
  const Experiment e = parse_experiment(p);
  const std::vector<std::size_t> ms =
      e == Experiment::CustomFile ? std::vector<std::size_t>{0} : parse_size_list(p.m);
  const std::vector<double> theta_grid =
      b.theta_grid.empty() ? std::vector<double>{} : parse_real_list(b.theta_grid);
  const std::vector<double> tau_grid =
      b.tau_grid.empty() ? std::vector<double>{} : parse_real_list(b.tau_grid);

  std::vector<ResultRow> rows;
  std::vector<std::string> records;
  double used_tol = 0.0;
  for (std::size_t m : ms) {
    const Source src = load_source(p, e, m);
    records.push_back(src.record);
    const SolverConfig base = solver_config(s, src);
    used_tol = base.tol;
    for (const Method& method : methods) {
      ResultRow row;
      row.experiment = experiment_name(src.experiment);
      row.method = method.name;
      row.m = src.m;
      row.n = src.size();
      try {
        double theta = p.theta;
        SolverConfig cfg = base;
        std::optional<double> cpu_opt;
        if (method.amgs && !theta_grid.empty() && src.lcp) {
          const auto sweep = sweep_optimal_theta(*src.lcp, modulus_config(p, p.theta), cfg, theta_grid);
          theta = sweep.theta_opt;
          cpu_opt = sweep.sweep_seconds;
        } else if (method.has_tau() && !tau_grid.empty()) {
          const auto mc = modulus_config(p, theta);
          const GaveProblem reformulated = src.gave ? *src.gave : lcp_to_gave(*src.lcp, mc);
          const auto sweep = sweep_optimal_tau(method.gave, reformulated, cfg, tau_grid);
          cfg.tau = sweep.tau_opt;
          cpu_opt = sweep.sweep_seconds;
        }
        const ModulusConfig mc = modulus_config(p, theta);
        double total = 0.0;
        SolveReport report;
        for (std::size_t r = 0; r < b.repeats; ++r) {
          report = run_method(method, src, cfg, mc);
          total += report.wall_time_seconds;
        }
        row = make_row(src, method, report);
        row.cpu_seconds = total / static_cast<double>(b.repeats);
        row.cpu_opt_seconds = cpu_opt;
        row.parameter = row_parameter(method, src, theta, cfg.tau);
      } catch (const Error& ex) {
        err << "bench: " << method.name << " at m=" << m << ": " << ex.what() << '\n';
        row.termination = "Error";
      }
      rows.push_back(row);
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& x, const ResultRow& y) {
    return std::tie(x.method, x.m, x.parameter) < std::tie(y.method, y.m, y.parameter);
  });

  std::vector<std::string> echo = {
      "experiment=" + experiment_name(e), "m=" + p.m, "methods=" + b.methods,
      "repeats=" + std::to_string(b.repeats),
      "tol=" + fmt("%g", used_tol),
      "max_iter=" + std::to_string(s.max_iter.value_or(100)),
      "theta_grid=" + (b.theta_grid.empty() ? std::string("none") : b.theta_grid),
      "tau_grid=" + (b.tau_grid.empty() ? std::string("none") : b.tau_grid),
      "theta=" + fmt("%g", p.theta), "tau=" + fmt("%g", s.tau), "seed=" + std::to_string(p.seed)};
  Sink sink(output, out);
  sink.stream() << provenance("bench", echo) << '\n';
  for (const auto& r : records) sink.stream() << "# problem " << r << '\n';
  sink.stream() << result_header() << '\n';
  for (const auto& row : rows) sink.stream() << format_row(row) << '\n';
  return 0;
}

struct CheckOptions {
  std::string condition = "any";
  std::string sweep_m;
};

int cmd_check(const ProblemOptions& p, const CheckOptions& c, const std::string& output,
              std::ostream& out) {
  const bool want31 = c.condition == "thm31" || c.condition == "any";
  const bool want32 = c.condition == "thm32" || c.condition == "any";
  if (!want31 && !want32) {
    throw ConfigError("unknown --condition '" + c.condition + "' (expected thm31, thm32 or any)");
  }
  const Experiment e = parse_experiment(p);
  std::vector<std::size_t> ms;
  if (e == Experiment::CustomFile) {
    ms = {0};
  } else if (!c.sweep_m.empty()) {
    ms = parse_size_list(c.sweep_m);
  } else {
    ms = {single_m(p.m)};
  }

  Sink sink(output, out);
  sink.stream() << provenance("check", {"experiment=" + experiment_name(e), "condition=" + c.condition})
                << '\n'
                << "experiment,m,n,diagonal,dominance,inf_norm,norm_upper_a,norm_upper_b,"
                   "norm_lower_b,theorem31,theorem32\n";
  bool all_hold = true;
  for (std::size_t m : ms) {
    const Source src = load_source(p, e, m);
    const GaveProblem problem = src.gave ? *src.gave : lcp_to_gave(*src.lcp, modulus_config(p, p.theta));
    const Theorem31Check t31 = check_theorem31(problem);
    // The M-matrix test costs a dense factorization, so it is skipped for --condition thm31.
    std::optional<bool> t32;
    if (want32) t32 = check_theorem32(problem);
    const bool holds = (c.condition == "thm31" && t31.holds) ||
                       (c.condition == "thm32" && *t32) ||
                       (c.condition == "any" && (t31.holds || *t32));
    all_hold = all_hold && holds;
    auto flag = [](bool v) { return v ? "true" : "false"; };
    sink.stream() << experiment_name(src.experiment) << ','
                  << (src.m ? std::to_string(*src.m) : std::string()) << ',' << src.size() << ','
                  << flag(t31.diagonal_holds) << ',' << flag(t31.dominance_holds) << ','
                  << fmt("%.17g", t31.inf_norm_value) << ',' << fmt("%.17g", t31.norm_upper_a)
                  << ',' << fmt("%.17g", t31.norm_upper_b) << ','
                  << fmt("%.17g", t31.norm_lower_b) << ',' << flag(t31.holds) << ','
                  << (t32 ? flag(*t32) : "") << '\n';
  }
  return all_hold ? 0 : 4;
}

int cmd_gen(const ProblemOptions& p, const std::string& output, std::ostream& out) {
  if (output.empty()) throw ConfigError("gen needs an output directory (-o DIR)");
  const Experiment e = parse_experiment(p);
  if (e == Experiment::CustomFile) throw ConfigError("gen needs --example");
  const Source src = load_source(p, e, single_m(p.m));
  const fs::path dir = output;
  fs::create_directories(dir);
  const std::vector<std::string> comments = {provenance("gen", {}).substr(2), src.record};
  std::vector<fs::path> written;
  auto matrix = [&](const char* name, const Matrix& a) {
    io::save_matrix(dir / name, a, comments);
    written.push_back(dir / name);
  };
  auto vector = [&](const char* name, const Vector& v) {
    io::save_vector(dir / name, v, comments);
    written.push_back(dir / name);
  };
  if (src.lcp) {
    matrix("M.txt", src.lcp->m_mat());
    vector("q.txt", src.lcp->q());
    vector("zstar.txt", *src.solution);
  } else {
    matrix("A.txt", src.gave->a());
    matrix("B.txt", src.gave->b_mat());
    vector("b.txt", src.gave->rhs());
    vector("xstar.txt", *src.solution);
  }
  for (const auto& path : written) out << path.string() << '\n';
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<double> parse_real_list(std::string_view text) {
  const std::string t = trim(text);
  if (t.empty()) throw ConfigError("empty list");
  std::vector<double> out;
  if (t.find(':') != std::string::npos) {
    const auto parts = split(t, ':');
    if (parts.size() != 3) throw ConfigError("grid must look like a:step:b, got '" + t + "'");
    const double a = to_real(parts[0]);
    const double step = to_real(parts[1]);
    const double b = to_real(parts[2]);
    if (!(step > 0.0)) throw ConfigError("grid step must be positive in '" + t + "'");
    if (b < a) throw ConfigError("grid end is below its start in '" + t + "'");
    const auto count = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) out.push_back(tidy(a + static_cast<double>(k) * step));
    return out;
  }
  for (const auto& part : split(t, ',')) out.push_back(to_real(part));
  return out;
}

std::vector<std::size_t> parse_size_list(std::string_view text) {
  std::vector<std::size_t> out;
  for (double v : parse_real_list(text)) {
    if (!(v >= 1.0) || v != std::floor(v)) {
      throw ConfigError("expected positive integers, got '" + std::string(text) + "'");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::string result_header() {
  return "experiment,method,m,n,parameter,IT,RES,CPU_seconds,CPU_opt_seconds,termination";
}

std::string format_row(const ResultRow& row) {
  std::ostringstream s;
  s << row.experiment << ',' << row.method << ','
    << (row.m ? std::to_string(*row.m) : std::string()) << ',' << row.n << ','
    << (row.parameter ? fmt("%g", *row.parameter) : std::string("—")) << ','
    << row.iterations << ',' << (row.residual ? fmt("%.17g", *row.residual) : std::string())
    << ',' << fmt("%.6g", row.cpu_seconds) << ','
    << (row.cpu_opt_seconds ? fmt("%.6g", *row.cpu_opt_seconds) : std::string()) << ','
    << row.termination;
  return s.str();
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file name");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::set<std::string> given;
  for (const auto& a : rest) {
    if (a == "-o") given.insert("output");
    if (a.rfind("--", 0) != 0) continue;
    std::string key = a.substr(2, a.find('=') == std::string::npos ? std::string::npos : a.find('=') - 2);
    if (key.rfind("no-", 0) == 0) key = key.substr(3);
    given.insert(key);
  }
  std::vector<std::string> injected;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    std::string key = trim(t.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    if (given.count(key)) continue;
    injected.push_back("--" + key + "=" + value);
  }
  const std::size_t at = !rest.empty() && rest.front().rfind("-", 0) != 0 ? 1 : 0;
  rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
  return rest;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generalized absolute value equation solvers and benchmarks", "gave"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  ProblemOptions problem;
  SolverOptions solver;
  std::string output;
  std::string method;
  std::string history;
  BenchOptions bench;
  CheckOptions check;

  auto common = [&](CLI::App* sub) {
    add_problem_options(sub, problem);
    sub->add_option("--output,-o", output, "Output file (directory for gen)");
    sub->add_option("--config", [](const CLI::results_t&) { return true; },
                    "Flat key = value file; flags on the command line override it");
  };

  CLI::App* solve = app.add_subcommand("solve", "Run one solver and print a result row");
  common(solve);
  add_solver_options(solve, solver);
  solve->add_option("--m", problem.m, "Grid side, n = m^2")->capture_default_str();
  solve->add_option("--method", method, std::string("One of: ") + kMethodList)->required();
  solve->add_option("--theta", problem.theta, "Omega = theta * D_M for the LCP methods")
      ->capture_default_str();
  solve->add_option("--tau", solver.tau, "Relaxation for gnms, rms, fpi")->capture_default_str();
  solve->add_option("--history", history, "Write the residual history CSV here");

  CLI::App* bench_cmd = app.add_subcommand("bench", "Run methods over m values and write CSV rows");
  common(bench_cmd);
  add_solver_options(bench_cmd, solver);
  bench_cmd->add_option("--m", problem.m, "List of m values: 60,80,100 or 60:10:100")
      ->capture_default_str();
  bench_cmd->add_option("--methods", bench.methods, std::string("Comma list from: ") + kMethodList)
      ->required();
  bench_cmd->add_option("--repeats", bench.repeats, "Timed runs per row")->capture_default_str();
  bench_cmd->add_option("--theta-grid", bench.theta_grid, "amgs sweep grid, e.g. 0:0.01:2");
  bench_cmd->add_option("--tau-grid", bench.tau_grid, "gnms/rms/fpi sweep grid, e.g. 0:0.01:2");
  bench_cmd->add_option("--theta", problem.theta, "theta when no grid is given")
      ->capture_default_str();
  bench_cmd->add_option("--tau", solver.tau, "tau when no grid is given")->capture_default_str();

  CLI::App* check_cmd = app.add_subcommand("check", "Evaluate the GGS convergence conditions");
  common(check_cmd);
  check_cmd->add_option("--m", problem.m, "Grid side, n = m^2")->capture_default_str();
  check_cmd->add_option("--theta", problem.theta, "Omega = theta * D_M for LCP sources")
      ->capture_default_str();
  check_cmd->add_option("--condition", check.condition, "thm31, thm32 or any")
      ->capture_default_str();
  check_cmd->add_option("--sweep-m", check.sweep_m, "Evaluate every m in a list or a:step:b grid");

  CLI::App* gen_cmd = app.add_subcommand("gen", "Write a generated problem as text files");
  common(gen_cmd);
  gen_cmd->add_option("--m", problem.m, "Grid side, n = m^2")->capture_default_str();

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (solve->parsed()) return cmd_solve(problem, solver, method, output, history, out);
    if (bench_cmd->parsed()) return cmd_bench(problem, solver, bench, output, out, err);
    if (check_cmd->parsed()) return cmd_check(problem, check, output, out);
    if (gen_cmd->parsed()) return cmd_gen(problem, output, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace gave::cli
