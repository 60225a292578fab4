#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <ostream>

#include "config.hpp"
#include "qhb/certificate.hpp"
#include "qhb/log.hpp"

namespace qhb::cli {

namespace {

struct Flags {
  RunConfig cfg;
  std::string x0, y0;
  std::string d, N, L, amplitude, s, c1, c2;
  double eps = 0;
  std::string config;
};

void add_run_options(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "TOML file with the same keys as the long flags; flags win");
  sub->add_option("--problem", f.cfg.problem, "problem id (see 'list')");
  sub->add_option("--d", f.d, "fvks: space dimension");
  sub->add_option("--N", f.N, "fvks: number of cells");
  sub->add_option("--L", f.L, "fvks: domain length");
  sub->add_option("--amplitude", f.amplitude, "fvks: initial amplitude");
  sub->add_option("--s", f.s, "kk: shock speed interval 'lo,hi'");
  sub->add_option("--c1", f.c1, "kk: constant c1 interval 'lo,hi'");
  sub->add_option("--c2", f.c2, "kk: constant c2 interval 'lo,hi'");
  sub->add_option("--chart", f.cfg.chart, "para or dir:<i>:<+|->");
  sub->add_option("--x0", f.x0, "compactified initial point, comma separated");
  sub->add_option("--y0", f.y0, "original initial point, comma separated");
  sub->add_option("--tol", f.cfg.tol, "integrator local tolerance")->capture_default_str();
  sub->add_option("--tau-max", f.cfg.tau_max, "maximal desingularized time")->capture_default_str();
  sub->add_option("--order", f.cfg.order, "Taylor order")->capture_default_str();
  sub->add_option("--eps", f.eps, "cap on the Lyapunov sublevel eps");
  sub->add_option("--out", f.cfg.out, "output path (default stdout)");
}

// CLI11 reads config files only for the top-level app, so the subcommand's
// file is applied here. Keys may sit at top level or under [<subcommand>];
// options already given on the command line keep their values.
void apply_config(CLI::App* sub, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  for (const CLI::ConfigItem& item : CLI::ConfigTOML().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    const bool ours = item.parents.empty() || (item.parents.size() == 1 && item.parents[0] == sub->get_name());
    CLI::Option* opt = ours ? sub->get_option_no_throw("--" + item.name) : nullptr;
    if (opt == nullptr || item.name == "config") throw std::invalid_argument("unknown config key " + item.fullname());
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

RunConfig finish_config(CLI::App* sub, Flags& f) {
  if (!f.config.empty()) apply_config(sub, f.config);
  RunConfig cfg = f.cfg;
  const std::pair<const char*, const std::string*> params[] = {
      {"d", &f.d}, {"N", &f.N}, {"L", &f.L}, {"amplitude", &f.amplitude}, {"s", &f.s}, {"c1", &f.c1}, {"c2", &f.c2}};
  for (const auto& [key, val] : params)
    if (!val->empty()) cfg.params[key] = *val;
  if (!f.x0.empty()) cfg.x0 = parse_vector(f.x0);
  if (!f.y0.empty()) cfg.y0 = parse_vector(f.y0);
  if (sub->count("--eps") > 0) cfg.eps_override = f.eps;
  return cfg;
}

// Writes to --out when given, else to the default stream.
struct Sink {
  std::ofstream file;
  std::ostream* os;
  Sink(const std::string& path, std::ostream& fallback) : os(&fallback) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw std::invalid_argument("cannot open output file '" + path + "'");
      os = &file;
    }
  }
};

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Resolved r = resolve(cfg);
  Sink sink(cfg.out, out);
  BlowUpCertificate c = validate_blowup(r.problem, r.chart, r.init, r.options);
  *sink.os << std::setw(2) << certificate_json(c) << '\n';
  if (c.succeeded()) {
    err << "succeeded: t_max in [" << decimal_down(c.t_max.lo()) << ", " << decimal_up(c.t_max.hi()) << "]\n";
    return 0;
  }
  err << "failed at stage " << c.stage << ": " << c.message << '\n';
  return 2;
}

int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Resolved r = resolve(cfg);
  Sink sink(cfg.out, out);
  std::ostream& os = *sink.os;
  const DesingularizedField g = desingularize(r.problem.model, r.chart);
  IntervalVector x0;
  try {
    x0 = r.init.x0 ? IntervalVector::point(*r.init.x0) : chart_forward(*r.init.y0, r.chart);
  } catch (const std::domain_error& e) {
    throw std::invalid_argument(e.what());
  }
  const std::size_t n = g.dim();
  os << "tau,t_lo,t_hi";
  for (std::size_t i = 1; i <= n; ++i) os << ",x" << i << "_lo,x" << i << "_hi";
  for (std::size_t i = 1; i <= n; ++i) os << ",y" << i << "_lo,y" << i << "_hi";
  os << '\n';
  if (cfg.tau_max <= 0) return 0;
  Integrator integ(g, x0, r.options.integrator);
  try {
    while (integ.tau() < cfg.tau_max) {
      const StepRecord& rec = integ.step(cfg.tau_max - integ.tau());
      os << real_string(rec.tau1) << ',' << decimal_down(rec.t_end.lo()) << ',' << decimal_up(rec.t_end.hi());
      for (const Interval& c : rec.tight_endpoint) os << ',' << decimal_down(c.lo()) << ',' << decimal_up(c.hi());
      std::optional<IntervalVector> y;
      try {
        y = chart_inverse(rec.tight_endpoint, r.chart);
      } catch (const std::domain_error&) {
      }
      for (std::size_t i = 0; i < n; ++i) {
        if (y) os << ',' << decimal_down((*y)[i].lo()) << ',' << decimal_up((*y)[i].hi());
        else os << ",-inf,inf";
      }
      os << '\n';
    }
  } catch (const StepFailure& e) {
    err << "failed at stage integration: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int cmd_list(std::ostream& out) {
  for (const ProblemInfo& p : list_problems())
    out << p.id << "\n  parameters: " << p.params << "\n  " << p.description << '\n';
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigorous blow-up time enclosures for polynomial ODEs", "blowup"};
  app.require_subcommand(1);
  Flags vf, tf;
  CLI::App* validate = app.add_subcommand("validate", "validate a blow-up solution and write a JSON certificate");
  add_run_options(validate, vf);
  CLI::App* trace = app.add_subcommand("trace", "write the rigorous trajectory enclosure as CSV");
  tf.cfg.tau_max = 100;
  add_run_options(trace, tf);
  app.add_subcommand("list", "list built-in problems");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const std::string help = validate->parsed() ? validate->help() : trace->parsed() ? trace->help() : app.help();
    if (e.get_exit_code() == 0) {
      out << help;
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << help;
    return 1;
  }
  try {
    if (app.got_subcommand("list")) return cmd_list(out);
    if (validate->parsed()) return cmd_validate(finish_config(validate, vf), out, err);
    return cmd_trace(finish_config(trace, tf), out, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n";
    err << (validate->parsed() ? validate->help() : trace->help());
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace qhb::cli
