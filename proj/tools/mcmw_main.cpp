// mcmw: evaluation, simulation, fitting and model comparison for the
// six-parameter generalized modified-Weibull family.
//
// Exit codes: 0 success, 1 usage/parse, 2 numerical non-convergence, 3 I/O.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "mcmw/builtin_data.hpp"
#include "mcmw/distribution.hpp"
#include "mcmw/fit.hpp"
#include "mcmw/gof.hpp"
#include "mcmw/report.hpp"
#include "mcmw/series.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct CommonOpts {
  std::string data_path;
  bool use_builtin = false;
  std::string models_csv;
  std::string params_csv;
  std::string grid_spec = "0.01:16:500";
  int n = 1;
  std::uint64_t seed = 12345;
  int starts = 20;
  double level = 0.95;
  std::string format = "table";
  std::string out_path;
};

mcmw::OutputFormat parse_format(const std::string& f) {
  if (f == "json") return mcmw::OutputFormat::Json;
  if (f == "table") return mcmw::OutputFormat::Table;
  throw CLI::ValidationError("--format must be json or table");
}

std::optional<mcmw::Dataset> load_data(const CommonOpts& o) {
  if (o.use_builtin) return mcmw::builtin_failure_times();
  if (!o.data_path.empty()) return mcmw::load_dataset(o.data_path);
  return std::nullopt;
}

std::vector<mcmw::Submodel> parse_models(const std::string& csv) {
  std::vector<mcmw::Submodel> models;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    auto m = mcmw::submodel_from_name(tok);
    if (!m) throw CLI::ValidationError("unknown model name: " + tok);
    models.push_back(*m);
  }
  return models;
}

mcmw::McMWParams parse_params(const std::string& csv) {
  std::vector<double> v;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  if (v.size() != 6)
    throw CLI::ValidationError(
        "--params needs six values: alpha,gamma,beta,a,b,c");
  return mcmw::validate(v[0], v[1], v[2], v[3], v[4], v[5]);
}

struct Grid {
  double min = 0.0, max = 0.0;
  int points = 0;
};

Grid parse_grid(const std::string& spec) {
  Grid g;
  char c1 = 0, c2 = 0;
  std::stringstream ss(spec);
  if (!(ss >> g.min >> c1 >> g.max >> c2 >> g.points) || c1 != ':' ||
      c2 != ':')
    throw CLI::ValidationError("--grid must be MIN:MAX:N");
  if (!(g.min < g.max) || g.points < 2)
    throw CLI::ValidationError("--grid needs min < max and N >= 2");
  return g;
}

// output sink: stdout by default, file when --out is given
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::ios_base::failure("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

int cmd_fit(const CommonOpts& o) {
  auto data = load_data(o);
  if (!data) {
    std::cerr << "fit: needs --data PATH or --builtin\n";
    return kExitUsage;
  }
  const auto models = parse_models(o.models_csv);
  if (models.size() != 1) {
    std::cerr << "fit: needs exactly one --model\n";
    return kExitUsage;
  }
  mcmw::FitOptions fo;
  fo.starts = o.starts;
  const auto fit = mcmw::fit_mle(*data, models[0], fo, o.level);
  Sink sink(o.out_path);
  mcmw::write_fit_report(sink.stream(), fit, parse_format(o.format));
  return fit.converged ? kExitOk : kExitNumerical;
}

int cmd_compare(const CommonOpts& o) {
  auto data = load_data(o);
  if (!data) {
    std::cerr << "compare: needs --data PATH or --builtin\n";
    return kExitUsage;
  }
  const auto models = parse_models(o.models_csv);
  if (models.size() < 2) {
    std::cerr << "compare: needs at least two models\n";
    return kExitUsage;
  }
  mcmw::FitOptions fo;
  fo.starts = o.starts;
  const auto rows = mcmw::compare(*data, models, fo);
  Sink sink(o.out_path);
  mcmw::write_comparison(sink.stream(), rows, parse_format(o.format));
  for (const auto& r : rows)
    if (!r.fit_ok) return kExitNumerical;
  return kExitOk;
}

int cmd_eval(const CommonOpts& o) {
  if (o.params_csv.empty()) {
    std::cerr << "eval: needs --params alpha,gamma,beta,a,b,c\n";
    return kExitUsage;
  }
  const auto p = parse_params(o.params_csv);
  const Grid g = parse_grid(o.grid_spec);
  Sink sink(o.out_path);
  auto& os = sink.stream();
  const bool json = parse_format(o.format) == mcmw::OutputFormat::Json;
  nlohmann::json jrows = nlohmann::json::array();
  if (!json)
    os << "x,pdf,cdf,survival,hazard,reversed_hazard\n";
  for (int i = 0; i < g.points; ++i) {
    const double x = g.min + (g.max - g.min) * i / (g.points - 1);
    const double f = mcmw::pdf(p, x);
    const double F = mcmw::cdf(p, x);
    const double S = mcmw::survival(p, x);
    const double h = mcmw::hazard(p, x);
    const double rh = F > 0.0 ? mcmw::reversed_hazard(p, x)
                              : std::numeric_limits<double>::quiet_NaN();
    if (json) {
      jrows.push_back({{"x", x},
                       {"pdf", f},
                       {"cdf", F},
                       {"survival", S},
                       {"hazard", h},
                       {"reversed_hazard", rh}});
    } else {
      os << std::setprecision(12) << x << "," << f << "," << F << "," << S
         << "," << h << "," << rh << "\n";
    }
  }
  if (json) os << jrows.dump(2) << "\n";
  return kExitOk;
}

int cmd_sample(const CommonOpts& o) {
  if (o.params_csv.empty()) {
    std::cerr << "sample: needs --params alpha,gamma,beta,a,b,c\n";
    return kExitUsage;
  }
  if (o.n < 1) {
    std::cerr << "sample: needs --n >= 1\n";
    return kExitUsage;
  }
  const auto p = parse_params(o.params_csv);
  const auto draws = mcmw::sample(p, o.n, o.seed);
  Sink sink(o.out_path);
  auto& os = sink.stream();
  os << std::setprecision(17);
  for (double v : draws) os << v << "\n";
  return kExitOk;
}

int cmd_gof(const CommonOpts& o) {
  auto data = load_data(o);
  if (!data) {
    std::cerr << "gof: needs --data PATH or --builtin\n";
    return kExitUsage;
  }
  Sink sink(o.out_path);
  auto& os = sink.stream();
  const bool json = parse_format(o.format) == mcmw::OutputFormat::Json;
  if (!o.params_csv.empty()) {
    const auto p = parse_params(o.params_csv);
    const double ks = mcmw::ks_statistic(p, *data);
    if (json) {
      nlohmann::json j{{"ks", ks}, {"n", data->size()}};
      os << j.dump(2) << "\n";
    } else {
      os << "K-S at given parameters: " << std::setprecision(6) << ks << "\n";
    }
    return kExitOk;
  }
  const auto models = parse_models(o.models_csv);
  if (models.empty()) {
    std::cerr << "gof: needs --params or --model\n";
    return kExitUsage;
  }
  mcmw::FitOptions fo;
  fo.starts = o.starts;
  const auto rows = mcmw::compare(*data, models, fo);
  mcmw::write_comparison(os, rows, parse_format(o.format));
  for (const auto& r : rows)
    if (!r.fit_ok) return kExitNumerical;
  return kExitOk;
}

void write_plot_files(const std::string& stem, const mcmw::Dataset& data,
                      const std::vector<std::string>& names,
                      const std::vector<mcmw::McMWParams>& fitted,
                      const Grid& g) {
  std::ofstream curves(stem + "_curves.csv");
  if (!curves) throw std::ios_base::failure("cannot open " + stem + "_curves.csv");
  curves << "x";
  for (const auto& n : names)
    curves << ",pdf_" << n << ",cdf_" << n << ",hazard_" << n;
  curves << "\n" << std::setprecision(12);
  for (int i = 0; i < g.points; ++i) {
    const double x = g.min + (g.max - g.min) * i / (g.points - 1);
    curves << x;
    for (const auto& p : fitted)
      curves << "," << mcmw::pdf(p, x) << "," << mcmw::cdf(p, x) << ","
             << mcmw::hazard(p, x);
    curves << "\n";
  }
  std::ofstream ecdf(stem + "_ecdf.csv");
  if (!ecdf) throw std::ios_base::failure("cannot open " + stem + "_ecdf.csv");
  ecdf << "x,ecdf\n" << std::setprecision(12);
  const auto& xs = data.sorted();
  for (std::size_t i = 0; i < xs.size(); ++i)
    ecdf << xs[i] << "," << (static_cast<double>(i) + 1.0) / xs.size() << "\n";
}

int cmd_plotdata(const CommonOpts& o) {
  auto data = load_data(o);
  if (!data) {
    std::cerr << "plotdata: needs --data PATH or --builtin\n";
    return kExitUsage;
  }
  const Grid g = parse_grid(o.grid_spec);
  const auto models = parse_models(o.models_csv);
  if (models.empty()) {
    std::cerr << "plotdata: needs --model NAME[,NAME...]\n";
    return kExitUsage;
  }
  mcmw::FitOptions fo;
  fo.starts = o.starts;
  std::vector<std::string> names;
  std::vector<mcmw::McMWParams> fitted;
  for (auto m : models) {
    const auto fit = mcmw::fit_mle(*data, m, fo);
    names.push_back(mcmw::submodel_name(m));
    fitted.push_back(fit.params);
  }
  const std::string stem = o.out_path.empty() ? "mcmw_plotdata" : o.out_path;
  write_plot_files(stem, *data, names, fitted, g);
  std::cout << "wrote " << stem << "_curves.csv and " << stem << "_ecdf.csv\n";
  return kExitOk;
}

struct GateLine {
  std::string label;
  bool pass = false;
};

int cmd_paper_repro(const CommonOpts& o) {
  const auto& data = mcmw::builtin_failure_times();
  mcmw::FitOptions fo;  // fixed default start spec keeps the run deterministic
  fo.starts = o.starts;
  std::ostream& os = std::cout;
  os << "=== reproduction of the failure-times application ===\n\n";

  std::vector<GateLine> gates;
  auto gate = [&](const std::string& label, bool pass) {
    gates.push_back({label, pass});
    os << (pass ? "[PASS] " : "[FAIL] ") << label << "\n";
  };

  // MW fit
  const auto mw = mcmw::fit_mle(data, mcmw::Submodel::MW, fo, o.level);
  os << "--- MW fit ---\n";
  mcmw::write_fit_report(os, mw, mcmw::OutputFormat::Table);
  os << "reference -loglik 102.320 | computed " << std::setprecision(7)
     << mw.neg_loglik << "\n";
  os << "reference estimates alpha=0.043 coefficient=0.492 exponent=0.619\n";
  gate("MW -loglik in [102.27, 102.37]",
       mw.neg_loglik >= 102.27 && mw.neg_loglik <= 102.37);
  gate("MW estimates within 0.05 of reference",
       std::fabs(mw.params.alpha - 0.043) <= 0.05 &&
           std::fabs(mw.params.gamma - 0.492) <= 0.05 &&
           std::fabs(mw.params.beta - 0.619) <= 0.05);

  // McMW fit
  const auto mc = mcmw::fit_mle(data, mcmw::Submodel::McMW, fo, o.level);
  os << "\n--- McMW fit ---\n";
  mcmw::write_fit_report(os, mc, mcmw::OutputFormat::Table);
  os << "reference -loglik 98.404 | computed " << mc.neg_loglik << "\n";
  os << "reference estimates (0.599, 1.209, 1.063, 0.091, 0.090, 9.169):"
        " parameter-level match reported, not gated (multimodal surface)\n";
  gate("McMW -loglik <= 98.45", mc.neg_loglik <= 98.45);

  // comparison table
  os << "\n--- model comparison ---\n";
  const auto rows =
      mcmw::compare(data, {mcmw::Submodel::MW, mcmw::Submodel::McMW}, fo);
  mcmw::write_comparison(os, rows, mcmw::OutputFormat::Table);
  const mcmw::ModelComparison* mw_row = nullptr;
  const mcmw::ModelComparison* mc_row = nullptr;
  for (const auto& r : rows) {
    if (r.model_name == std::string("MW")) mw_row = &r;
    if (r.model_name == std::string("McMW")) mc_row = &r;
  }
  os << "reference table: MW  K-S 0.128  -2l 204.640  AIC 210.64   AICC 211.161\n";
  os << "                 McMW K-S 0.118  -2l 196.808  AIC 208.808  AICC 210.761\n";
  const double aic_mc_ref = mcmw::aic(6, -98.404);
  const double aicc_mc_ref = mcmw::aicc(6, -98.404, 50);
  const double aic_mw_ref = mcmw::aic(3, -102.320);
  const double aicc_mw_ref = mcmw::aicc(3, -102.320, 50);
  gate("AIC/AICC formulas reproduce the reference values to 0.002",
       std::fabs(aic_mc_ref - 208.808) <= 0.002 &&
           std::fabs(aicc_mc_ref - 210.761) <= 0.002 &&
           std::fabs(aic_mw_ref - 210.64) <= 0.002 &&
           std::fabs(aicc_mw_ref - 211.161) <= 0.002);
  gate("AIC and AICC favor McMW over MW on our fits",
       mw_row && mc_row && mc_row->fit_ok && mw_row->fit_ok &&
           mc_row->aic < mw_row->aic && mc_row->aicc < mw_row->aicc);
  gate("K-S(MW fit) within 0.128 +- 0.005",
       mw_row && mw_row->fit_ok && std::fabs(mw_row->ks - 0.128) <= 0.005);
  gate("K-S(McMW fit) within 0.118 +- 0.005",
       mc_row && mc_row->fit_ok && std::fabs(mc_row->ks - 0.118) <= 0.005);
  if (mc_row && mc_row->fit_ok && std::fabs(mc_row->ks - 0.118) > 0.005) {
    const mcmw::McMWParams ref{0.599, 1.209, 1.063, 0.091, 0.090, 9.169};
    os << "note: the reference K-S 0.118 is not reproducible from the"
          " reference estimates either (K-S there = "
       << mcmw::ks_statistic(ref, data)
       << "); the reference table appears internally inconsistent\n";
  }

  // confidence intervals beside the reported ones (informational)
  os << "\n--- McMW 95% intervals (computed | reported) ---\n";
  static const char* ref_ci[6] = {
      "[0.599, 0.601]", "[1.202, 1.215]", "[1.039, 1.086]",
      "[0.060, 0.121]", "[0.059, 0.121]", "[9.132, 9.205]"};
  const auto arr = mc.params.as_array();
  for (std::size_t k = 0; k < mc.free_indices.size(); ++k) {
    const int i = mc.free_indices[k];
    os << std::left << std::setw(8) << mcmw::parameter_name(i) << std::right
       << std::setprecision(6) << " est " << std::setw(10) << arr[i];
    if (mc.cov_valid && mc.conf_intervals[k].valid)
      os << "  [" << mc.conf_intervals[k].lo << ", " << mc.conf_intervals[k].hi
         << "]";
    else
      os << "  (interval unavailable)";
    os << "  | reported " << ref_ci[i] << "\n";
  }
  os << "(reported intervals/variances are internally inconsistent in the"
        " source and are informational only)\n";

  // plot-ready data files
  const std::string stem =
      o.out_path.empty() ? "mcmw_paper_repro" : o.out_path;
  write_plot_files(stem, data, {"MW", "McMW"}, {mw.params, mc.params},
                   parse_grid(o.grid_spec));
  os << "\nwrote " << stem << "_curves.csv and " << stem << "_ecdf.csv\n";

  int failures = 0;
  for (const auto& g : gates)
    if (!g.pass) ++failures;
  os << "\n" << (gates.size() - failures) << "/" << gates.size()
     << " gates passed\n";
  return failures == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized modified-Weibull lifetime toolkit"};
  app.require_subcommand(1);

  CommonOpts o;
  auto add_common = [&](CLI::App* sub, bool with_data) {
    if (with_data) {
      sub->add_option("--data", o.data_path, "input data file");
      sub->add_flag("--builtin", o.use_builtin,
                    "use the built-in 50-component failure-time data");
    }
    sub->add_option("--model", o.models_csv, "model name(s), comma-separated");
    sub->add_option("--params", o.params_csv,
                    "six values: alpha,gamma,beta,a,b,c");
    sub->add_option("--grid", o.grid_spec, "grid as MIN:MAX:N");
    sub->add_option("--n", o.n, "sample size");
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--starts", o.starts, "multi-start count for fitting");
    sub->add_option("--level", o.level, "confidence level");
    sub->add_option("--format", o.format, "output format: table|json");
    sub->add_option("--out", o.out_path, "output path");
  };

  auto* fit = app.add_subcommand("fit", "maximum-likelihood fit");
  add_common(fit, true);
  auto* comp = app.add_subcommand("compare", "fit several models, rank by AIC");
  add_common(comp, true);
  auto* eval = app.add_subcommand("eval", "evaluate the distribution on a grid");
  add_common(eval, false);
  auto* samp = app.add_subcommand("sample", "inverse-transform sampling");
  add_common(samp, false);
  auto* gof = app.add_subcommand("gof", "goodness-of-fit statistics");
  add_common(gof, true);
  auto* plot = app.add_subcommand("plotdata", "emit plot-ready csv files");
  add_common(plot, true);
  auto* repro =
      app.add_subcommand("paper-repro", "run the full reference reproduction");
  add_common(repro, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (fit->parsed()) return cmd_fit(o);
    if (comp->parsed()) return cmd_compare(o);
    if (eval->parsed()) return cmd_eval(o);
    if (samp->parsed()) return cmd_sample(o);
    if (gof->parsed()) return cmd_gof(o);
    if (plot->parsed()) return cmd_plotdata(o);
    if (repro->parsed()) return cmd_paper_repro(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
