#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "borelsum/adler.hpp"
#include "borelsum/ambiguity.hpp"
#include "borelsum/bounds.hpp"
#include "borelsum/errors.hpp"
#include "borelsum/io.hpp"
#include "borelsum/quadrature.hpp"
#include "borelsum/series.hpp"
#include "borelsum/validity.hpp"

namespace {

using namespace borelsum;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;    // hypotheses violated / contour rejected
constexpr int kExitNumerical = 2;  // numerics, config or I/O failed

struct CommonOpts {
  std::string contour_file;
  std::string function_file;
  std::string out;
  double alpha = 1.0;
  double beta = 1.0;
  double epsilon = 0.1;
  LambdaGridSpec grid;
  ToleranceSpec tol;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
};

void add_tolerance_flags(CLI::App* cmd, ToleranceSpec& tol) {
  cmd->add_option("--atol", tol.atol, "absolute tolerance");
  cmd->add_option("--rtol", tol.rtol, "relative tolerance");
  cmd->add_option("--max-evals", tol.max_evals, "evaluation budget");
}

void add_grid_flags(CLI::App* cmd, LambdaGridSpec& grid) {
  cmd->add_option("--lambda-start", grid.start, "grid start magnitude");
  cmd->add_option("--lambda-stop", grid.stop, "grid stop magnitude");
  cmd->add_option("--lambda-count", grid.count, "grid size");
  cmd->add_option_function<std::string>(
      "--lambda-scale",
      [&grid](const std::string& v) {
        if (v == "log")
          grid.log_scale = true;
        else if (v == "linear")
          grid.log_scale = false;
        else
          throw CLI::ValidationError("--lambda-scale must be linear or log");
      },
      "linear|log");
  cmd->add_option("--lambda-arg", grid.arg, "arg(lambda) in radians");
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_text_file(out_path, content);
}

int run_validate(const CommonOpts& opt, int lemma, std::optional<double> s1) {
  const Contour contour = contour_from_json_file(opt.contour_file);
  const AnalyticFunction f = function_from_json_file(opt.function_file);
  ValidityReport report;
  switch (lemma) {
    case 1: report = validate_watson(contour, f, opt.epsilon); break;
    case 2:
      report = validate_lemma2(contour, f, opt.alpha, opt.beta, opt.epsilon);
      break;
    case 3: report = validate_lemma3(contour, f, opt.epsilon, s1); break;
    default: throw ConfigParse("--lemma must be 1, 2 or 3");
  }
  emit(opt.out, validity_report_json(report));
  return report.valid ? kExitOk : kExitInvalid;
}

int run_sum(const CommonOpts& opt, double a, double b) {
  const Contour contour = contour_from_json_file(opt.contour_file);
  const AnalyticFunction f = function_from_json_file(opt.function_file);
  const std::vector<Complex> lambdas = make_lambda_grid(opt.grid);
  const double hi = b > 0.0 ? b : contour.length();
  std::vector<QuadResult> results;
  if (a == 0.0 && hi == contour.length()) {
    results = lambda_scan(contour, f, opt.alpha, opt.beta, lambdas, opt.tol,
                          opt.jobs);
  } else {
    results.reserve(lambdas.size());
    for (const Complex& lambda : lambdas)
      results.push_back(
          integrate(contour, f, lambda, opt.alpha, opt.beta, a, hi, opt.tol));
  }
  emit(opt.out, quad_results_csv(lambdas, results));
  for (const QuadResult& r : results)
    if (!r.converged) return kExitNumerical;
  return kExitOk;
}

int run_coeffs(const CommonOpts& opt, int n) {
  const AnalyticFunction f = function_from_json_file(opt.function_file);
  const AsymptoticSeries series =
      asymptotic_coefficients(f, opt.alpha, opt.beta, n);
  emit(opt.out, coeffs_csv(series));
  return kExitOk;
}

int run_remainders(const CommonOpts& opt, int n) {
  const Contour contour = contour_from_json_file(opt.contour_file);
  const AnalyticFunction f = function_from_json_file(opt.function_file);
  const std::vector<Complex> lambdas = make_lambda_grid(opt.grid);
  const RemainderReport report =
      remainder_scan(contour, f, opt.alpha, opt.beta, n, lambdas, opt.tol);
  emit(opt.out, remainder_csv(report));
  json summary = {{"N", report.N},
                  {"slope_fit", report.slope_fit},
                  {"passes", report.passes}};
  std::cerr << summary.dump() << "\n";
  return report.passes ? kExitOk : kExitInvalid;
}

int run_certify(const CommonOpts& opt, int n_max) {
  const Contour contour = contour_from_json_file(opt.contour_file);
  const AnalyticFunction f = function_from_json_file(opt.function_file);
  const std::vector<Complex> lambdas = make_lambda_grid(opt.grid);
  const CertificateReport report =
      certify(contour, f, opt.epsilon, n_max, lambdas, opt.tol);
  emit(opt.out, certificate_report_json(report));
  return report.pass ? kExitOk : kExitInvalid;
}

int run_compare(const CommonOpts& opt, const std::string& contour_b,
                const std::string& summary_out) {
  const Contour ca = contour_from_json_file(opt.contour_file);
  const Contour cb = contour_from_json_file(contour_b);
  const AnalyticFunction f = function_from_json_file(opt.function_file);
  const std::vector<Complex> lambdas = make_lambda_grid(opt.grid);
  const AmbiguityReport report =
      compare_contours(ca, cb, f, opt.alpha, opt.beta, lambdas, opt.tol,
                       opt.epsilon, opt.contour_file, contour_b);
  emit(opt.out, ambiguity_csv(report));
  const std::string summary = ambiguity_summary_json(report);
  if (!summary_out.empty())
    write_text_file(summary_out, summary);
  else
    std::cerr << summary;
  return kExitOk;
}

int run_adler(const std::string& config_file, const std::string& out,
              const ToleranceSpec& tol) {
  json cfg;
  try {
    cfg = json::parse(read_text_file(config_file));
  } catch (const json::parse_error& e) {
    throw ConfigParse(std::string("adler config: ") + e.what());
  }
  if (!cfg.contains("borel")) throw ConfigParse("adler config needs \"borel\"");

  BorelModel model;
  model.function = function_from_json(cfg["borel"].dump());
  model.beta0 = cfg.value("beta0", 2.25);
  const auto& taylor = model.function->taylor();
  model.b.assign(taylor.size(), 0.0);
  for (std::size_t i = 0; i < taylor.size(); ++i)
    model.b[i] = taylor[i].real();

  if (!cfg.contains("a_grid") || !cfg["a_grid"].is_array() ||
      cfg["a_grid"].empty())
    throw ConfigParse("adler config needs a nonempty \"a_grid\"");
  std::vector<double> a_grid;
  for (const auto& v : cfg["a_grid"]) a_grid.push_back(v.get<double>());

  const std::string prescription = cfg.value("prescription", "pv");

  // Truncate the nominally infinite path where the integrand has decayed
  // below every tolerance in play.
  double lambda_min = std::numeric_limits<double>::infinity();
  for (double a : a_grid)
    lambda_min = std::min(lambda_min, 1.0 / (model.beta0 * a));
  const double c = cfg.value("c", 40.0 / lambda_min);

  const std::vector<double> D = perturbative_coefficients(model);

  std::optional<Contour> file_contour;
  if (prescription == "contour-file") {
    if (!cfg.contains("contour"))
      throw ConfigParse("prescription contour-file needs \"contour\" path");
    file_contour = contour_from_json_file(cfg["contour"].get<std::string>());
  }

  std::ostringstream ss;
  ss << "a,D_pv_re,D_pv_im,D_upper_re,D_upper_im,lip_gap_abs,partial_sum_N3\n";
  for (double a : a_grid) {
    Complex value, upper;
    double lip_gap = 0.0;
    if (prescription == "pv") {
      const PvResult pv = pv_resum(model, c, CouplingPoint{a}, tol);
      value = pv.pv;
      upper = pv.upper;
      lip_gap = pv.lip_gap_abs;
    } else if (prescription == "ray") {
      std::vector<Segment> segs;
      segs.push_back(make_ray(0.0, c));
      const Contour ray(std::move(segs));
      value = resum(model, ray, CouplingPoint{a}, tol);
      upper = value;
    } else if (prescription == "contour-file") {
      value = resum(model, *file_contour, CouplingPoint{a}, tol);
      upper = value;
    } else {
      throw ConfigParse("unknown prescription \"" + prescription + "\"");
    }
    double partial3 = 0.0;
    for (std::size_t n = 1; n <= 3 && n <= D.size(); ++n)
      partial3 += D[n - 1] * std::pow(a, static_cast<double>(n));
    ss << format_double(a) << ',' << format_double(value.real()) << ','
       << format_double(value.imag()) << ',' << format_double(upper.real())
       << ',' << format_double(upper.imag()) << ',' << format_double(lip_gap)
       << ',' << format_double(partial3) << '\n';
  }
  emit(out, ss.str());
  return kExitOk;
}

int run_fig1(double a1, double b1, int samples, const std::string& out) {
  const Contour contour = fig1_contour(a1, b1);
  std::ostringstream ss;
  ss << "s,re_g,im_g\n";
  for (int i = 0; i <= samples; ++i) {
    const double s = contour.length() * i / static_cast<double>(samples);
    const Complex g = contour.point(s);
    ss << format_double(s) << ',' << format_double(g.real()) << ','
       << format_double(g.imag()) << '\n';
  }
  emit(out, ss.str());
  std::cerr << "a2=" << format_double(fig1_a2(a1, b1))
            << " b2=" << format_double(fig1_b2(a1, b1)) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Laplace-Borel contour resummation toolkit"};
  app.require_subcommand(1);

  CommonOpts opt;

  auto* validate = app.add_subcommand("validate", "check lemma hypotheses");
  int lemma = 3;
  std::optional<double> s1_opt;
  double s1_value = 0.0;
  validate->add_option("--contour", opt.contour_file)->required();
  validate->add_option("--function", opt.function_file)->required();
  validate->add_option("--epsilon", opt.epsilon);
  validate->add_option("--lemma", lemma, "1 (Watson), 2 or 3");
  validate->add_option("--alpha", opt.alpha);
  validate->add_option("--beta", opt.beta);
  auto* s1_flag = validate->add_option("--s1", s1_value, "inner cutoff");
  validate->add_option("--out", opt.out);

  auto* sum = app.add_subcommand("sum", "evaluate Phi over a lambda grid");
  double sum_a = 0.0, sum_b = -1.0;
  sum->add_option("--contour", opt.contour_file)->required();
  sum->add_option("--function", opt.function_file)->required();
  sum->add_option("--alpha", opt.alpha);
  sum->add_option("--beta", opt.beta);
  sum->add_option("--a", sum_a, "lower parameter limit");
  sum->add_option("--b", sum_b, "upper parameter limit (default c)");
  sum->add_option("--jobs", opt.jobs, "parallel lambda evaluations");
  add_grid_flags(sum, opt.grid);
  add_tolerance_flags(sum, opt.tol);
  sum->add_option("--out", opt.out);

  auto* coeffs = app.add_subcommand("coeffs", "asymptotic coefficients");
  int coeffs_n = 8;
  coeffs->add_option("--function", opt.function_file)->required();
  coeffs->add_option("--alpha", opt.alpha);
  coeffs->add_option("--beta", opt.beta);
  coeffs->add_option("--n", coeffs_n, "highest order");
  coeffs->add_option("--out", opt.out);

  auto* remainders = app.add_subcommand("remainders", "remainder decay scan");
  int rem_n = 2;
  remainders->add_option("--contour", opt.contour_file)->required();
  remainders->add_option("--function", opt.function_file)->required();
  remainders->add_option("--alpha", opt.alpha);
  remainders->add_option("--beta", opt.beta);
  remainders->add_option("--n", rem_n, "truncation order N");
  add_grid_flags(remainders, opt.grid);
  add_tolerance_flags(remainders, opt.tol);
  remainders->add_option("--out", opt.out);

  auto* certify_cmd = app.add_subcommand("certify", "remainder bound audit");
  int n_max = 4;
  certify_cmd->add_option("--contour", opt.contour_file)->required();
  certify_cmd->add_option("--function", opt.function_file)->required();
  certify_cmd->add_option("--epsilon", opt.epsilon);
  certify_cmd->add_option("--n-max", n_max);
  add_grid_flags(certify_cmd, opt.grid);
  add_tolerance_flags(certify_cmd, opt.tol);
  certify_cmd->add_option("--out", opt.out);

  auto* compare = app.add_subcommand("compare", "contour ambiguity report");
  std::string contour_b, summary_out;
  compare->add_option("--contour-a", opt.contour_file)->required();
  compare->add_option("--contour-b", contour_b)->required();
  compare->add_option("--function", opt.function_file)->required();
  compare->add_option("--alpha", opt.alpha);
  compare->add_option("--beta", opt.beta);
  compare->add_option("--epsilon", opt.epsilon);
  add_grid_flags(compare, opt.grid);
  add_tolerance_flags(compare, opt.tol);
  compare->add_option("--out", opt.out);
  compare->add_option("--summary-out", summary_out);

  auto* adler = app.add_subcommand("adler", "Borel resummation demo");
  std::string adler_config;
  adler->add_option("--config", adler_config)->required();
  add_tolerance_flags(adler, opt.tol);
  adler->add_option("--out", opt.out);

  auto* fig1 = app.add_subcommand("fig1", "emit the worked-example contour");
  double a1 = 0.1, b1 = 0.1;
  int samples = 600;
  fig1->add_option("--a1", a1);
  fig1->add_option("--b1", b1);
  fig1->add_option("--samples", samples);
  fig1->add_option("--out", opt.out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) {
      if (s1_flag->count() > 0) s1_opt = s1_value;
      return run_validate(opt, lemma, s1_opt);
    }
    if (sum->parsed()) return run_sum(opt, sum_a, sum_b);
    if (coeffs->parsed()) return run_coeffs(opt, coeffs_n);
    if (remainders->parsed()) return run_remainders(opt, rem_n);
    if (certify_cmd->parsed()) return run_certify(opt, n_max);
    if (compare->parsed()) return run_compare(opt, contour_b, summary_out);
    if (adler->parsed()) return run_adler(adler_config, opt.out, opt.tol);
    if (fig1->parsed()) return run_fig1(a1, b1, samples, opt.out);
  } catch (const Error& e) {
    std::cerr << "error [" << e.code() << "]: " << e.what() << "\n";
    const bool validation = e.code().starts_with("contour.") ||
                            e.code().starts_with("ambiguity.");
    return validation ? kExitInvalid : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
