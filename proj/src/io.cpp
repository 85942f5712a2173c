#include "borelsum/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "borelsum/errors.hpp"

namespace borelsum {

namespace {

using nlohmann::json;

Complex complex_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ConfigParse(std::string(what) + ": expected [re, im]");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

std::vector<Complex> complex_list(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigParse(std::string(what) + ": expected array");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (const auto& e : j) out.push_back(complex_from_json(e, what));
  return out;
}

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileIO("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FileIO("cannot open " + path + " for writing");
  out << content;
  if (!out) throw FileIO("write failed for " + path);
}

Contour contour_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParse(std::string("contour JSON: ") + e.what());
  }
  if (!root.contains("segments") || !root["segments"].is_array() ||
      root["segments"].empty())
    throw EmptySpec("contour JSON needs a nonempty \"segments\" array");

  std::vector<Segment> segs;
  double s_cursor = 0.0;
  Complex end_point = 0.0;
  for (const auto& js : root["segments"]) {
    const std::string kind = js.value("kind", "");
    if (kind == "ray") {
      if (!js.contains("theta") || !js.contains("length"))
        throw ConfigParse("ray segment needs theta and length");
      const double theta = js["theta"].get<double>();
      const double length = js["length"].get<double>();
      segs.push_back(make_ray(theta, length, end_point, s_cursor));
    } else if (kind == "poly") {
      for (const char* key : {"a1", "a2", "b1", "b2", "s_end"})
        if (!js.contains(key))
          throw ConfigParse(std::string("poly segment needs ") + key);
      segs.push_back(make_poly(js["a1"].get<double>(), js["a2"].get<double>(),
                               js["b1"].get<double>(), js["b2"].get<double>(),
                               s_cursor, js["s_end"].get<double>()));
    } else if (kind == "arc") {
      if (!js.contains("from_s") || !js.contains("to_s"))
        throw ConfigParse("arc segment needs from_s and to_s");
      const double from_s = js["from_s"].get<double>();
      if (std::abs(from_s - s_cursor) > 1e-12)
        throw JointDiscontinuity("arc from_s does not match previous segment");
      segs.push_back(make_arc(end_point, from_s, js["to_s"].get<double>(),
                              js.value("omega", 1.0)));
    } else if (kind == "polyline") {
      if (!js.contains("points"))
        throw ConfigParse("polyline segment needs points");
      segs.push_back(
          make_polyline(complex_list(js["points"], "polyline points"),
                        s_cursor));
    } else {
      throw ConfigParse("unknown segment kind \"" + kind + "\"");
    }
    s_cursor = segs.back().s_end();
    end_point = segs.back().end_point();
  }
  return Contour(std::move(segs));
}

Contour contour_from_json_file(const std::string& path) {
  return contour_from_json(read_text_file(path));
}

AnalyticFunction function_from_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigParse(std::string("function JSON: ") + e.what());
  }
  const std::string type = root.value("type", "");
  if (type == "rational") {
    std::vector<Complex> poles, residues, poly;
    if (root.contains("poles")) poles = complex_list(root["poles"], "poles");
    if (root.contains("residues"))
      residues = complex_list(root["residues"], "residues");
    if (root.contains("poly")) poly = complex_list(root["poly"], "poly");
    return AnalyticFunction::rational(std::move(poles), std::move(residues),
                                      std::move(poly));
  }
  if (type == "geometric") {
    if (!root.contains("u0")) throw ConfigParse("geometric model needs u0");
    return AnalyticFunction::geometric(complex_from_json(root["u0"], "u0"));
  }
  if (type == "taylor") {
    if (!root.contains("coeffs") || !root.contains("rho"))
      throw ConfigParse("taylor model needs coeffs and rho");
    return AnalyticFunction::taylor_only(
        complex_list(root["coeffs"], "coeffs"), root["rho"].get<double>());
  }
  throw ConfigParse("unknown function type \"" + type + "\"");
}

AnalyticFunction function_from_json_file(const std::string& path) {
  return function_from_json(read_text_file(path));
}

std::vector<Complex> make_lambda_grid(const LambdaGridSpec& spec) {
  if (spec.count < 1) throw ConfigParse("lambda grid needs count >= 1");
  if (!(spec.start > 0.0) || !(spec.stop >= spec.start))
    throw ConfigParse("lambda grid needs 0 < start <= stop");
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    double mag;
    if (spec.count == 1) {
      mag = spec.start;
    } else if (spec.log_scale) {
      const double t = static_cast<double>(i) / (spec.count - 1);
      mag = spec.start * std::pow(spec.stop / spec.start, t);
    } else {
      const double t = static_cast<double>(i) / (spec.count - 1);
      mag = spec.start + t * (spec.stop - spec.start);
    }
    out.push_back(std::polar(mag, spec.arg));
  }
  return out;
}

std::string quad_results_csv(const std::vector<Complex>& lambdas,
                             const std::vector<QuadResult>& results) {
  std::ostringstream ss;
  ss << "lambda_re,lambda_im,phi_re,phi_im,abs_err,evals,converged\n";
  for (std::size_t i = 0; i < results.size(); ++i) {
    const QuadResult& r = results[i];
    ss << format_double(lambdas[i].real()) << ','
       << format_double(lambdas[i].imag()) << ','
       << format_double(r.value.real()) << ',' << format_double(r.value.imag())
       << ',' << format_double(r.abs_error_estimate) << ',' << r.evaluations
       << ',' << (r.converged ? 1 : 0) << '\n';
  }
  return ss.str();
}

std::string coeffs_csv(const AsymptoticSeries& series) {
  std::ostringstream ss;
  ss << "k,ck_re,ck_im,log10_abs_ck\n";
  for (std::size_t k = 0; k < series.coeffs.size(); ++k) {
    const GammaCoefficient& ck = series.coeffs[k];
    const double log10_abs = ck.log_abs / std::log(10.0);
    ss << k << ',' << format_double(ck.value.real()) << ','
       << format_double(ck.value.imag()) << ',' << format_double(log10_abs)
       << '\n';
  }
  return ss.str();
}

std::string ambiguity_csv(const AmbiguityReport& report) {
  std::ostringstream ss;
  ss << "lambda_abs,delta_abs,envelope_fit\n";
  for (std::size_t i = 0; i < report.lambda_grid.size(); ++i) {
    const double al = std::abs(report.lambda_grid[i]);
    const double envelope =
        report.noise_floor ? 0.0
                           : std::exp(report.fit_logC - report.fit_rate * al);
    ss << format_double(al) << ',' << format_double(std::abs(report.delta[i]))
       << ',' << format_double(envelope) << '\n';
  }
  return ss.str();
}

std::string remainder_csv(const RemainderReport& report) {
  std::ostringstream ss;
  ss << "lambda_re,lambda_im,r_re,r_im,abs_r,scaled\n";
  for (std::size_t i = 0; i < report.lambda_samples.size(); ++i) {
    ss << format_double(report.lambda_samples[i].real()) << ','
       << format_double(report.lambda_samples[i].imag()) << ','
       << format_double(report.remainders[i].real()) << ','
       << format_double(report.remainders[i].imag()) << ','
       << format_double(std::abs(report.remainders[i])) << ','
       << format_double(report.scaled[i]) << '\n';
  }
  return ss.str();
}

std::string validity_report_json(const ValidityReport& report) {
  json j;
  j["lemma"] = lemma_name(report.lemma);
  j["valid"] = report.valid;
  j["epsilon"] = report.epsilon;
  j["A"] = report.A;
  j["B"] = report.B;
  j["sector"] = {{"arg_min", report.sector.arg_min},
                 {"arg_max", report.sector.arg_max},
                 {"epsilon", report.sector.epsilon},
                 {"empty", report.sector.empty()}};
  j["s1"] = report.s1;
  j["rho"] = report.rho;
  j["eta"] = report.eta;
  j["K1"] = report.K1;
  j["K2"] = report.K2;
  j["gamma1"] = report.gamma1;
  j["gamma2"] = report.gamma2;
  j["failures"] = report.failures;
  return j.dump(2) + "\n";
}

std::string certificate_report_json(const CertificateReport& report) {
  json j;
  j["pass"] = report.pass;
  j["validity"] = json::parse(validity_report_json(report.validity));
  j["certificate"] = {{"K1", report.cert.K1},
                      {"K2", report.cert.K2},
                      {"eta", report.cert.eta},
                      {"s1", report.cert.s1},
                      {"c", report.cert.c},
                      {"rho", report.cert.rho},
                      {"epsilon", report.cert.epsilon},
                      {"delta", report.cert.delta},
                      {"g_s1", complex_to_json(report.cert.g_s1)},
                      {"C_N", report.cert.C_N}};
  auto rows_to_json = [](const std::vector<CertificateRow>& rows,
                         const char* index_name) {
    json arr = json::array();
    for (const CertificateRow& r : rows) {
      arr.push_back({{index_name, r.index},
                     {"lambda", complex_to_json(r.lambda)},
                     {"measured", r.measured},
                     {"envelope", r.envelope},
                     {"ok", r.ok}});
    }
    return arr;
  };
  j["families"] = {{"phi_tail", rows_to_json(report.tail_rows, "k")},
                   {"ik_tail", rows_to_json(report.ik_rows, "k")},
                   {"taylor_remainder", rows_to_json(report.taylor_rows, "N")}};
  json ident = json::array();
  for (const IdentityRow& r : report.identity_rows)
    ident.push_back({{"N", r.N},
                     {"lambda", complex_to_json(r.lambda)},
                     {"residual_rel", r.residual_rel},
                     {"ok", r.ok}});
  j["identity"] = ident;
  return j.dump(2) + "\n";
}

std::string ambiguity_summary_json(const AmbiguityReport& report) {
  json j;
  j["contour_a"] = report.contour_a;
  j["contour_b"] = report.contour_b;
  j["logC"] = report.fit_logC;
  j["rate"] = report.fit_rate;
  j["rms"] = report.fit_rms;
  j["noise_floor"] = report.noise_floor;
  j["shared_coeffs_checked"] = report.shared_coeffs_checked;
  return j.dump(2) + "\n";
}

}  // namespace borelsum
