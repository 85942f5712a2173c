#pragma once

#include <string>
#include <vector>

#include "borelsum/adler.hpp"
#include "borelsum/ambiguity.hpp"
#include "borelsum/analytic_function.hpp"
#include "borelsum/bounds.hpp"
#include "borelsum/contour.hpp"
#include "borelsum/series.hpp"
#include "borelsum/validity.hpp"

namespace borelsum {

// Contour schema:
//   {"segments":[{"kind":"ray","theta":0.0,"length":1.0}
//               |{"kind":"poly","a1":..,"a2":..,"b1":..,"b2":..,"s_end":..}
//               |{"kind":"arc","from_s":..,"to_s":..[,"omega":1.0]}
//               |{"kind":"polyline","points":[[re,im],...]}]}
// Arc start point and radius are inferred from the previous segment's
// endpoint.  All angles radians.
Contour contour_from_json(const std::string& text);
Contour contour_from_json_file(const std::string& path);

// Function schema:
//   {"type":"rational","poles":[[re,im],...],"residues":[[re,im],...],
//    "poly":[[re,im],...]}
// | {"type":"geometric","u0":[re,im]}
// | {"type":"taylor","coeffs":[[re,im],...],"rho":r}
AnalyticFunction function_from_json(const std::string& text);
AnalyticFunction function_from_json_file(const std::string& path);

struct LambdaGridSpec {
  double start = 10.0;
  double stop = 100.0;
  int count = 8;
  bool log_scale = false;
  double arg = 0.0;
};

std::vector<Complex> make_lambda_grid(const LambdaGridSpec& spec);

// Deterministic shortest round-trip double formatting ("%.17g").
std::string format_double(double x);

// CSV writers (column layouts fixed per module contract).
std::string quad_results_csv(const std::vector<Complex>& lambdas,
                             const std::vector<QuadResult>& results);
std::string coeffs_csv(const AsymptoticSeries& series);
std::string ambiguity_csv(const AmbiguityReport& report);
std::string remainder_csv(const RemainderReport& report);

// JSON writers.
std::string validity_report_json(const ValidityReport& report);
std::string certificate_report_json(const CertificateReport& report);
std::string ambiguity_summary_json(const AmbiguityReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace borelsum
