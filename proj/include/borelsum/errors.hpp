#pragma once

#include <stdexcept>
#include <string>

namespace borelsum {

// Base class for every toolkit error. code() is a stable, module-qualified
// identifier ("quad.no_convergence", ...) used by the CLI when surfacing
// failures; what() carries the human-readable detail.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define BORELSUM_ERROR(Name, code_str)                                   \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(code_str, what) {}    \
  }

// contour
BORELSUM_ERROR(EmptySpec, "contour.empty_spec");
BORELSUM_ERROR(JointDiscontinuity, "contour.joint_discontinuity");
BORELSUM_ERROR(OriginRevisit, "contour.origin_revisit");
BORELSUM_ERROR(WindingFailure, "contour.winding_failure");
BORELSUM_ERROR(CutoffOutOfRange, "contour.cutoff_out_of_range");

// quad
BORELSUM_ERROR(NoConvergence, "quad.no_convergence");
BORELSUM_ERROR(PoleOnContour, "quad.pole_on_contour");

// series
BORELSUM_ERROR(EvaluatorDomain, "series.evaluator_domain");
BORELSUM_ERROR(EvaluatorMismatch, "series.evaluator_mismatch");
BORELSUM_ERROR(IllConditioned, "series.ill_conditioned");

// bounds
BORELSUM_ERROR(OutOfSector, "bounds.out_of_sector");
BORELSUM_ERROR(DeltaOutOfRange, "bounds.delta_out_of_range");

// ambiguity
BORELSUM_ERROR(SectorMismatch, "ambiguity.sector_mismatch");

// adler
BORELSUM_ERROR(NonSimplePole, "adler.non_simple_pole");
BORELSUM_ERROR(ExtrapolationDivergence, "adler.extrapolation_divergence");
BORELSUM_ERROR(InsufficientOrders, "adler.insufficient_orders");
BORELSUM_ERROR(NonPositiveBound, "adler.non_positive_bound");

// io
BORELSUM_ERROR(ConfigParse, "io.config_parse");
BORELSUM_ERROR(FileIO, "io.file_io");

#undef BORELSUM_ERROR

}  // namespace borelsum
