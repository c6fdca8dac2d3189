#ifndef MODCOL_ERROR_HPP
#define MODCOL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace modcol {

// All library failures derive from Error and carry a short machine-readable
// kind tag (e.g. "NoRelationFound") next to the human-readable message.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}

  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

#define MODCOL_DEFINE_ERROR(NAME)                                   \
  class NAME : public Error {                                       \
  public:                                                           \
    explicit NAME(const std::string& msg) : Error(#NAME, msg) {}    \
  }

// arith_core
MODCOL_DEFINE_ERROR(DependentRows);
MODCOL_DEFINE_ERROR(NoRelationFound);
MODCOL_DEFINE_ERROR(NotReal);

// padic
MODCOL_DEFINE_ERROR(InsufficientOrder);
MODCOL_DEFINE_ERROR(NotInDisc);
MODCOL_DEFINE_ERROR(SingularToPrecision);

// modfunc
MODCOL_DEFINE_ERROR(ConvergenceFailure);
MODCOL_DEFINE_ERROR(InsufficientTerms);
MODCOL_DEFINE_ERROR(BasePointMismatch);
MODCOL_DEFINE_ERROR(RankDeficient);
MODCOL_DEFINE_ERROR(VerificationFailed);

// hecke
MODCOL_DEFINE_ERROR(SearchExhausted);
MODCOL_DEFINE_ERROR(BadPrime);

// curves
MODCOL_DEFINE_ERROR(NoSolution);

// integrator
MODCOL_DEFINE_ERROR(SingularUniformizer);
MODCOL_DEFINE_ERROR(ReconstructionFailed);
MODCOL_DEFINE_ERROR(BadHeckeMatrix);

// io_cli
MODCOL_DEFINE_ERROR(ParseError);
MODCOL_DEFINE_ERROR(ValidationError);
MODCOL_DEFINE_ERROR(CoherenceError);
MODCOL_DEFINE_ERROR(MissingHeckeMatrix);
MODCOL_DEFINE_ERROR(NetworkUnavailable);
MODCOL_DEFINE_ERROR(LabelNotFound);

#undef MODCOL_DEFINE_ERROR

} // namespace modcol

#endif
