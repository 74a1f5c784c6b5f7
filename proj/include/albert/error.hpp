#pragma once

#include <stdexcept>
#include <string>

namespace albert {

enum class Errc {
  SpecMismatch,
  NotInvertible,
  MapUndefinedForSpec,
  InvalidSpec,
  AlgebraMismatch,
  NotHermitian,
  NotAdmissible,
  AxiomFailure,
  DimensionMismatch,
  DimensionTooLarge,
  CertificationFailure,
  HypothesisViolation,
  RestrictionNotHomothety,
  NotInvariant,
  NoDecomposition,
  NotAutomorphism,
  UnexpectedDimension,
  ConfigError,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

} // namespace albert
