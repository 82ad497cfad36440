#pragma once

#include <stdexcept>
#include <string>

namespace skewps {

// Every failure carries a short kind tag so reports and bindings can match on it.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define SKEWPS_ERROR(Name)                                              \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(#Name, what) {}      \
  };

SKEWPS_ERROR(NotAUnit)
SKEWPS_ERROR(NotPiEquivariant)
SKEWPS_ERROR(NotAnAutomorphism)
SKEWPS_ERROR(BadDegree)
SKEWPS_ERROR(PrecisionTooLow)
SKEWPS_ERROR(NotPPower)
SKEWPS_ERROR(HypothesisFail)
SKEWPS_ERROR(DatumMismatch)
SKEWPS_ERROR(UnboundedTail)
SKEWPS_ERROR(NoConvergence)
SKEWPS_ERROR(NotTriangular)
SKEWPS_ERROR(CommutationFail)
SKEWPS_ERROR(PrecisionExhausted)
SKEWPS_ERROR(NotSigmaInvariant)
SKEWPS_ERROR(ZeroIdeal)
SKEWPS_ERROR(BaseNotPrime)
SKEWPS_ERROR(TooLarge)
SKEWPS_ERROR(CertificationFail)
SKEWPS_ERROR(NoCentralElement)
SKEWPS_ERROR(RootNotFound)
SKEWPS_ERROR(NotCentralModJ)
SKEWPS_ERROR(NotCoprime)
SKEWPS_ERROR(NoContraction)
SKEWPS_ERROR(ConfigError)
SKEWPS_ERROR(InstanceError)
SKEWPS_ERROR(Unsupported)

#undef SKEWPS_ERROR

}  // namespace skewps
