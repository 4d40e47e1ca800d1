#ifndef QSOBOLEV_ERRORS_HPP
#define QSOBOLEV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qsobolev {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

struct BackendMismatch : Error {
  BackendMismatch() : Error("mixed exact/approx scalars in one operation") {}
};

struct PoleAtZ : Error {
  explicit PoleAtZ(const std::string& what = "denominator vanishes at the requested Z value")
      : Error(what) {}
};

struct IndexOutOfRange : Error {
  explicit IndexOutOfRange(const std::string& what) : Error(what) {}
};

struct ToleranceNotPositive : Error {
  ToleranceNotPositive() : Error("tolerance must be positive") {}
};

struct ExactDivisionFailed : Error {
  explicit ExactDivisionFailed(const std::string& what) : Error(what) {}
};

struct SingularGram : Error {
  explicit SingularGram(const std::string& what) : Error(what) {}
};

struct DegenerateConnection : Error {
  explicit DegenerateConnection(const std::string& what) : Error(what) {}
};

struct DegenerateXi : Error {
  explicit DegenerateXi(const std::string& what) : Error(what) {}
};

struct DegenerateTTRR : Error {
  explicit DegenerateTTRR(const std::string& what) : Error(what) {}
};

struct ZeroTailDenominator : Error {
  explicit ZeroTailDenominator(const std::string& what) : Error(what) {}
};

struct UndefinedAuxiliary : Error {
  explicit UndefinedAuxiliary(const std::string& what) : Error(what) {}
};

}  // namespace qsobolev

#endif
