#ifndef HBKIT_ERRORS_HPP
#define HBKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hbkit {

/// Base class of every exception raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HBKIT_DEFINE_ERROR(Name) \
  class Name : public Error {    \
   public:                       \
    using Error::Error;          \
  }

// symcalc
HBKIT_DEFINE_ERROR(UnknownSymbol);
HBKIT_DEFINE_ERROR(NonPolynomialIntegrand);
HBKIT_DEFINE_ERROR(ExpressionError);
HBKIT_DEFINE_ERROR(ChartMismatch);

// geom
HBKIT_DEFINE_ERROR(DegreeOverflow);
HBKIT_DEFINE_ERROR(DegreeUnderflow);
HBKIT_DEFINE_ERROR(UnsupportedDegree);
HBKIT_DEFINE_ERROR(MissingInverse);
HBKIT_DEFINE_ERROR(DegreeMismatch);

// foliation / poisson
HBKIT_DEFINE_ERROR(NotComplementary);
HBKIT_DEFINE_ERROR(NotVertical);
HBKIT_DEFINE_ERROR(NotHorizontal);

// action
HBKIT_DEFINE_ERROR(NonClosedOrbitCoefficients);

// hamcurv
HBKIT_DEFINE_ERROR(NotCasimirResidue);
HBKIT_DEFINE_ERROR(NotCasimir);
HBKIT_DEFINE_ERROR(NotACocycle);
HBKIT_DEFINE_ERROR(PrimitiveMismatch);

// scenario files and reports
HBKIT_DEFINE_ERROR(ParseError);
HBKIT_DEFINE_ERROR(SchemaError);
HBKIT_DEFINE_ERROR(InvariantViolation);
HBKIT_DEFINE_ERROR(UnknownFormat);

#undef HBKIT_DEFINE_ERROR

}  // namespace hbkit

#endif  // HBKIT_ERRORS_HPP
