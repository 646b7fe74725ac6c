#pragma once

#include <stdexcept>

namespace qcorr {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct TraceNotOne : Error { using Error::Error; };
struct NotPSD : Error { using Error::Error; };
struct ParamOutOfRange : Error { using Error::Error; };
struct NegativeD : Error { using Error::Error; };
struct Unphysical : Error { using Error::Error; };
struct UnsupportedFamily : Error { using Error::Error; };
struct NotXForm : Error { using Error::Error; };
struct OptimizerFailure : Error { using Error::Error; };

}  // namespace qcorr
