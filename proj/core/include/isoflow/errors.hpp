#pragma once

#include <stdexcept>
#include <string>

namespace isoflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or out-of-range scalar arguments.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The parallel map degenerates: c(xi) - kappa s(xi) vanished (focal point).
class SingularParallel : public Error {
 public:
  using Error::Error;
};

/// (F, N) violates the ambient quadric / orthogonality constraints.
class InvalidFrame : public Error {
 public:
  using Error::Error;
};

/// Curvature data that is not an admissible isoparametric hypersurface.
class InvalidSurface : public Error {
 public:
  using Error::Error;
};

/// A family-specific resolver was handed a surface of another family.
class FamilyMismatch : public Error {
 public:
  using Error::Error;
};

/// Step size underflow or step budget exhausted before the focal guard fired.
class IntegrationFailure : public Error {
 public:
  using Error::Error;
};

/// The family has no explicit ambient embedding.
class UnsupportedEmbedding : public Error {
 public:
  using Error::Error;
};

/// A profile does not carry enough information to classify the limit.
class AnalysisIncomplete : public Error {
 public:
  using Error::Error;
};

/// File could not be opened, written or parsed; the message names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace isoflow
