#ifndef RISOPT_ERRORS_HPP
#define RISOPT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace risopt {

/// Thrown when a phase-shift configuration has the wrong length or
/// entries outside {0,...,2^b-1}.
class InvalidConfigurationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when the effective channel is too ill-conditioned for zero
/// forcing. Optimizers catch this and treat the fitness as -inf.
class SingularChannelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the landscape estimators when a sample has zero variance
/// in one of the correlated series.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by correlation_length when rho(1) == 0.
class UndefinedLengthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace risopt

#endif
