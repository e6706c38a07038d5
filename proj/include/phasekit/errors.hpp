#ifndef PHASEKIT_ERRORS_HPP
#define PHASEKIT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace phasekit {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ode
struct StepSizeUnderflow : Error { using Error::Error; };
struct NoEvent : Error { using Error::Error; };

// limit_cycle
struct NoCycle : Error { using Error::Error; };
struct NonTransversal : Error { using Error::Error; };
struct DegeneratePoint : Error { using Error::Error; };
struct NonMonotone : Error { using Error::Error; };
struct FoldNotFound : Error { using Error::Error; };
struct SlowFlowZero : Error { using Error::Error; };

// prc
struct AdjointDivergence : Error { using Error::Error; };

// phase_reduction
struct GridMismatch : Error { using Error::Error; };

// models
struct WidthTooLarge : Error { using Error::Error; };

// cli
struct ConfigError : Error { using Error::Error; };
struct PipelineError : Error { using Error::Error; };

}  // namespace phasekit

#endif
