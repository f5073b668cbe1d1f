#pragma once

#include <stdexcept>
#include <string>

namespace gevlab {

/// Weighted-norm evaluation would overflow double range; callers that monitor
/// norms over time catch this and mark the series truncated.
class gevrey_overflow_error : public std::runtime_error {
  public:
    explicit gevrey_overflow_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Solution left the trusted range (NaN coefficients or physical max above the
/// configured threshold). Carries the time at which it was detected.
class blowup_error : public std::runtime_error {
  public:
    blowup_error(const std::string& msg, double t) : std::runtime_error(msg), time(t) {}
    double time;
};

/// Fixed-point iteration expanded instead of contracting.
class iteration_divergence_error : public std::runtime_error {
  public:
    iteration_divergence_error(const std::string& msg, double ratio)
        : std::runtime_error(msg), expansion_ratio(ratio) {}
    double expansion_ratio;
};

/// Config-file problem; message names the offending key and section.
class config_error : public std::runtime_error {
  public:
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gevlab
