#pragma once

#include <stdexcept>
#include <string>

namespace robin {

// Root finder ran out of iterations. Carries the last enclosing bracket.
class convergence_error : public std::runtime_error {
 public:
  convergence_error(const std::string& what, double lo, double hi)
      : std::runtime_error(what + " [last bracket: " + std::to_string(lo) +
                           ", " + std::to_string(hi) + "]"),
        lo_(lo),
        hi_(hi) {}

  double bracket_lo() const { return lo_; }
  double bracket_hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

// A lattice enumeration would exceed the configured term cap.
class capacity_error : public std::runtime_error {
 public:
  capacity_error(const std::string& what, double estimated_terms, double cap)
      : std::runtime_error(what + " (estimated " +
                           std::to_string(estimated_terms) + " terms, cap " +
                           std::to_string(cap) + ")"),
        estimated_(estimated_terms),
        cap_(cap) {}

  double estimated_terms() const { return estimated_; }
  double cap() const { return cap_; }

 private:
  double estimated_;
  double cap_;
};

}  // namespace robin
