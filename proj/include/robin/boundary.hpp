#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace robin {

enum class BCKind { Neumann, Robin, Dirichlet };

// Boundary condition of -Delta on an interval or cuboid. Robin carries a
// strictly positive, finite parameter beta; Neumann is the beta -> 0 limit
// and Dirichlet the beta -> infinity limit, both handled by closed forms
// rather than by extreme beta values.
class BoundaryCondition {
 public:
  static BoundaryCondition neumann() { return BoundaryCondition(BCKind::Neumann, 0.0); }
  static BoundaryCondition dirichlet() {
    return BoundaryCondition(BCKind::Dirichlet, std::numeric_limits<double>::infinity());
  }
  static BoundaryCondition robin(double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta))
      throw std::invalid_argument("Robin parameter must be finite and > 0, got " +
                                  std::to_string(beta));
    return BoundaryCondition(BCKind::Robin, beta);
  }

  BCKind kind() const { return kind_; }
  bool is_neumann() const { return kind_ == BCKind::Neumann; }
  bool is_robin() const { return kind_ == BCKind::Robin; }
  bool is_dirichlet() const { return kind_ == BCKind::Dirichlet; }

  double beta() const {
    if (kind_ != BCKind::Robin)
      throw std::logic_error("beta() is only defined for Robin conditions");
    return beta_;
  }

  std::string name() const {
    switch (kind_) {
      case BCKind::Neumann: return "neumann";
      case BCKind::Dirichlet: return "dirichlet";
      default: return "robin";
    }
  }

 private:
  BoundaryCondition(BCKind kind, double beta) : kind_(kind), beta_(beta) {}
  BCKind kind_;
  double beta_;
};

}  // namespace robin
