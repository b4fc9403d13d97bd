#pragma once

// Checkers for the three uncertainty inequalities:
//   heisenberg  U(rho,R) U(rho,S)              >= a(1-a) |Tr rho [R,S]|^2
//   product     UN(phi (x) I) UN(psi (x) I)     >= sum_k L_k^2 + D^2
//   sum         UN(phi (x) I) + UN(psi (x) I)   >= 2 sum_k L_k + 2 D
// and the closed-form curves of the two Werner families.

#include <map>
#include <string>
#include <vector>

#include "skewq/linalg.hpp"
#include "skewq/skew.hpp"

namespace skewq {

inline constexpr double kExactBoundTol = 1e-9;   // D known analytically (or not needed)
inline constexpr double kOracleBoundTol = 1e-6;  // D from the qubit grid oracle

struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // lhs - rhs
  double tolerance = 0.0;
  bool holds = false;
  // Named scalar terms: sum_L, sum_L_sq, D_tilde, UN_phi, UN_psi and the
  // intermediate sums of the product-bound derivation.
  std::map<std::string, double> terms;
  std::vector<double> per_k_L;
  std::vector<double> per_k_UN_phi;
  std::vector<double> per_k_UN_psi;
};

BoundReport heisenberg_type_check(const DensityMatrix& rho, const HermitianOperator& r,
                                  const HermitianOperator& s, double alpha,
                                  double tol = kExactBoundTol);

// `d_tilde` is supplied by the caller (oracle, optimizer or analytic value).
BoundReport product_bound_check(const BipartiteDensityMatrix& rho, const ProjectiveBasis& phi,
                                const ProjectiveBasis& psi, double alpha, double d_tilde,
                                double tol = kExactBoundTol);

BoundReport sum_bound_check(const BipartiteDensityMatrix& rho, const ProjectiveBasis& phi,
                            const ProjectiveBasis& psi, double alpha, double d_tilde,
                            double tol = kExactBoundTol);

enum class BoundSide { product, sum };

struct SidePair {
  double lhs = 0.0;
  double rhs = 0.0;
};

// Closed forms for example 1 (swap-Werner, p in [-1, 1]) and example 3
// (isotropic Werner, p in [0, 1]) with sigma_z / sigma_x measurements.
SidePair example_closed_forms(int example_id, BoundSide side, double p, double alpha);

// The same expressions transcribed literally, e.g. (2-p)/12 - T/24. They lose
// about 1e-17 absolute accuracy to cancellation where the bracket vanishes,
// which the square roots in the sum form amplify to ~1e-8.
SidePair example_closed_forms_literal(int example_id, BoundSide side, double p, double alpha);

// Closed-form D_tilde of the two Werner families (basis independent).
double example_closed_form_D(int example_id, double p, double alpha);

}  // namespace skewq
