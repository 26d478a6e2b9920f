#ifndef RELLICH_FEM_HPP
#define RELLICH_FEM_HPP

#include "rellich/harmonics.hpp"

#include <Eigen/Dense>

#include <vector>

namespace rellich {

/// Breakpoints of a 1D mesh on (0,1], strictly increasing, ending at 1.
struct Mesh1D {
  std::vector<double> breakpoints;
  double grading_ratio = 0.0;

  int elements() const { return static_cast<int>(breakpoints.size()) - 1; }
};

/// Geometric mesh from r0 up to 1 (each breakpoint = ratio * the next).
Mesh1D make_graded_mesh(double r0, int elements);

/// Uniform refinement (every element split in two) -- nested spaces.
Mesh1D refine(const Mesh1D& mesh);

enum class FormKind { bilap, gradhardy, hardy4 };

/// Discretized numerator/denominator quadratic forms.  The basis is cubic
/// Hermite in the local logarithmic coordinate of each element (value and
/// d/dr slope degrees of freedom at the nodes, C^1 in r); the minimizing
/// profiles behave like r^{(4-n)/2} times slowly varying factors of log r,
/// which plain cubics in r cannot track on a deep graded mesh.
struct FormMatrixPair {
  Eigen::MatrixXd A;  // numerator form
  Eigen::MatrixXd B;  // denominator form, positive semi-definite
  // per mesh node: index of the (value, slope) dof, -1 if constrained out
  std::vector<std::array<int, 2>> dof_map;
  ModeSpec mode;
  Mesh1D mesh;
};

/// Essential constraints: f(1) = f'(1) = 0 always; at the innermost node the
/// value dof is dropped for k >= 1, the slope dof for k >= 2 and for k = 0.
FormMatrixPair assemble(const ModeSpec& mode, FormKind numerator,
                        FormKind denominator, const Mesh1D& mesh,
                        int gauss_points = 10);

struct MinQuotient {
  double lambda_min = 0.0;
  RadialProfile minimizer;
  double eigen_residual = 0.0;   // ||A x - lambda B x|| / ((||A||+lambda||B||)||x||)
  double b_min_eigenvalue = 0.0; // PSD diagnostic, relative to ||B||
};

/// Smallest generalized eigenvalue of (A, B); dense symmetric solve after a
/// Jacobi rescale by diag(B)^{-1/2}.  Throws on a numerically singular B.
MinQuotient min_quotient(const FormMatrixPair& pair);

struct ConvergenceSweep {
  std::vector<int> elements;
  std::vector<double> lambdas;      // nonincreasing under nested refinement
  double extrapolated = 0.0;
  double observed_order = 0.0;
  double shrunk_support_lambda = 0.0;  // same problem solved on (0, 1/2)
  bool monotone = false;
};

ConvergenceSweep convergence_sweep(const ModeSpec& mode, FormKind numerator,
                                   FormKind denominator,
                                   const std::vector<Mesh1D>& meshes);

/// Mesh depth -log(r0) for the target relative truncation error, from the
/// curvature of the corresponding Mellin symbol at tau = 0.
double recommended_depth(const ModeSpec& mode, FormKind denominator,
                         double rel_tol);

}  // namespace rellich

#endif
