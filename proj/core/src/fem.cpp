#include "rellich/fem.hpp"

#include "rellich/mellin.hpp"
#include "rellich/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace rellich {

Mesh1D make_graded_mesh(double r0, int elements) {
  if (!(r0 > 0.0) || r0 >= 1.0 || elements < 1)
    throw std::invalid_argument("make_graded_mesh: need 0 < r0 < 1, elements >= 1");
  Mesh1D m;
  m.grading_ratio = std::pow(r0, 1.0 / elements);
  m.breakpoints.resize(elements + 1);
  for (int i = 0; i <= elements; ++i)
    m.breakpoints[i] = std::exp(std::log(r0) * (1.0 - static_cast<double>(i) / elements));
  m.breakpoints.back() = 1.0;
  return m;
}

Mesh1D refine(const Mesh1D& mesh) {
  Mesh1D out;
  out.grading_ratio = std::sqrt(mesh.grading_ratio);
  for (size_t i = 0; i + 1 < mesh.breakpoints.size(); ++i) {
    double a = mesh.breakpoints[i], b = mesh.breakpoints[i + 1];
    out.breakpoints.push_back(a);
    out.breakpoints.push_back(std::sqrt(a * b));  // geometric midpoint
  }
  out.breakpoints.push_back(mesh.breakpoints.back());
  return out;
}

namespace {

// Hermite cubics on [0,1]: value-left, slope-left, value-right, slope-right.
void hermite_shapes(double z, double H[4], double dH[4], double ddH[4]) {
  H[0] = 1 - 3 * z * z + 2 * z * z * z;
  H[1] = z - 2 * z * z + z * z * z;
  H[2] = 3 * z * z - 2 * z * z * z;
  H[3] = -z * z + z * z * z;
  dH[0] = -6 * z + 6 * z * z;
  dH[1] = 1 - 4 * z + 3 * z * z;
  dH[2] = 6 * z - 6 * z * z;
  dH[3] = -2 * z + 3 * z * z;
  ddH[0] = -6 + 12 * z;
  ddH[1] = -4 + 6 * z;
  ddH[2] = 6 - 12 * z;
  ddH[3] = -2 + 6 * z;
}

struct FormWeights {
  // coefficients of (r^{n-1} f'' g'', r^{n-3} f' g', r^{n-5} f g)
  double c2, c1, c0;
};

FormWeights weights_for(FormKind kind, const ModeSpec& m) {
  double mu = static_cast<double>(m.mu), n = m.n;
  switch (kind) {
    case FormKind::bilap:
      return {1.0, n - 1 + 2 * mu, 2 * (n - 4) * mu + mu * mu};
    case FormKind::gradhardy:
      return {0.0, 1.0, mu};
    case FormKind::hardy4:
      return {0.0, 0.0, 1.0};
  }
  return {0, 0, 0};
}

void accumulate_element(Eigen::MatrixXd& M, const FormWeights& w, double a,
                        double b, int n, const std::array<int, 2> dofs[2],
                        int gauss_points) {
  const double L = std::log(b / a);
  const double la = std::log(a);
  std::vector<double> gz, gw;
  gauss_legendre(gauss_points, 0.0, 1.0, gz, gw);

  // basis scale: value dofs 1; slope dofs carry r f'(r) at their node so
  // the matrix entries stay inside double range on meshes reaching e^{-300}
  const double scale[4] = {1.0, L, 1.0, L};

  double H[4], dH[4], ddH[4];
  double G0[4], G1[4], G2[4];
  for (int g = 0; g < gauss_points; ++g) {
    double z = gz[g];
    double lr = la + L * z;
    // Pair each derivative factor with half of its weight: all three carry
    // the same moderate power r^{(n-5)/2}, which keeps every intermediate in
    // range even when r^{n-1} or 1/r^4 alone would not be.
    double common = std::exp(0.5 * (n - 5.0) * lr);
    hermite_shapes(z, H, dH, ddH);
    for (int i = 0; i < 4; ++i) {
      G2[i] = scale[i] * (ddH[i] / L - dH[i]) / L * common;  // f'' r^{(n-1)/2}
      G1[i] = scale[i] * dH[i] / L * common;                 // f'  r^{(n-3)/2}
      G0[i] = scale[i] * H[i] * common;                      // f   r^{(n-5)/2}
    }
    double jac = gw[g] * std::exp(lr) * L;  // dr = r L dzeta
    for (int i = 0; i < 4; ++i) {
      int gi = dofs[i / 2][i % 2];
      if (gi < 0) continue;
      for (int j = 0; j < 4; ++j) {
        int gj = dofs[j / 2][j % 2];
        if (gj < 0) continue;
        double v = (w.c2 * G2[i] * G2[j] + w.c1 * G1[i] * G1[j] +
                    w.c0 * G0[i] * G0[j]) *
                   jac;
        M(gi, gj) += v;
      }
    }
  }
}

}  // namespace

FormMatrixPair assemble(const ModeSpec& mode, FormKind numerator,
                        FormKind denominator, const Mesh1D& mesh,
                        int gauss_points) {
  const int nn = static_cast<int>(mesh.breakpoints.size());
  if (nn < 3) throw std::invalid_argument("assemble: need at least 2 elements");

  FormMatrixPair out;
  out.mode = mode;
  out.mesh = mesh;
  out.dof_map.assign(nn, {-1, -1});

  int next = 0;
  for (int i = 0; i < nn; ++i) {
    bool value_ok = true, slope_ok = true;
    // Both dofs are clamped at the innermost node as well as at r = 1: a
    // freed inner value or slope admits discrete modes like (log 1/r)^p
    // whose zero-extension is not H^2, and those pollute the spectrum from
    // below (the n = 5 potential quotient drops to 5/4 instead of 25/16).
    // Compactly supported discrete spaces keep the Rayleigh-Ritz bound
    // honest for every mode order.
    if (i == 0 || i == nn - 1) value_ok = slope_ok = false;
    if (value_ok) out.dof_map[i][0] = next++;
    if (slope_ok) out.dof_map[i][1] = next++;
  }
  if (next == 0) throw std::invalid_argument("assemble: all dofs constrained");

  out.A = Eigen::MatrixXd::Zero(next, next);
  out.B = Eigen::MatrixXd::Zero(next, next);
  auto wa = weights_for(numerator, mode);
  auto wb = weights_for(denominator, mode);
  for (int e = 0; e + 1 < nn; ++e) {
    std::array<int, 2> dofs[2] = {out.dof_map[e], out.dof_map[e + 1]};
    accumulate_element(out.A, wa, mesh.breakpoints[e], mesh.breakpoints[e + 1],
                       mode.n, dofs, gauss_points);
    accumulate_element(out.B, wb, mesh.breakpoints[e], mesh.breakpoints[e + 1],
                       mode.n, dofs, gauss_points);
  }
  out.A = 0.5 * (out.A + out.A.transpose()).eval();
  out.B = 0.5 * (out.B + out.B.transpose()).eval();
  return out;
}

namespace {

RadialProfile profile_from_dofs(const FormMatrixPair& pair,
                                const Eigen::VectorXd& x) {
  // piecewise Hermite-in-log evaluator
  auto breakpoints = pair.mesh.breakpoints;
  const int nn = static_cast<int>(breakpoints.size());
  std::vector<double> values(nn, 0.0), slopes(nn, 0.0);
  for (int i = 0; i < nn; ++i) {
    if (pair.dof_map[i][0] >= 0) values[i] = x[pair.dof_map[i][0]];
    if (pair.dof_map[i][1] >= 0)
      slopes[i] = x[pair.dof_map[i][1]] / breakpoints[i];  // dof holds r f'(r)
  }
  RadialProfile p;
  p.vanishing_order = 1000;  // identically zero below the innermost breakpoint
  p.support_end = 1.0;
  p.eval = [breakpoints, values, slopes](double r) -> std::array<double, 3> {
    if (r <= breakpoints.front() || r >= breakpoints.back()) return {0, 0, 0};
    auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), r);
    int e = static_cast<int>(it - breakpoints.begin()) - 1;
    double a = breakpoints[e], b = breakpoints[e + 1];
    double L = std::log(b / a);
    double z = std::log(r / a) / L;
    double H[4], dH[4], ddH[4];
    hermite_shapes(z, H, dH, ddH);
    double coef[4] = {values[e], slopes[e] * a * L, values[e + 1],
                      slopes[e + 1] * b * L};  // back to Hermite coefficients
    double f = 0, fp = 0, fpp = 0;
    for (int i = 0; i < 4; ++i) {
      f += coef[i] * H[i];
      fp += coef[i] * dH[i] / (r * L);
      fpp += coef[i] * (ddH[i] / L - dH[i]) / (r * r * L);
    }
    return {f, fp, fpp};
  };
  return p;
}

}  // namespace

MinQuotient min_quotient(const FormMatrixPair& pair) {
  const int n = static_cast<int>(pair.A.rows());
  if (pair.B.norm() == 0.0) throw std::invalid_argument("min_quotient: B = 0");

  // Jacobi rescale: D = diag(B)^{-1/2}; eigenvalues are invariant and the
  // huge dynamic range of the weights disappears from both matrices.
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) {
    double bi = pair.B(i, i);
    if (!(bi > 0.0))
      throw std::runtime_error("min_quotient: B diagonal not positive (structural kernel)");
    d[i] = 1.0 / std::sqrt(bi);
  }
  Eigen::MatrixXd As = d.asDiagonal() * pair.A * d.asDiagonal();
  Eigen::MatrixXd Bs = d.asDiagonal() * pair.B * d.asDiagonal();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> bspec(Bs);
  double bmin = bspec.eigenvalues().minCoeff();
  double bnorm = bspec.eigenvalues().cwiseAbs().maxCoeff();
  if (bmin <= 1e-13 * bnorm)
    throw std::runtime_error(
        "min_quotient: denominator form numerically singular; smallest scaled "
        "eigenvalue " + std::to_string(bmin));

  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(As, Bs);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("min_quotient: generalized eigensolve failed");

  MinQuotient out;
  out.lambda_min = es.eigenvalues()(0);
  out.b_min_eigenvalue = bmin / bnorm;

  Eigen::VectorXd y = es.eigenvectors().col(0);
  Eigen::VectorXd res = As * y - out.lambda_min * (Bs * y);
  out.eigen_residual = res.norm() /
      ((As.norm() + std::abs(out.lambda_min) * Bs.norm()) * y.norm());

  Eigen::VectorXd x = d.asDiagonal() * y;
  out.minimizer = profile_from_dofs(pair, x);
  return out;
}

double recommended_depth(const ModeSpec& mode, FormKind denominator,
                         double rel_tol) {
  // lambda(depth) - Q(0) ~ dQ/d(tau^2)|_0 * (pi/depth)^2; solve for depth.
  double q0, slope;
  double h = 1e-4;
  if (denominator == FormKind::hardy4 && mode.k == 0) {
    q0 = rellich_symbol(mode.n, 0.0);
    slope = (rellich_symbol(mode.n, h) - q0) / (h * h);
  } else {
    q0 = grad_symbol({mode.n, mode.k, 0.0});
    slope = (grad_symbol({mode.n, mode.k, h}) - q0) / (h * h);
  }
  double target = 0.35 * rel_tol * q0 / std::max(slope, 1e-12);
  double depth = M_PI / std::sqrt(target);
  return std::min(std::max(depth, 25.0), 330.0);
}

ConvergenceSweep convergence_sweep(const ModeSpec& mode, FormKind numerator,
                                   FormKind denominator,
                                   const std::vector<Mesh1D>& meshes) {
  if (meshes.size() < 3)
    throw std::invalid_argument("convergence_sweep: need at least 3 meshes");
  ConvergenceSweep out;
  for (const auto& mesh : meshes) {
    auto pair = assemble(mode, numerator, denominator, mesh);
    out.elements.push_back(mesh.elements());
    out.lambdas.push_back(min_quotient(pair).lambda_min);
  }
  out.monotone = true;
  for (size_t i = 1; i < out.lambdas.size(); ++i)
    if (out.lambdas[i] > out.lambdas[i - 1] + 1e-10 * std::abs(out.lambdas[i - 1]))
      out.monotone = false;

  size_t m = out.lambdas.size();
  if (m >= 3) {
    double d1 = out.lambdas[m - 3] - out.lambdas[m - 2];
    double d2 = out.lambdas[m - 2] - out.lambdas[m - 1];
    if (d2 > 0 && d1 > d2) {
      double rho = d2 / d1;
      out.observed_order = -std::log2(rho);
      out.extrapolated = out.lambdas[m - 1] - d2 * rho / (1 - rho);
    } else {
      out.extrapolated = out.lambdas[m - 1];
    }
  }

  // truncation diagnostic: same problem with the support shrunk to (0, 1/2)
  {
    Mesh1D half = meshes.back();
    for (auto& b : half.breakpoints) b *= 0.5;
    auto pair = assemble(mode, numerator, denominator, half);
    out.shrunk_support_lambda = min_quotient(pair).lambda_min;
  }
  return out;
}

}  // namespace rellich
