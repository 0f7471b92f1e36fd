#include "shiftlab/perron.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shiftlab/error.hpp"

namespace shiftlab {
namespace {

constexpr int kDenseLimit = 64;

Eigen::MatrixXd to_dense(const Sft& sft) {
  const int m = sft.alphabet_size();
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) a(i, j) = sft.allowed(i, j) ? 1.0 : 0.0;
  }
  return a;
}

double max_abs(const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); }

// Power iteration x <- a x / sum(a x) from a positive start, stopping once
// |a x - lambda x| <= tol * lambda. Returns lambda; x holds the vector.
double refine(const Eigen::MatrixXd& a, Eigen::VectorXd& x, const PerronOptions& options) {
  x = x.cwiseAbs();
  if (!(x.sum() > 0.0) || !x.allFinite()) x.setOnes();
  x /= x.sum();
  for (int it = 0; it <= options.max_iterations; ++it) {
    const Eigen::VectorXd y = a * x;
    const double lambda = y.sum();
    const double residual = max_abs(y - lambda * x);
    if (residual <= options.tolerance * lambda) return lambda;
    x = y / lambda;
  }
  fail(ErrorKind::ConvergenceFailure, "Perron vector did not converge within the iteration budget");
}

double subdominant_dense(const Eigen::MatrixXd& a, double lambda) {
  const Eigen::VectorXcd values = a.eigenvalues();
  std::vector<double> moduli(static_cast<std::size_t>(values.size()));
  for (Eigen::Index i = 0; i < values.size(); ++i) moduli[static_cast<std::size_t>(i)] = std::abs(values[i]);
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  return moduli.size() > 1 ? moduli[1] / lambda : 0.0;
}

// Growth rate of the deflated matrix a - lambda r l^T.
double subdominant_deflated(const Eigen::MatrixXd& a, const Eigen::VectorXd& r, const Eigen::VectorXd& l,
                            double lambda, const PerronOptions& options) {
  const Eigen::MatrixXd b = a - lambda * r * l.transpose();
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(a.rows(), 1.0, 2.0);
  x /= x.norm();
  constexpr int kWindow = 64;
  double previous = -1.0;
  for (int it = 0; it < options.max_iterations; it += kWindow) {
    double log_growth = 0.0;
    for (int j = 0; j < kWindow; ++j) {
      x = b * x;
      const double norm = x.norm();
      if (norm < 1e-300) return 0.0;
      log_growth += std::log(norm);
      x /= norm;
    }
    const double rate = std::exp(log_growth / kWindow) / lambda;
    if (previous >= 0.0 && std::abs(rate - previous) <= 1e-10) return rate;
    previous = rate;
  }
  fail(ErrorKind::ConvergenceFailure, "subdominant eigenvalue estimate did not converge");
}

}  // namespace

PerronData perron(const Sft& sft, const PerronOptions& options) {
  const int m = sft.alphabet_size();
  const Eigen::MatrixXd a = to_dense(sft);
  const Eigen::MatrixXd at = a.transpose();
  Eigen::VectorXd r = Eigen::VectorXd::Ones(m), l = Eigen::VectorXd::Ones(m);

  if (m <= kDenseLimit) {
    Eigen::EigenSolver<Eigen::MatrixXd> right_solver(a), left_solver(at);
    auto leading = [](const Eigen::EigenSolver<Eigen::MatrixXd>& s) {
      Eigen::Index best = 0;
      for (Eigen::Index i = 1; i < s.eigenvalues().size(); ++i) {
        if (s.eigenvalues()[i].real() > s.eigenvalues()[best].real()) best = i;
      }
      return s.eigenvectors().col(best).real().eval();
    };
    r = leading(right_solver);
    l = leading(left_solver);
  }

  PerronData out;
  out.lambda = refine(a, r, options);
  refine(at, l, options);
  l /= l.dot(r);
  out.right.assign(r.data(), r.data() + m);
  out.left.assign(l.data(), l.data() + m);
  out.entropy = std::log(out.lambda);
  out.theta = m <= kDenseLimit ? subdominant_dense(a, out.lambda)
                               : subdominant_deflated(a, r, l, out.lambda, options);
  return out;
}

double right_residual(const Sft& sft, const PerronData& data) {
  const int m = sft.alphabet_size();
  double worst = 0.0;
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    for (int j = 0; j < m; ++j) s += sft.allowed(i, j) ? data.right[static_cast<std::size_t>(j)] : 0.0;
    worst = std::max(worst, std::abs(s - data.lambda * data.right[static_cast<std::size_t>(i)]));
  }
  return worst;
}

double left_residual(const Sft& sft, const PerronData& data) {
  const int m = sft.alphabet_size();
  double worst = 0.0;
  for (int j = 0; j < m; ++j) {
    double s = 0.0;
    for (int i = 0; i < m; ++i) s += sft.allowed(i, j) ? data.left[static_cast<std::size_t>(i)] : 0.0;
    worst = std::max(worst, std::abs(s - data.lambda * data.left[static_cast<std::size_t>(j)]));
  }
  return worst;
}

}  // namespace shiftlab
