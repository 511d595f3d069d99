#include "miracle/linalg.hpp"

#include "miracle/common.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace miracle {

namespace {

Matrix multiply(const Matrix& a, const Matrix& b) {
  const std::size_t m = a.rows();
  Matrix c(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const double* ai = a.row(i);
    double* ci = c.row(i);
    for (std::size_t k = 0; k < m; ++k) {
      const double aik = ai[k];
      if (aik == 0.0) continue;
      const double* bk = b.row(k);
      for (std::size_t j = 0; j < m; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

double one_norm(const Matrix& a) {
  double best = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) col += std::fabs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

bool all_finite(const Matrix& a) {
  for (double v : a.storage())
    if (!std::isfinite(v)) return false;
  return true;
}

}  // namespace

Matrix matrix_exponential(const Matrix& a) {
  const std::size_t m = a.rows();
  if (m != a.cols()) throw NumericError("matrix_exponential: matrix must be square");
  if (!all_finite(a)) throw NumericError("matrix_exponential: non-finite input");

  // Scale so the Taylor series converges quickly, then square back.
  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    squarings = std::min(squarings, 64);
  }
  const double scale = std::ldexp(1.0, -squarings);

  Matrix scaled(m, m);
  for (std::size_t i = 0; i < m * m; ++i) scaled.storage()[i] = a.storage()[i] * scale;

  Matrix result(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) result(i, i) = 1.0;

  Matrix term = result;  // k-th Taylor term, starts at I
  constexpr double kRelTol = 1e-10;
  constexpr int kMaxTerms = 64;
  for (int k = 1; k <= kMaxTerms; ++k) {
    term = multiply(term, scaled);
    const double inv_k = 1.0 / static_cast<double>(k);
    double term_norm = 0.0;
    for (std::size_t i = 0; i < m * m; ++i) {
      term.storage()[i] *= inv_k;
      result.storage()[i] += term.storage()[i];
      term_norm = std::max(term_norm, std::fabs(term.storage()[i]));
    }
    if (term_norm <= kRelTol) break;
  }

  for (int s = 0; s < squarings; ++s) {
    result = multiply(result, result);
    if (!all_finite(result))
      throw NumericError("matrix_exponential: overflow while squaring (entries too large)");
  }
  if (!all_finite(result)) throw NumericError("matrix_exponential: non-finite result");
  return result;
}

double acyclicity_value(const Matrix& b) {
  const std::size_t m = b.rows();
  if (m != b.cols()) throw NumericError("acyclicity_value: matrix must be square");
  Matrix squared(m, m);
  for (std::size_t i = 0; i < m * m; ++i) {
    const double v = b.storage()[i];
    squared.storage()[i] = v * v;
  }
  const Matrix e = matrix_exponential(squared);
  double trace = 0.0;
  for (std::size_t i = 0; i < m; ++i) trace += e(i, i);
  return trace - static_cast<double>(m);
}

double acyclicity_value_poly(const Matrix& b) {
  const std::size_t m = b.rows();
  if (m != b.cols()) throw NumericError("acyclicity_value_poly: matrix must be square");
  Matrix base(m, m);
  const double inv_m = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < m * m; ++i) {
    const double v = b.storage()[i];
    base.storage()[i] = v * v * inv_m;
  }
  for (std::size_t i = 0; i < m; ++i) base(i, i) += 1.0;
  // base^m by binary exponentiation
  Matrix result(m, m, 0.0);
  for (std::size_t i = 0; i < m; ++i) result(i, i) = 1.0;
  std::size_t power = m;
  while (power > 0) {
    if (power & 1) result = multiply(result, base);
    base = multiply(base, base);
    power >>= 1;
  }
  if (!all_finite(result)) throw NumericError("acyclicity_value_poly: non-finite result");
  double trace = 0.0;
  for (std::size_t i = 0; i < m; ++i) trace += result(i, i);
  return trace - static_cast<double>(m);
}

std::vector<double> cholesky_solve(Matrix a, std::vector<double> rhs, double lambda) {
  const std::size_t n = a.rows();
  if (n != a.cols() || rhs.size() != n)
    throw NumericError("cholesky_solve: shape mismatch");
  for (std::size_t i = 0; i < n; ++i) a(i, i) += lambda;

  // In-place lower Cholesky factorization.
  for (std::size_t j = 0; j < n; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= a(j, k) * a(j, k);
    if (!(diag > 0.0))
      throw NumericError("cholesky_solve: matrix not positive definite (lambda=" +
                         std::to_string(lambda) + ")");
    const double root = std::sqrt(diag);
    a(j, j) = root;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = a(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= a(i, k) * a(j, k);
      a(i, j) = v / root;
    }
  }

  // Forward then backward substitution.
  for (std::size_t i = 0; i < n; ++i) {
    double v = rhs[i];
    for (std::size_t k = 0; k < i; ++k) v -= a(i, k) * rhs[k];
    rhs[i] = v / a(i, i);
  }
  for (std::size_t ii = n; ii > 0; --ii) {
    const std::size_t i = ii - 1;
    double v = rhs[i];
    for (std::size_t k = i + 1; k < n; ++k) v -= a(k, i) * rhs[k];
    rhs[i] = v / a(i, i);
  }
  return rhs;
}

}  // namespace miracle
