#pragma once

#include "miracle/matrix.hpp"

#include <vector>

namespace miracle {

/// Matrix exponential by scaling-and-squaring around a truncated Taylor
/// core, run to relative tolerance 1e-10. Throws NumericError if the
/// result overflows to non-finite values.
Matrix matrix_exponential(const Matrix& a);

/// Acyclicity score of a nonnegative matrix: Tr(exp(B o B)) - m.
/// Exactly zero iff the weighted graph encoded by B is acyclic.
double acyclicity_value(const Matrix& b);

/// Polynomial acyclicity variant: Tr((I + (B o B)/m)^m) - m.
/// Same zero set on DAGs; offered as a cheaper alternative core.
double acyclicity_value_poly(const Matrix& b);

/// Solves (A + lambda*I) x = rhs for symmetric positive definite A via
/// Cholesky. A is modified in place. Throws NumericError on breakdown.
std::vector<double> cholesky_solve(Matrix a, std::vector<double> rhs, double lambda);

}  // namespace miracle
