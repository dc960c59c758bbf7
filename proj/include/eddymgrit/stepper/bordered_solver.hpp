#pragma once

#include "eddymgrit/model/tridiagonal.hpp"

#include <stdexcept>
#include <vector>

namespace eddymgrit::stepper {

/// Linear system of one Newton update
///
///   [ J      -X ] [da]   [rhs_field  ]
///   [ X^T/dt  0 ] [di] = [rhs_circuit]
///
/// with tridiagonal J (field Jacobian over the free nodes).
struct BorderedSystem {
    model::Tridiagonal block;
    std::vector<double> coupling;  ///< X
    double dt = 1.0;
    std::vector<double> rhs_field;
    double rhs_circuit = 0.0;
};

struct BorderedSolution {
    std::vector<double> da;
    double di = 0.0;
};

class LinearSolveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A zero pivot was met while factoring the tridiagonal block.
class SingularFactorError : public LinearSolveError {
public:
    using LinearSolveError::LinearSolveError;
};

/// The scalar Schur complement X^T J^{-1} X / dt vanished.
class ZeroSchurComplementError : public LinearSolveError {
public:
    using LinearSolveError::LinearSolveError;
};

/// Solves T x = rhs by the Thomas algorithm (no pivoting).
[[nodiscard]] std::vector<double> solve_tridiagonal(const model::Tridiagonal& t, std::vector<double> rhs);

/// Tridiagonal LU of J, then elimination of di through the Schur complement.
[[nodiscard]] BorderedSolution solve_bordered(const BorderedSystem& sys);

}  // namespace eddymgrit::stepper
