#pragma once

#include "toda_darboux/banded.hpp"

#include <vector>

namespace toda_darboux {

/// J together with the shift C at which J - C I is factored.
struct ShiftedProblem {
    BandedHessenberg matrix;
    Scalar shift;
};

inline constexpr double kDefaultPivotTolerance = 1e-12;

struct LuFactors {
    UnitLowerBanded lower;  // p subdiagonals, unit diagonal
    Bidiagonal upper;       // pivots on the diagonal, unit superdiagonal
};

/// Pivot-free LU of J - C I. The factors of every leading block are the
/// leading blocks of the factors, so the result is exact on all n rows.
/// Throws SingularLeadingMinor(m) when the pivot that completes the m x m
/// leading block falls below tol * max |entry of J - C I|.
LuFactors lu_factorize(const ShiftedProblem& problem, double tol = kDefaultPivotTolerance);

/// P_0(C), ..., P_m(C) from the three-term-style band recurrence
///   sum_{i=k-p}^{k-1} a(k,i) P_i + (a(k,k) - C) P_k + P_{k+1} = 0,
/// with P_0 = 1. P_k(C) = det(C I_k - J_k). Requires m <= n.
std::vector<Scalar> char_poly(const ShiftedProblem& problem, int m);

/// The first m pivots as ratios -P_{k+1}(C) / P_k(C).
std::vector<Scalar> pivot_gammas(const ShiftedProblem& problem, int m, double tol = kDefaultPivotTolerance);

} // namespace toda_darboux
