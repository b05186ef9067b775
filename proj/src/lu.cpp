#include "toda_darboux/lu.hpp"

#include "toda_darboux/error.hpp"

#include <cmath>
#include <string>

namespace toda_darboux {

namespace {

double shifted_scale(const ShiftedProblem& problem)
{
    double scale = problem.matrix.max_modulus();
    for (Scalar d : problem.matrix.band(0)) {
        scale = std::max(scale, std::abs(d - problem.shift));
    }
    return std::max(scale, 1.0);
}

[[noreturn]] void singular(int minor, double modulus)
{
    throw Error(ErrorCode::SingularLeadingMinor,
                "leading minor " + std::to_string(minor) + " of J - C I is numerically singular (pivot modulus "
                    + std::to_string(modulus) + ")",
                minor);
}

} // namespace

LuFactors lu_factorize(const ShiftedProblem& problem, double tol)
{
    const BandedHessenberg& j = problem.matrix;
    const int n = j.size();
    const int p = j.p();
    const double threshold = tol * shifted_scale(problem);

    BandMatrix lower(n, p, 0);
    std::vector<Scalar> pivots(static_cast<std::size_t>(n));
    // Column by column: (LU)(i, c) = l(i, c) u_c + l(i, c - 1).
    for (int c = 0; c < n; ++c) {
        const Scalar pivot = j(c, c) - problem.shift - (c > 0 ? lower(c, c - 1) : Scalar{});
        if (!(std::abs(pivot) >= threshold)) {
            singular(c + 1, std::abs(pivot));
        }
        pivots[static_cast<std::size_t>(c)] = pivot;
        lower.set(c, c, 1.0);
        for (int i = c + 1; i <= std::min(n - 1, c + p); ++i) {
            const Scalar left = c > 0 ? lower(i, c - 1) : Scalar{};
            lower.set(i, c, (j(i, c) - left) / pivot);
        }
    }
    return {UnitLowerBanded::from_band(lower, p), Bidiagonal(BidiagonalKind::upper, n, std::move(pivots))};
}

std::vector<Scalar> char_poly(const ShiftedProblem& problem, int m)
{
    const BandedHessenberg& j = problem.matrix;
    if (m < 0 || m > j.size()) {
        throw Error(ErrorCode::Size, "char_poly: m = " + std::to_string(m) + " outside [0, n]", m);
    }
    const int p = j.p();
    std::vector<Scalar> values(static_cast<std::size_t>(m) + 1);
    values[0] = 1.0;
    for (int k = 0; k < m; ++k) {
        Scalar next = -(j(k, k) - problem.shift) * values[static_cast<std::size_t>(k)];
        for (int i = std::max(0, k - p); i < k; ++i) {
            next -= j(k, i) * values[static_cast<std::size_t>(i)];
        }
        values[static_cast<std::size_t>(k) + 1] = next;
    }
    return values;
}

std::vector<Scalar> pivot_gammas(const ShiftedProblem& problem, int m, double tol)
{
    const std::vector<Scalar> poly = char_poly(problem, m);
    const double threshold = tol * shifted_scale(problem);
    std::vector<Scalar> gammas;
    gammas.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const Scalar current = poly[static_cast<std::size_t>(k)];
        // |P_k| relative to |P_{k-1}| is the modulus of the previous pivot.
        const double reference = k == 0 ? 1.0 : std::abs(poly[static_cast<std::size_t>(k) - 1]);
        if (!(std::abs(current) >= threshold * reference)) {
            singular(k, std::abs(current));
        }
        gammas.push_back(-poly[static_cast<std::size_t>(k) + 1] / current);
    }
    return gammas;
}

} // namespace toda_darboux
