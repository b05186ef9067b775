#pragma once

#include "toda_darboux/banded.hpp"
#include "toda_darboux/lu.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace toda_darboux {

using IndexTuple = std::vector<int>;

/// All weakly decreasing tuples (i_1, ..., i_{k+1}) with
/// j + k + 1 <= i_{k+1} <= ... <= i_1 <= j + p + 1, in lexicographic order.
std::vector<IndexTuple> enumerate_indices(int j, int k, int p);

/// All weakly decreasing tuples (i_1, ..., i_{k+3}) with
/// k + 3 <= i_{k+3} <= ... <= i_1 <= p + 1 and i_{k+3} < p + 1.
std::vector<IndexTuple> enumerate_indices_tilde(int k, int p);

/// The sequence gamma_1, gamma_2, ... laid out in p + 1 rows: row 0 is the
/// diagonal of U, row r >= 1 is the subdiagonal of the r-th lower factor.
/// Column m of row r is gamma_{m (p+1) + r + 1}.
class GammaTable {
public:
    GammaTable(int p, int columns, std::vector<Scalar> gamma);

    int p() const noexcept { return p_; }
    int columns() const noexcept { return columns_; }
    long count() const noexcept { return static_cast<long>(gamma_.size()); }

    static long index(int p, int row, int column) noexcept
    {
        return static_cast<long>(column) * (p + 1) + row + 1;
    }

    /// gamma_n; zero for n <= 0, IndexError for n > count().
    Scalar operator[](long n) const;

    /// gamma_n with zero both below 1 and past the end of the table.
    Scalar value_or_zero(long n) const noexcept
    {
        return n >= 1 && n <= count() ? gamma_[static_cast<std::size_t>(n - 1)] : Scalar{};
    }

    Scalar entry(int row, int column) const { return (*this)[index(p_, row, column)]; }

    std::span<const Scalar> values() const noexcept { return gamma_; }

private:
    int p_;
    int columns_;
    std::vector<Scalar> gamma_;
};

/// The p(p-1)/2 free values: alphas[s] has p - s - 1 entries for
/// s = 0 .. p-2 and seeds the first subdiagonal entries of factor s + 1.
struct ParameterSet {
    std::vector<std::vector<Scalar>> alphas;

    static ParameterSet empty(int p) { return {std::vector<std::vector<Scalar>>(static_cast<std::size_t>(std::max(p - 1, 0)))}; }

    /// Throws InvalidArgument unless the triangular layout matches p and
    /// every value is nonzero.
    void validate(int p) const;
};

struct DarbouxFactors {
    Bidiagonal upper;
    std::vector<Bidiagonal> lower;  // L^(1), ..., L^(p)
    Scalar shift;

    int p() const noexcept { return static_cast<int>(lower.size()); }
    int size() const noexcept { return upper.size(); }

    /// Columns 0 .. size-2 of every row.
    GammaTable to_table() const;

    static DarbouxFactors from_table(const GammaTable& table, Scalar shift);
};

inline constexpr double kDefaultMargin = 1e-9;
inline constexpr int kDefaultMaxRetries = 64;

struct SamplingOptions {
    double margin = kDefaultMargin;
    int max_retries = kDefaultMaxRetries;
    Mode mode = Mode::real;
};

/// k x k determinant whose first row is row q - r - 1 of T and whose
/// remaining rows are rows q, q+1, ..., q+k-2 of T, all restricted to
/// columns 0 .. k-1 (q is the bandwidth of T). Requires 0 <= r <= q - 1.
Scalar hyperplane_determinant(const UnitLowerBanded& t, int r, int k);

/// sum_{j=0}^{q-1} (-1)^j alpha_{q-j} ... alpha_{q-1} R_k^{(j)}, the
/// quantity that must stay away from zero for peeling T with `alphas`.
Scalar hyperplane_margin(const UnitLowerBanded& t, std::span<const Scalar> alphas, int k);

/// Maps a point x off the hyperplanes to parameters:
///   alpha_{q-1} = x_1,
///   alpha_{q-j} = (-1)^{j+1} x_j / (alpha_{q-j+1} ... alpha_{q-1}).
std::vector<Scalar> parameters_from_point(std::span<const Scalar> point);

/// Inverse of parameters_from_point: x_j = (-1)^{j+1} alpha_{q-j} ... alpha_{q-1}.
std::vector<Scalar> point_from_parameters(std::span<const Scalar> alphas);

/// Largest depth for which the hyperplane determinants fit inside T.
int max_hyperplane_depth(const UnitLowerBanded& t) noexcept;

/// Draws q - 1 parameters for peeling T (q = bandwidth of T) by rejection:
/// accept when |margin_k| > margin and |margin_k| > margin * |margin_{k-1}|
/// for k = 1 .. depth. The second bound makes every peeling divisor larger
/// than `margin`. Throws SamplingFailed after max_retries rejections.
std::vector<Scalar> sample_parameters(const UnitLowerBanded& t, int depth, Rng& rng,
                                      const SamplingOptions& options = {});

struct PeelResult {
    Bidiagonal factor;      // lower bidiagonal, subdiagonal starts with alphas
    UnitLowerBanded rest;   // one band fewer than the input
};

/// Splits T (bandwidth q >= 2) as factor * rest. The first q - 1 subdiagonal
/// entries of the factor are `alphas`; later ones are forced by requiring
/// `rest` to have bandwidth q - 1. Throws PeelBreakdown(i) when the divisor
/// needed for row i has modulus below tol.
PeelResult peel(const UnitLowerBanded& t, std::span<const Scalar> alphas, double tol = kDefaultMargin);

struct LowerFactorization {
    std::vector<Bidiagonal> factors;  // L^(1), ..., L^(p)
    ParameterSet params;
};

/// L = L^(1) ... L^(p) with the given free parameters.
LowerFactorization darboux_factorize(const UnitLowerBanded& lower, const ParameterSet& params,
                                     double tol = kDefaultMargin);

/// Same, drawing the free parameters stage by stage. depth <= 0 selects the
/// largest depth available at each stage.
LowerFactorization darboux_factorize(const UnitLowerBanded& lower, Rng& rng, const SamplingOptions& options = {},
                                     int depth = 0);

/// Builds the gamma table diagonal by diagonal from the pivots of U, the
/// free parameters, and the subdiagonal entries of J. Produces
/// J.size() - p full columns; needs at least J.size() - 1 pivots.
/// Throws TableBreakdown when a divisor delta falls below tol.
GammaTable table_fill(std::span<const Scalar> pivots, const ParameterSet& params, const BandedHessenberg& matrix,
                      double tol = kDefaultPivotTolerance);

struct TransformResult {
    BandedHessenberg matrix;
    ValidWindow window;
};

/// J^(i) = C I + L^(i+1) ... L^(p) U L^(1) ... L^(i), 0 <= i <= p.
TransformResult assemble_transform(const DarbouxFactors& factors, int i);

/// Closed-form entry (row + k, row) of J^(j) from the gamma sequence.
/// k = 0 gives the diagonal (shifted by C). IndexError when a needed gamma
/// lies past the end of the table.
Scalar backlund_entry(const GammaTable& table, int j, int row, int k, Scalar shift);

/// Leading rows x rows block of J^(j) built from backlund_entry.
BandedHessenberg backlund_transform(const GammaTable& table, int j, Scalar shift, int rows);

/// Table with the U row drawn from the [u, 2u] annulus (u = upper_scale)
/// and every lower row from the [l, 2l] annulus (l = lower_scale).
GammaTable random_gamma_table(int p, int columns, std::uint64_t seed, Mode mode, double upper_scale,
                              double lower_scale);

/// The free values stored in a table: alphas[s] is the first p - s - 1
/// entries of row s + 1.
ParameterSet parameters_from_table(const GammaTable& table);

/// Everything derived from one J and shift at a fixed time.
struct FullFactorization {
    LuFactors lu;
    DarbouxFactors factors;
    ParameterSet params;
    GammaTable table;
};

struct FactorizationOptions {
    double pivot_tol = kDefaultPivotTolerance;
    SamplingOptions sampling;
};

/// LU, peeling with the given or sampled parameters, and the table built
/// from the same parameters.
FullFactorization factorize_full(const BandedHessenberg& matrix, Scalar shift,
                                 const std::optional<ParameterSet>& params, Rng& rng,
                                 const FactorizationOptions& options = {});

} // namespace toda_darboux
