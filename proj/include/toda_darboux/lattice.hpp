#pragma once

#include "toda_darboux/banded.hpp"
#include "toda_darboux/darboux.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toda_darboux {

/// Lower-band values in the BandedHessenberg layout: bands[d][j] is the
/// value at (j + d, j). Used for time derivatives of J.
using Bands = std::vector<std::vector<Scalar>>;

/// Right-hand side of the full Kostant Toda lattice
///   da(i,j)/dt = (a(i,i) - a(j,j)) a(i,j) + a(i+1,j) - a(i,j-1)
/// on the truncation: a(i+1, j) is read as 0 outside the band or past
/// the last row, a(i, j-1) as 0 for j = 0 or outside the band.
Bands toda_rhs(const BandedHessenberg& matrix);

/// Right-hand side of the discrete KdV lattice
///   dgamma_n/dt = gamma_n (sum_{i=1}^p gamma_{n+i} - sum_{i=1}^p gamma_{n-i}),
/// with gamma_n = 0 for n <= 0 and past the end of the table.
std::vector<Scalar> kdv_rhs(const GammaTable& table);

template <class State>
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    double dt = 0.0;
    std::string method = "rk4";

    std::size_t samples() const noexcept { return states.size(); }
};

using TodaTrajectory = Trajectory<BandedHessenberg>;
using KdvTrajectory = Trajectory<GammaTable>;

/// Classical fixed-step RK4. Throws BlowUp(step) with the last finite time
/// in the message as soon as a state entry stops being finite.
TodaTrajectory evolve_toda(const BandedHessenberg& initial, double dt, int steps, double t0 = 0.0);
KdvTrajectory evolve_kdv(const GammaTable& initial, double dt, int steps, double t0 = 0.0);

struct ResidualReport {
    std::string name;
    double max_residual = 0.0;
    std::string argmax_entry;
    std::size_t argmax_time = 0;
    double tolerance = 0.0;
    bool pass = true;
};

/// Central differences at interior samples against toda_rhs. Only entries
/// whose stencil stays inside the first `window` rows are checked, i.e.
/// rows i with i + 1 < window. window <= 0 means the full size.
ResidualReport verify_toda(const TodaTrajectory& trajectory, double tol, int window = 0);

/// Same for kdv_rhs; checks gamma_n with n + p <= limit (limit <= 0 means
/// the whole table).
ResidualReport verify_kdv(const KdvTrajectory& trajectory, double tol, long limit = 0);

/// Max entry-wise gap between two matrix trajectories over the first
/// `rows` rows, sample by sample.
ResidualReport compare_paths(const TodaTrajectory& a, const TodaTrajectory& b, int rows, double tol,
                             std::string name);

/// Evaluates dP_n(z)/dt for n <= m by differentiating the polynomial
/// recurrence with `rates`, and returns the largest relative gap to the
/// closed forms -sum_{i=n-p}^{n-1} a(n,i) P_i and (a(n,n) - z) P_n + P_{n+1}.
/// The gap is round-off only when rates == toda_rhs(matrix).
double check_poly_derivative(const BandedHessenberg& matrix, const Bands& rates, Scalar z, int m);

/// delta^{(i)}_k = gamma_{(i-1)p+i} gamma_{ip+i} ... gamma_{(k+i)p+i}. Compares
/// its product-rule derivative under `rates` with
///   delta (sum_{j=0}^p gamma_{(k+i)p+i+j} - sum_{j=0}^p gamma_{(i-2)p+i+j})
/// for every (i, k) whose stencil fits in the table; returns the largest
/// relative gap.
double check_delta_derivative(const GammaTable& table, std::span<const Scalar> rates);

inline constexpr double kAlgebraicTolerance = 1e-10;
inline constexpr double kCrossConstructionTolerance = 1e-9;
inline constexpr double kDefaultPathTolerance = 1e-4;
inline constexpr double kDefaultVerifyTolerance = 1e-5;
inline constexpr int kDefaultEvolutionPad = 10;

struct DiagramOptions {
    int window = 8;          // N: rows of J^(j) that are checked
    double dt = 1e-3;
    int steps = 100;
    double tol_path = kDefaultPathTolerance;
    double tol_verify = kDefaultVerifyTolerance;
    int pad = kDefaultEvolutionPad;  // extra table columns beyond the window
    FactorizationOptions factorization;
};

/// Size of J(t0) the diagram needs: N + 1 rows of every J^(j), `pad`
/// spare columns for the truncated lattices, and p rows for the table.
int diagram_working_size(int p, int window, int pad) noexcept;

struct DiagramReport {
    std::vector<ResidualReport> reports;
    ParameterSet params;

    bool all_pass() const noexcept
    {
        for (const auto& r : reports) {
            if (!r.pass) {
                return false;
            }
        }
        return true;
    }
};

/// Factor J(t0) - C I, evolve the gamma table by the KdV lattice, rebuild
/// every J^(j)(t) from the gammas, and check: J^(0)(t) against a direct
/// Toda integration of J(t0); each J^(j)(t) against the Toda lattice;
/// gamma(t) against the KdV lattice.
DiagramReport theorem1_diagram(const BandedHessenberg& initial, Scalar shift,
                               const std::optional<ParameterSet>& params, Rng& rng,
                               const DiagramOptions& options = {});

} // namespace toda_darboux
