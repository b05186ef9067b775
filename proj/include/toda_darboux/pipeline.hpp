#pragma once

#include "toda_darboux/darboux.hpp"
#include "toda_darboux/lattice.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace toda_darboux {

/// How J(t0) is produced from the seed.
///   random:   random_hessenberg, free parameters sampled.
///   factored: J(t0) = J^(0) of a random_gamma_table with the scales below,
///             free parameters read back from that table.
enum class Family { random, factored };

inline constexpr double kFactoredUpperScale = 0.5;
inline constexpr double kFactoredLowerScale = 0.1;

struct RunConfig {
    int p = 1;
    int n = 8;
    Scalar shift{};
    std::uint64_t seed = 1;
    double dt = 1e-3;
    int steps = 100;
    Mode mode = Mode::real;
    double tol_pivot = kDefaultPivotTolerance;
    double tol_margin = kDefaultMargin;
    double tol_verify = kDefaultVerifyTolerance;
    double tol_path = kDefaultPathTolerance;
    Family family = Family::random;
    int pad = kDefaultEvolutionPad;

    /// InvalidArgument unless n > p >= 1, every tolerance is positive,
    /// dt > 0, steps >= 0 and pad >= 0.
    void validate() const;

    FactorizationOptions factorization() const;
};

struct Instance {
    BandedHessenberg matrix;
    std::optional<ParameterSet> params;
};

Instance make_instance(const RunConfig& config, int size);

/// Seeds the sampling stream; kept apart from the stream that drew J.
Rng sampling_rng(std::uint64_t seed);

/// lu: L U against J - C I. darboux: L^(1) ... L^(p) against L.
/// uniqueness: table_fill against the peeled factors, relative to
/// max(1, |gamma|).
std::vector<ResidualReport> factorization_reports(const BandedHessenberg& matrix, const FullFactorization& full);

/// J^(i) from the factor product against the closed form, over the rows
/// both constructions cover.
ResidualReport backlund_report(const FullFactorization& full, int i);

/// J(t0) of working size for a window of config.n rows, then the diagram.
DiagramReport run_verify(const RunConfig& config);

} // namespace toda_darboux
