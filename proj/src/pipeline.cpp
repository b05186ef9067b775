#include "toda_darboux/pipeline.hpp"

#include "toda_darboux/error.hpp"

#include <cmath>
#include <string>

namespace toda_darboux {

void RunConfig::validate() const
{
    if (p < 1 || n <= p) {
        throw Error(ErrorCode::InvalidArgument,
                    "config: need n > p >= 1 (got p = " + std::to_string(p) + ", n = " + std::to_string(n) + ")");
    }
    for (double tol : {tol_pivot, tol_margin, tol_verify, tol_path}) {
        if (!(tol > 0.0)) {
            throw Error(ErrorCode::InvalidArgument, "config: tolerances must be positive");
        }
    }
    if (!(dt > 0.0) || steps < 0 || pad < 0) {
        throw Error(ErrorCode::InvalidArgument, "config: need dt > 0, steps >= 0, pad >= 0");
    }
    if (!std::isfinite(shift.real()) || !std::isfinite(shift.imag())) {
        throw Error(ErrorCode::InvalidArgument, "config: shift must be finite");
    }
}

FactorizationOptions RunConfig::factorization() const
{
    FactorizationOptions options;
    options.pivot_tol = tol_pivot;
    options.sampling.margin = tol_margin;
    options.sampling.mode = mode;
    return options;
}

Instance make_instance(const RunConfig& config, int size)
{
    if (config.family == Family::random) {
        return {random_hessenberg(config.p, size, config.seed, config.mode), std::nullopt};
    }
    const GammaTable table =
        random_gamma_table(config.p, size, config.seed, config.mode, kFactoredUpperScale, kFactoredLowerScale);
    return {backlund_transform(table, 0, config.shift, size), parameters_from_table(table)};
}

Rng sampling_rng(std::uint64_t seed)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), 0x5eedu};
    return Rng(seq);
}

std::vector<ResidualReport> factorization_reports(const BandedHessenberg& matrix, const FullFactorization& full)
{
    const int n = matrix.size();
    std::vector<ResidualReport> out;

    BandMatrix shifted = matrix.to_band();
    for (int i = 0; i < n; ++i) {
        shifted.set(i, i, shifted(i, i) - full.factors.shift);
    }
    const WindowedProduct lu = multiply(full.lu.lower.to_band(), full.lu.upper.to_band());
    const double lu_gap = residual(lu.matrix, shifted, lu.window);
    out.push_back({"lu", lu_gap, "", 0, kAlgebraicTolerance, lu_gap <= kAlgebraicTolerance});

    WindowedProduct acc{BandMatrix(n, 0, 0), full_window(n)};
    for (int i = 0; i < n; ++i) {
        acc.matrix.set(i, i, 1.0);
    }
    for (const Bidiagonal& f : full.factors.lower) {
        acc = multiply(acc.matrix, f.to_band(), acc.window, full_window(n));
    }
    const double darboux_gap = residual(acc.matrix, full.lu.lower.to_band(), acc.window);
    out.push_back({"darboux", darboux_gap, "", 0, kAlgebraicTolerance, darboux_gap <= kAlgebraicTolerance});

    const GammaTable peeled = full.factors.to_table();
    ResidualReport unique{"uniqueness", 0.0, "", 0, kCrossConstructionTolerance, true};
    const long count = std::min(peeled.count(), full.table.count());
    for (long k = 1; k <= count; ++k) {
        const Scalar a = peeled[k];
        const Scalar b = full.table[k];
        const double gap = std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
        if (gap > unique.max_residual) {
            unique.max_residual = gap;
            unique.argmax_entry = "g[" + std::to_string(k) + "]";
        }
    }
    unique.pass = unique.max_residual <= unique.tolerance;
    out.push_back(std::move(unique));
    return out;
}

ResidualReport backlund_report(const FullFactorization& full, int i)
{
    const TransformResult product = assemble_transform(full.factors, i);
    const int rows = std::min(product.window.rows, full.table.columns());
    ResidualReport report{"backlund_J" + std::to_string(i), 0.0, "", 0, kAlgebraicTolerance, true};
    if (rows < 1) {
        return report;
    }
    const BandedHessenberg closed = backlund_transform(full.table, i, full.factors.shift, rows);
    const int p = closed.p();
    for (int r = 0; r < rows; ++r) {
        for (int c = std::max(0, r - p); c <= r; ++c) {
            const double gap = std::abs(product.matrix(r, c) - closed(r, c));
            if (gap > report.max_residual) {
                report.max_residual = gap;
                report.argmax_entry = "a[" + std::to_string(r) + "," + std::to_string(c) + "]";
            }
        }
    }
    report.pass = report.max_residual <= report.tolerance;
    return report;
}

DiagramReport run_verify(const RunConfig& config)
{
    config.validate();
    const int size = diagram_working_size(config.p, config.n, config.pad);
    const Instance instance = make_instance(config, size);
    DiagramOptions options;
    options.window = config.n;
    options.dt = config.dt;
    options.steps = config.steps;
    options.tol_path = config.tol_path;
    options.tol_verify = config.tol_verify;
    options.pad = config.pad;
    options.factorization = config.factorization();
    Rng rng = sampling_rng(config.seed);
    return theorem1_diagram(instance.matrix, config.shift, instance.params, rng, options);
}

} // namespace toda_darboux
