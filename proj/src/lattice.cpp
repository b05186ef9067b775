#include "toda_darboux/lattice.hpp"

#include "toda_darboux/error.hpp"

#include <cmath>
#include <sstream>

namespace toda_darboux {

namespace {

bool finite(Scalar v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

// Flat band-major layout of a Hessenberg truncation: band d occupies
// n - d consecutive slots starting at offset(d).
struct HessenbergLayout {
    int p;
    int n;
    std::vector<std::size_t> offsets;

    HessenbergLayout(int p_, int n_) : p(p_), n(n_)
    {
        std::size_t at = 0;
        for (int d = 0; d <= p; ++d) {
            offsets.push_back(at);
            at += static_cast<std::size_t>(std::max(0, n - d));
        }
        offsets.push_back(at);
    }

    std::size_t total() const { return offsets.back(); }

    // Lower-band value at (i, j); zero outside the stored band.
    Scalar read(std::span<const Scalar> flat, int i, int j) const
    {
        const int d = i - j;
        if (j < 0 || i >= n || d < 0 || d > p) {
            return {};
        }
        return flat[offsets[static_cast<std::size_t>(d)] + static_cast<std::size_t>(j)];
    }
};

std::vector<Scalar> flatten(const BandedHessenberg& m)
{
    std::vector<Scalar> flat;
    for (const auto& band : m.bands()) {
        flat.insert(flat.end(), band.begin(), band.end());
    }
    return flat;
}

BandedHessenberg unflatten(const HessenbergLayout& layout, std::span<const Scalar> flat)
{
    Bands bands(static_cast<std::size_t>(layout.p) + 1);
    for (int d = 0; d <= layout.p; ++d) {
        auto first = flat.begin() + static_cast<std::ptrdiff_t>(layout.offsets[static_cast<std::size_t>(d)]);
        auto last = flat.begin() + static_cast<std::ptrdiff_t>(layout.offsets[static_cast<std::size_t>(d) + 1]);
        bands[static_cast<std::size_t>(d)].assign(first, last);
    }
    return BandedHessenberg(layout.p, layout.n, std::move(bands));
}

void toda_rates(const HessenbergLayout& layout, std::span<const Scalar> flat, std::span<Scalar> out)
{
    for (int d = 0; d <= layout.p; ++d) {
        for (int j = 0; j + d < layout.n; ++j) {
            const int i = j + d;
            const Scalar value = (layout.read(flat, i, i) - layout.read(flat, j, j)) * layout.read(flat, i, j)
                                 + layout.read(flat, i + 1, j) - layout.read(flat, i, j - 1);
            out[layout.offsets[static_cast<std::size_t>(d)] + static_cast<std::size_t>(j)] = value;
        }
    }
}

void kdv_rates(int p, std::span<const Scalar> gamma, std::span<Scalar> out)
{
    const long count = static_cast<long>(gamma.size());
    auto at = [&](long n) { return n >= 1 && n <= count ? gamma[static_cast<std::size_t>(n - 1)] : Scalar{}; };
    for (long n = 1; n <= count; ++n) {
        Scalar ahead{};
        Scalar behind{};
        for (int i = 1; i <= p; ++i) {
            ahead += at(n + i);
            behind += at(n - i);
        }
        out[static_cast<std::size_t>(n - 1)] = at(n) * (ahead - behind);
    }
}

template <class Rhs>
std::vector<std::vector<Scalar>> integrate_rk4(std::vector<Scalar> y, double dt, int steps, double t0, Rhs&& rhs)
{
    if (!(dt > 0.0) || steps < 1) {
        throw Error(ErrorCode::InvalidArgument, "evolve: need dt > 0 and steps >= 1");
    }
    const std::size_t size = y.size();
    std::vector<std::vector<Scalar>> states;
    states.reserve(static_cast<std::size_t>(steps) + 1);
    states.push_back(y);
    std::vector<Scalar> k1(size), k2(size), k3(size), k4(size), tmp(size);
    for (int step = 0; step < steps; ++step) {
        rhs(y, k1);
        for (std::size_t e = 0; e < size; ++e) tmp[e] = y[e] + 0.5 * dt * k1[e];
        rhs(tmp, k2);
        for (std::size_t e = 0; e < size; ++e) tmp[e] = y[e] + 0.5 * dt * k2[e];
        rhs(tmp, k3);
        for (std::size_t e = 0; e < size; ++e) tmp[e] = y[e] + dt * k3[e];
        rhs(tmp, k4);
        for (std::size_t e = 0; e < size; ++e) {
            y[e] += dt / 6.0 * (k1[e] + 2.0 * k2[e] + 2.0 * k3[e] + k4[e]);
            if (!finite(y[e])) {
                std::ostringstream msg;
                msg << "evolve: state left the finite range after t = " << t0 + step * dt;
                throw Error(ErrorCode::BlowUp, msg.str(), step);
            }
        }
        states.push_back(y);
    }
    return states;
}

std::vector<double> sample_times(double t0, double dt, std::size_t samples)
{
    std::vector<double> times;
    times.reserve(samples);
    for (std::size_t m = 0; m < samples; ++m) {
        times.push_back(t0 + static_cast<double>(m) * dt);
    }
    return times;
}

void require_samples(std::size_t samples)
{
    if (samples < 3) {
        throw Error(ErrorCode::InsufficientSamples,
                    "verify: need at least 3 samples, got " + std::to_string(samples),
                    static_cast<long>(samples));
    }
}

void record(ResidualReport& report, double value, const std::string& entry, std::size_t time)
{
    if (value > report.max_residual || std::isnan(value)) {
        report.max_residual = value;
        report.argmax_entry = entry;
        report.argmax_time = time;
    }
}

std::string matrix_entry(int i, int j) { return "a[" + std::to_string(i) + "," + std::to_string(j) + "]"; }

void finish(ResidualReport& report) { report.pass = report.max_residual <= report.tolerance; }

} // namespace

Bands toda_rhs(const BandedHessenberg& matrix)
{
    const HessenbergLayout layout(matrix.p(), matrix.size());
    const std::vector<Scalar> flat = flatten(matrix);
    std::vector<Scalar> out(flat.size());
    toda_rates(layout, flat, out);
    return unflatten(layout, out).bands();
}

std::vector<Scalar> kdv_rhs(const GammaTable& table)
{
    std::vector<Scalar> out(table.values().size());
    kdv_rates(table.p(), table.values(), out);
    return out;
}

TodaTrajectory evolve_toda(const BandedHessenberg& initial, double dt, int steps, double t0)
{
    const HessenbergLayout layout(initial.p(), initial.size());
    auto flat_states = integrate_rk4(flatten(initial), dt, steps, t0,
                                     [&](std::span<const Scalar> y, std::span<Scalar> out) { toda_rates(layout, y, out); });
    TodaTrajectory traj;
    traj.dt = dt;
    traj.times = sample_times(t0, dt, flat_states.size());
    traj.states.reserve(flat_states.size());
    for (const auto& s : flat_states) {
        traj.states.push_back(unflatten(layout, s));
    }
    return traj;
}

KdvTrajectory evolve_kdv(const GammaTable& initial, double dt, int steps, double t0)
{
    const int p = initial.p();
    std::vector<Scalar> y(initial.values().begin(), initial.values().end());
    auto flat_states = integrate_rk4(std::move(y), dt, steps, t0,
                                     [&](std::span<const Scalar> g, std::span<Scalar> out) { kdv_rates(p, g, out); });
    KdvTrajectory traj;
    traj.dt = dt;
    traj.times = sample_times(t0, dt, flat_states.size());
    traj.states.reserve(flat_states.size());
    for (auto& s : flat_states) {
        traj.states.emplace_back(p, initial.columns(), std::move(s));
    }
    return traj;
}

ResidualReport verify_toda(const TodaTrajectory& trajectory, double tol, int window)
{
    require_samples(trajectory.samples());
    ResidualReport report{"toda", 0.0, "", 0, tol, true};
    const int n = trajectory.states.front().size();
    const int p = trajectory.states.front().p();
    const int rows = window > 0 ? std::min(window, n) : n;
    for (std::size_t m = 1; m + 1 < trajectory.samples(); ++m) {
        const double span = trajectory.times[m + 1] - trajectory.times[m - 1];
        const Bands rates = toda_rhs(trajectory.states[m]);
        const auto& before = trajectory.states[m - 1];
        const auto& after = trajectory.states[m + 1];
        for (int d = 0; d <= p; ++d) {
            for (int j = 0; j + d + 1 < rows; ++j) {
                const int i = j + d;
                const Scalar difference = (after(i, j) - before(i, j)) / span;
                const Scalar rate = rates[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
                record(report, std::abs(difference - rate), matrix_entry(i, j), m);
            }
        }
    }
    finish(report);
    return report;
}

ResidualReport verify_kdv(const KdvTrajectory& trajectory, double tol, long limit)
{
    require_samples(trajectory.samples());
    ResidualReport report{"kdv", 0.0, "", 0, tol, true};
    const GammaTable& first = trajectory.states.front();
    const int p = first.p();
    const long count = first.count();
    const long last = (limit > 0 ? std::min(limit, count) : count) - p;
    for (std::size_t m = 1; m + 1 < trajectory.samples(); ++m) {
        const double span = trajectory.times[m + 1] - trajectory.times[m - 1];
        const std::vector<Scalar> rates = kdv_rhs(trajectory.states[m]);
        for (long n = 1; n <= last; ++n) {
            const Scalar difference =
                (trajectory.states[m + 1].value_or_zero(n) - trajectory.states[m - 1].value_or_zero(n)) / span;
            record(report, std::abs(difference - rates[static_cast<std::size_t>(n - 1)]),
                   "g[" + std::to_string(n) + "]", m);
        }
    }
    finish(report);
    return report;
}

ResidualReport compare_paths(const TodaTrajectory& a, const TodaTrajectory& b, int rows, double tol, std::string name)
{
    if (a.samples() != b.samples()) {
        throw Error(ErrorCode::Size, "compare_paths: trajectories have different sample counts");
    }
    ResidualReport report{std::move(name), 0.0, "", 0, tol, true};
    for (std::size_t m = 0; m < a.samples(); ++m) {
        const auto& x = a.states[m];
        const auto& y = b.states[m];
        const int p = std::max(x.p(), y.p());
        const int limit = std::min({rows, x.size(), y.size()});
        for (int i = 0; i < limit; ++i) {
            for (int j = std::max(0, i - p); j <= i; ++j) {
                record(report, std::abs(x(i, j) - y(i, j)), matrix_entry(i, j), m);
            }
        }
    }
    finish(report);
    return report;
}

double check_poly_derivative(const BandedHessenberg& matrix, const Bands& rates, Scalar z, int m)
{
    const int n = matrix.size();
    const int p = matrix.p();
    if (m < 0 || m > n - 1) {
        throw Error(ErrorCode::Size, "check_poly_derivative: m must lie in [0, n - 1]", m);
    }
    auto rate = [&](int i, int j) {
        const int d = i - j;
        return d >= 0 && d <= p && j >= 0 ? rates[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)] : Scalar{};
    };
    const auto at = [](const std::vector<Scalar>& v, int k) { return v[static_cast<std::size_t>(k)]; };

    std::vector<Scalar> poly(static_cast<std::size_t>(m) + 2);
    std::vector<Scalar> dpoly(static_cast<std::size_t>(m) + 2);
    poly[0] = 1.0;
    for (int k = 0; k <= m; ++k) {
        Scalar next = -(matrix(k, k) - z) * at(poly, k);
        Scalar dnext = -rate(k, k) * at(poly, k) - (matrix(k, k) - z) * at(dpoly, k);
        for (int i = std::max(0, k - p); i < k; ++i) {
            next -= matrix(k, i) * at(poly, i);
            dnext -= rate(k, i) * at(poly, i) + matrix(k, i) * at(dpoly, i);
        }
        poly[static_cast<std::size_t>(k) + 1] = next;
        dpoly[static_cast<std::size_t>(k) + 1] = dnext;
    }

    double worst = 0.0;
    for (int k = 0; k <= m; ++k) {
        Scalar band_form{};
        double scale = 1.0 + std::abs(at(poly, k + 1)) + std::abs((matrix(k, k) - z) * at(poly, k));
        for (int i = std::max(0, k - p); i < k; ++i) {
            band_form -= matrix(k, i) * at(poly, i);
            scale += std::abs(matrix(k, i) * at(poly, i));
        }
        const Scalar shifted_form = (matrix(k, k) - z) * at(poly, k) + at(poly, k + 1);
        const Scalar direct = at(dpoly, k);
        worst = std::max({worst, std::abs(direct - band_form) / scale, std::abs(direct - shifted_form) / scale});
    }
    return worst;
}

double check_delta_derivative(const GammaTable& table, std::span<const Scalar> rates)
{
    const int p = table.p();
    const long count = table.count();
    if (static_cast<long>(rates.size()) != count) {
        throw Error(ErrorCode::Size, "check_delta_derivative: rates must match the table");
    }
    const long pl = p;
    double worst = 0.0;
    for (long i = 1;; ++i) {
        if ((i - 1) * pl + i + p > count) {
            break;
        }
        for (long k = -1; k <= p - 2; ++k) {
            if ((k + i) * pl + i + p > count) {
                break;
            }
            std::vector<long> factors;
            for (long t = i - 1; t <= k + i; ++t) {
                factors.push_back(t * pl + i);
            }
            Scalar delta{1.0, 0.0};
            for (long f : factors) {
                delta *= table[f];
            }
            Scalar product_rule{};
            double scale = 1.0;
            for (std::size_t a = 0; a < factors.size(); ++a) {
                Scalar term = rates[static_cast<std::size_t>(factors[a] - 1)];
                for (std::size_t b = 0; b < factors.size(); ++b) {
                    if (b != a) {
                        term *= table[factors[b]];
                    }
                }
                product_rule += term;
                scale += std::abs(term);
            }
            Scalar ahead{};
            Scalar behind{};
            double bracket = 0.0;
            for (int j = 0; j <= p; ++j) {
                ahead += table.value_or_zero((k + i) * pl + i + j);
                behind += table.value_or_zero((i - 2) * pl + i + j);
                bracket += std::abs(table.value_or_zero((k + i) * pl + i + j))
                           + std::abs(table.value_or_zero((i - 2) * pl + i + j));
            }
            const Scalar closed = delta * (ahead - behind);
            scale += std::abs(delta) * bracket;
            worst = std::max(worst, std::abs(product_rule - closed) / scale);
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------

int diagram_working_size(int p, int window, int pad) noexcept
{
    return window + 1 + pad + p;
}

DiagramReport theorem1_diagram(const BandedHessenberg& initial, Scalar shift, const std::optional<ParameterSet>& params,
                               Rng& rng, const DiagramOptions& options)
{
    const int p = initial.p();
    const int window = options.window;
    if (window < 1) {
        throw Error(ErrorCode::InvalidArgument, "theorem1_diagram: window must be positive");
    }
    const int needed = diagram_working_size(p, window, options.pad);
    if (initial.size() < needed) {
        throw Error(ErrorCode::Size, "theorem1_diagram: J(t0) has " + std::to_string(initial.size())
                                         + " rows, need " + std::to_string(needed),
                    needed);
    }

    FullFactorization full = factorize_full(initial, shift, params, rng, options.factorization);
    DiagramReport out;
    out.params = full.params;

    // Pure factorization round trip at t0.
    {
        ResidualReport r{"reconstruction_t0", 0.0, "", 0, kAlgebraicTolerance, true};
        const BandedHessenberg rebuilt = backlund_transform(full.table, 0, shift, window);
        for (int i = 0; i < window; ++i) {
            for (int j = std::max(0, i - p); j <= i; ++j) {
                record(r, std::abs(rebuilt(i, j) - initial(i, j)), matrix_entry(i, j), 0);
            }
        }
        finish(r);
        out.reports.push_back(std::move(r));
    }
    if (options.steps < 1) {
        return out;
    }

    KdvTrajectory gammas;
    TodaTrajectory direct;
    try {
        gammas = evolve_kdv(full.table, options.dt, options.steps);
    } catch (const Error& e) {
        throw e.with_stage("kdv evolution");
    }
    try {
        direct = evolve_toda(initial, options.dt, options.steps);
    } catch (const Error& e) {
        throw e.with_stage("toda evolution");
    }

    std::vector<TodaTrajectory> transforms(static_cast<std::size_t>(p) + 1);
    for (int j = 0; j <= p; ++j) {
        auto& traj = transforms[static_cast<std::size_t>(j)];
        traj.dt = gammas.dt;
        traj.times = gammas.times;
        for (const auto& state : gammas.states) {
            traj.states.push_back(backlund_transform(state, j, shift, window + 1));
        }
    }

    out.reports.push_back(compare_paths(transforms[0], direct, window, options.tol_path, "path_J0"));
    if (gammas.samples() < 3) {
        return out;
    }
    for (int j = 0; j <= p; ++j) {
        ResidualReport r = verify_toda(transforms[static_cast<std::size_t>(j)], options.tol_verify, window + 1);
        r.name = "toda_J" + std::to_string(j);
        out.reports.push_back(std::move(r));
    }
    ResidualReport k = verify_kdv(gammas, options.tol_verify, static_cast<long>(p + 1) * (window + 1));
    k.name = "kdv_gamma";
    out.reports.push_back(std::move(k));
    return out;
}

} // namespace toda_darboux
