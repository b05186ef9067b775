#include "toda_darboux/darboux.hpp"

#include "toda_darboux/error.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace toda_darboux {

namespace {

void append_tuples(int length, int lo, int hi, IndexTuple& prefix, std::vector<IndexTuple>& out)
{
    if (static_cast<int>(prefix.size()) == length) {
        out.push_back(prefix);
        return;
    }
    const int upper = prefix.empty() ? hi : prefix.back();
    for (int v = lo; v <= upper; ++v) {
        prefix.push_back(v);
        append_tuples(length, lo, hi, prefix, out);
        prefix.pop_back();
    }
}

std::vector<IndexTuple> weakly_decreasing(int length, int lo, int hi)
{
    std::vector<IndexTuple> out;
    if (length <= 0 || lo > hi) {
        return out;
    }
    IndexTuple prefix;
    prefix.reserve(static_cast<std::size_t>(length));
    append_tuples(length, lo, hi, prefix, out);
    return out;
}

// Gaussian elimination with partial pivoting on a row-major k x k copy.
Scalar dense_determinant(std::vector<Scalar> a, int k)
{
    Scalar det{1.0, 0.0};
    auto at = [&](int i, int j) -> Scalar& { return a[static_cast<std::size_t>(i * k + j)]; };
    for (int c = 0; c < k; ++c) {
        int best = c;
        for (int r = c + 1; r < k; ++r) {
            if (std::abs(at(r, c)) > std::abs(at(best, c))) {
                best = r;
            }
        }
        if (at(best, c) == Scalar{}) {
            return {};
        }
        if (best != c) {
            for (int j = 0; j < k; ++j) {
                std::swap(at(best, j), at(c, j));
            }
            det = -det;
        }
        det *= at(c, c);
        for (int r = c + 1; r < k; ++r) {
            const Scalar f = at(r, c) / at(c, c);
            for (int j = c; j < k; ++j) {
                at(r, j) -= f * at(c, j);
            }
        }
    }
    return det;
}

// margins[k-1] for k = 1 .. depth, from determinants[k-1][r].
std::vector<Scalar> margins_from_determinants(const std::vector<std::vector<Scalar>>& determinants,
                                              std::span<const Scalar> alphas)
{
    const int q = static_cast<int>(alphas.size()) + 1;
    std::vector<Scalar> coefficients(static_cast<std::size_t>(q));
    Scalar product{1.0, 0.0};
    for (int j = 0; j < q; ++j) {
        if (j > 0) {
            product *= alphas[static_cast<std::size_t>(q - j - 1)];
        }
        coefficients[static_cast<std::size_t>(j)] = (j % 2 == 0 ? 1.0 : -1.0) * product;
    }
    std::vector<Scalar> margins;
    margins.reserve(determinants.size());
    for (const auto& row : determinants) {
        Scalar sum{};
        for (int j = 0; j < q; ++j) {
            sum += coefficients[static_cast<std::size_t>(j)] * row[static_cast<std::size_t>(j)];
        }
        margins.push_back(sum);
    }
    return margins;
}

// Smallest of |m_k| and |m_k| / |m_{k-1}| over k; the acceptance statistic.
double tightest_margin(const std::vector<Scalar>& margins)
{
    double tightest = std::numeric_limits<double>::infinity();
    double previous = 1.0;
    for (Scalar m : margins) {
        const double a = std::abs(m);
        tightest = std::min({tightest, a, previous > 0.0 ? a / previous : 0.0});
        previous = a;
    }
    return tightest;
}

Bidiagonal deepest_band_as_factor(const UnitLowerBanded& t)
{
    const auto band = t.band(1);
    return Bidiagonal(BidiagonalKind::lower, t.size(), std::vector<Scalar>(band.begin(), band.end()));
}

void require_nonzero_deepest_band(const UnitLowerBanded& lower)
{
    const auto band = lower.band(lower.p());
    for (std::size_t j = 0; j < band.size(); ++j) {
        if (band[j] == Scalar{}) {
            throw Error(ErrorCode::InvalidArgument,
                        "darboux_factorize: deepest band entry l(" + std::to_string(j + static_cast<std::size_t>(lower.p()))
                            + ", " + std::to_string(j) + ") is zero",
                        static_cast<long>(j));
        }
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Index sets

std::vector<IndexTuple> enumerate_indices(int j, int k, int p)
{
    return weakly_decreasing(k + 1, j + k + 1, j + p + 1);
}

std::vector<IndexTuple> enumerate_indices_tilde(int k, int p)
{
    std::vector<IndexTuple> out;
    for (auto& tuple : weakly_decreasing(k + 3, k + 3, p + 1)) {
        if (tuple.back() < p + 1) {
            out.push_back(std::move(tuple));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// GammaTable / ParameterSet / DarbouxFactors

GammaTable::GammaTable(int p, int columns, std::vector<Scalar> gamma) : p_(p), columns_(columns), gamma_(std::move(gamma))
{
    if (p < 1 || columns < 0) {
        throw Error(ErrorCode::Size, "GammaTable: need p >= 1 and columns >= 0");
    }
    if (gamma_.size() != static_cast<std::size_t>(p + 1) * static_cast<std::size_t>(columns)) {
        throw Error(ErrorCode::Size, "GammaTable: expected (p + 1) * columns entries");
    }
    for (Scalar v : gamma_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw Error(ErrorCode::InvalidArgument, "GammaTable: non-finite entry");
        }
    }
}

Scalar GammaTable::operator[](long n) const
{
    if (n <= 0) {
        return {};
    }
    if (n > count()) {
        throw Error(ErrorCode::Index, "gamma_" + std::to_string(n) + " lies past the end of the table (count "
                                          + std::to_string(count()) + ")",
                    n);
    }
    return gamma_[static_cast<std::size_t>(n - 1)];
}

void ParameterSet::validate(int p) const
{
    if (alphas.size() != static_cast<std::size_t>(std::max(p - 1, 0))) {
        throw Error(ErrorCode::InvalidArgument, "ParameterSet: expected " + std::to_string(std::max(p - 1, 0))
                                                    + " stages for p = " + std::to_string(p));
    }
    for (int s = 0; s + 1 < p; ++s) {
        const auto& stage = alphas[static_cast<std::size_t>(s)];
        if (stage.size() != static_cast<std::size_t>(p - s - 1)) {
            throw Error(ErrorCode::InvalidArgument, "ParameterSet: stage " + std::to_string(s) + " needs "
                                                        + std::to_string(p - s - 1) + " values");
        }
        for (Scalar v : stage) {
            if (v == Scalar{} || !std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw Error(ErrorCode::InvalidArgument, "ParameterSet: values must be finite and nonzero");
            }
        }
    }
}

GammaTable DarbouxFactors::to_table() const
{
    const int n = size();
    const int p = this->p();
    for (const auto& f : lower) {
        if (f.size() != n) {
            throw Error(ErrorCode::Size, "DarbouxFactors: factor sizes differ");
        }
    }
    const int columns = n - 1;
    std::vector<Scalar> gamma(static_cast<std::size_t>((p + 1) * std::max(columns, 0)));
    for (int m = 0; m < columns; ++m) {
        gamma[static_cast<std::size_t>(GammaTable::index(p, 0, m) - 1)] = upper.values()[static_cast<std::size_t>(m)];
        for (int r = 1; r <= p; ++r) {
            gamma[static_cast<std::size_t>(GammaTable::index(p, r, m) - 1)] =
                lower[static_cast<std::size_t>(r - 1)].values()[static_cast<std::size_t>(m)];
        }
    }
    return GammaTable(p, std::max(columns, 0), std::move(gamma));
}

DarbouxFactors DarbouxFactors::from_table(const GammaTable& table, Scalar shift)
{
    const int n = table.columns();
    if (n < 1) {
        throw Error(ErrorCode::Size, "DarbouxFactors::from_table: empty table");
    }
    const int p = table.p();
    std::vector<Scalar> diag;
    for (int m = 0; m < n; ++m) {
        diag.push_back(table.entry(0, m));
    }
    std::vector<Bidiagonal> lower;
    for (int r = 1; r <= p; ++r) {
        std::vector<Scalar> sub;
        for (int m = 0; m + 1 < n; ++m) {
            sub.push_back(table.entry(r, m));
        }
        lower.emplace_back(BidiagonalKind::lower, n, std::move(sub));
    }
    return {Bidiagonal(BidiagonalKind::upper, n, std::move(diag)), std::move(lower), shift};
}

// ---------------------------------------------------------------------------
// Hyperplane conditions and sampling

int max_hyperplane_depth(const UnitLowerBanded& t) noexcept
{
    return t.size() - t.p() + 1;
}

Scalar hyperplane_determinant(const UnitLowerBanded& t, int r, int k)
{
    const int q = t.p();
    if (r < 0 || r > q - 1) {
        throw Error(ErrorCode::InvalidArgument, "hyperplane_determinant: r = " + std::to_string(r)
                                                    + " outside [0, " + std::to_string(q - 1) + "]");
    }
    if (k < 1 || k > max_hyperplane_depth(t)) {
        throw Error(ErrorCode::Index, "hyperplane_determinant: k = " + std::to_string(k) + " outside [1, "
                                          + std::to_string(max_hyperplane_depth(t)) + "]",
                    k);
    }
    std::vector<Scalar> a(static_cast<std::size_t>(k * k));
    for (int c = 0; c < k; ++c) {
        a[static_cast<std::size_t>(c)] = t(q - r - 1, c);
    }
    for (int s = 1; s < k; ++s) {
        for (int c = 0; c < k; ++c) {
            a[static_cast<std::size_t>(s * k + c)] = t(q + s - 1, c);
        }
    }
    return dense_determinant(std::move(a), k);
}

Scalar hyperplane_margin(const UnitLowerBanded& t, std::span<const Scalar> alphas, int k)
{
    const int q = t.p();
    if (static_cast<int>(alphas.size()) != q - 1) {
        throw Error(ErrorCode::InvalidArgument, "hyperplane_margin: expected " + std::to_string(q - 1) + " parameters");
    }
    std::vector<std::vector<Scalar>> determinants(1);
    for (int r = 0; r < q; ++r) {
        determinants[0].push_back(hyperplane_determinant(t, r, k));
    }
    return margins_from_determinants(determinants, alphas).front();
}

std::vector<Scalar> parameters_from_point(std::span<const Scalar> point)
{
    const int m = static_cast<int>(point.size());
    std::vector<Scalar> alphas(point.size());
    Scalar product{1.0, 0.0};
    for (int j = 1; j <= m; ++j) {
        // alpha_{q-j} with q - 1 = m lives at index m - j.
        const double sign = (j + 1) % 2 == 0 ? 1.0 : -1.0;
        const Scalar alpha = j == 1 ? point[0] : sign * point[static_cast<std::size_t>(j - 1)] / product;
        alphas[static_cast<std::size_t>(m - j)] = alpha;
        product *= alpha;
    }
    return alphas;
}

std::vector<Scalar> point_from_parameters(std::span<const Scalar> alphas)
{
    const int m = static_cast<int>(alphas.size());
    std::vector<Scalar> point(alphas.size());
    Scalar product{1.0, 0.0};
    for (int j = 1; j <= m; ++j) {
        product *= alphas[static_cast<std::size_t>(m - j)];
        point[static_cast<std::size_t>(j - 1)] = ((j + 1) % 2 == 0 ? 1.0 : -1.0) * product;
    }
    return point;
}

std::vector<Scalar> sample_parameters(const UnitLowerBanded& t, int depth, Rng& rng, const SamplingOptions& options)
{
    const int q = t.p();
    if (q <= 1) {
        return {};
    }
    depth = std::min(depth, max_hyperplane_depth(t));
    std::vector<std::vector<Scalar>> determinants;
    for (int k = 1; k <= depth; ++k) {
        std::vector<Scalar> row;
        for (int r = 0; r < q; ++r) {
            row.push_back(hyperplane_determinant(t, r, k));
        }
        determinants.push_back(std::move(row));
    }

    double best = 0.0;
    for (int attempt = 0; attempt < options.max_retries; ++attempt) {
        std::vector<Scalar> point;
        for (int j = 0; j < q - 1; ++j) {
            point.push_back(draw_annulus(rng, options.mode));
        }
        std::vector<Scalar> alphas = parameters_from_point(point);
        const double tightest = tightest_margin(margins_from_determinants(determinants, alphas));
        if (tightest > options.margin) {
            return alphas;
        }
        best = std::max(best, tightest);
    }
    std::ostringstream msg;
    msg << "sample_parameters: no point cleared margin " << options.margin << " in " << options.max_retries
        << " attempts (tightest margin seen " << best << ")";
    throw Error(ErrorCode::SamplingFailed, msg.str(), options.max_retries);
}

// ---------------------------------------------------------------------------
// Peeling and factorization

PeelResult peel(const UnitLowerBanded& t, std::span<const Scalar> alphas, double tol)
{
    const int q = t.p();
    const int n = t.size();
    if (q < 2) {
        throw Error(ErrorCode::InvalidArgument, "peel: input must have at least two subdiagonals");
    }
    if (static_cast<int>(alphas.size()) != q - 1) {
        throw Error(ErrorCode::InvalidArgument, "peel: expected " + std::to_string(q - 1) + " parameters, got "
                                                    + std::to_string(alphas.size()));
    }

    BandMatrix rest(n, q - 1, 0);
    std::vector<Scalar> factor(static_cast<std::size_t>(std::max(n - 1, 0)));
    rest.set(0, 0, 1.0);
    for (int i = 1; i < n; ++i) {
        Scalar alpha;
        if (i <= q - 1) {
            alpha = alphas[static_cast<std::size_t>(i - 1)];
        } else {
            // rest(i, i - q) must vanish: t(i, i - q) = alpha_i rest(i - 1, i - q).
            const Scalar divisor = rest(i - 1, i - q);
            if (!(std::abs(divisor) >= tol)) {
                throw Error(ErrorCode::PeelBreakdown,
                            "peel: divisor for row " + std::to_string(i) + " has modulus "
                                + std::to_string(std::abs(divisor)),
                            i);
            }
            alpha = t(i, i - q) / divisor;
        }
        factor[static_cast<std::size_t>(i - 1)] = alpha;
        rest.set(i, i, 1.0);
        for (int j = std::max(0, i - q + 1); j < i; ++j) {
            rest.set(i, j, t(i, j) - alpha * rest(i - 1, j));
        }
    }
    return {Bidiagonal(BidiagonalKind::lower, n, std::move(factor)), UnitLowerBanded::from_band(rest, q - 1)};
}

LowerFactorization darboux_factorize(const UnitLowerBanded& lower, const ParameterSet& params, double tol)
{
    const int p = lower.p();
    params.validate(p);
    require_nonzero_deepest_band(lower);
    LowerFactorization out{{}, params};
    UnitLowerBanded current = lower;
    for (int s = 0; s + 1 < p; ++s) {
        try {
            PeelResult step = peel(current, params.alphas[static_cast<std::size_t>(s)], tol);
            out.factors.push_back(std::move(step.factor));
            current = std::move(step.rest);
        } catch (const Error& e) {
            throw e.with_stage("peeling stage " + std::to_string(s));
        }
    }
    out.factors.push_back(deepest_band_as_factor(current));
    return out;
}

LowerFactorization darboux_factorize(const UnitLowerBanded& lower, Rng& rng, const SamplingOptions& options, int depth)
{
    const int p = lower.p();
    require_nonzero_deepest_band(lower);
    LowerFactorization out{{}, ParameterSet::empty(p)};
    UnitLowerBanded current = lower;
    for (int s = 0; s + 1 < p; ++s) {
        try {
            const int stage_depth = depth > 0 ? depth : max_hyperplane_depth(current);
            std::vector<Scalar> alphas = sample_parameters(current, stage_depth, rng, options);
            PeelResult step = peel(current, alphas, options.margin);
            out.params.alphas[static_cast<std::size_t>(s)] = std::move(alphas);
            out.factors.push_back(std::move(step.factor));
            current = std::move(step.rest);
        } catch (const Error& e) {
            throw e.with_stage("peeling stage " + std::to_string(s));
        }
    }
    out.factors.push_back(deepest_band_as_factor(current));
    return out;
}

// ---------------------------------------------------------------------------
// Table construction

GammaTable table_fill(std::span<const Scalar> pivots, const ParameterSet& params, const BandedHessenberg& matrix,
                      double tol)
{
    const int p = matrix.p();
    const int n = matrix.size();
    params.validate(p);
    const int columns = n - p;
    if (columns < 1) {
        throw Error(ErrorCode::Size, "table_fill: J must have more than p rows");
    }
    if (static_cast<int>(pivots.size()) < n - 1) {
        throw Error(ErrorCode::Size, "table_fill: need " + std::to_string(n - 1) + " pivots, got "
                                         + std::to_string(pivots.size()));
    }

    // The last diagonal reaches column columns + p - 2; the buffer holds
    // every column touched and is cut back to full columns at the end.
    const int buffer_columns = columns + p - 1;
    const long buffer = static_cast<long>(p + 1) * buffer_columns;
    std::vector<Scalar> gamma(static_cast<std::size_t>(buffer));
    std::vector<char> known(static_cast<std::size_t>(buffer), 0);
    auto put = [&](long idx, Scalar v) {
        gamma[static_cast<std::size_t>(idx - 1)] = v;
        known[static_cast<std::size_t>(idx - 1)] = 1;
    };
    auto get = [&](long idx) -> Scalar {
        if (idx <= 0) {
            return {};
        }
        if (idx > buffer || !known[static_cast<std::size_t>(idx - 1)]) {
            throw Error(ErrorCode::Index, "table_fill: gamma_" + std::to_string(idx) + " needed before it is known",
                        idx);
        }
        return gamma[static_cast<std::size_t>(idx - 1)];
    };

    for (int m = 0; m < std::min<int>(buffer_columns, static_cast<int>(pivots.size())); ++m) {
        put(GammaTable::index(p, 0, m), pivots[static_cast<std::size_t>(m)]);
    }
    for (int s = 0; s + 1 < p; ++s) {
        const auto& stage = params.alphas[static_cast<std::size_t>(s)];
        for (std::size_t idx = 0; idx < stage.size(); ++idx) {
            put(GammaTable::index(p, s + 1, static_cast<int>(idx)), stage[idx]);
        }
    }

    std::vector<std::vector<IndexTuple>> tilde;
    for (int k = -1; k <= p - 2; ++k) {
        tilde.push_back(enumerate_indices_tilde(k, p));
    }

    const long pl = p;
    for (int i = 1; i <= columns; ++i) {
        Scalar delta = get((i - 1) * pl + i);
        for (int k = -1; k <= p - 2; ++k) {
            if (!(std::abs(delta) >= tol)) {
                throw Error(ErrorCode::TableBreakdown,
                            "table_fill: delta for diagonal " + std::to_string(i) + ", step " + std::to_string(k)
                                + " has modulus " + std::to_string(std::abs(delta)),
                            i);
            }
            Scalar sum{};
            for (const IndexTuple& tuple : tilde[static_cast<std::size_t>(k + 1)]) {
                Scalar term{1.0, 0.0};
                for (std::size_t r = 0; r < tuple.size(); ++r) {
                    const long idx = (i - 2 + static_cast<long>(r)) * pl + i + tuple[r] - 1;
                    term *= get(idx);
                    if (term == Scalar{}) {
                        break;
                    }
                }
                sum += term;
            }
            const long target = (k + i + 1) * pl + i;
            const Scalar value = (matrix(k + i + 1, i - 1) - sum) / delta;
            put(target, value);
            delta *= value;
        }
    }

    gamma.resize(static_cast<std::size_t>(p + 1) * static_cast<std::size_t>(columns));
    return GammaTable(p, columns, std::move(gamma));
}

// ---------------------------------------------------------------------------
// Transforms

TransformResult assemble_transform(const DarbouxFactors& factors, int i)
{
    const int p = factors.p();
    if (i < 0 || i > p) {
        throw Error(ErrorCode::InvalidArgument,
                    "assemble_transform: i = " + std::to_string(i) + " outside [0, " + std::to_string(p) + "]", i);
    }
    std::vector<const Bidiagonal*> chain;
    for (int r = i + 1; r <= p; ++r) {
        chain.push_back(&factors.lower[static_cast<std::size_t>(r - 1)]);
    }
    chain.push_back(&factors.upper);
    for (int r = 1; r <= i; ++r) {
        chain.push_back(&factors.lower[static_cast<std::size_t>(r - 1)]);
    }
    const int n = factors.size();
    WindowedProduct acc{chain.front()->to_band(), full_window(n)};
    for (std::size_t idx = 1; idx < chain.size(); ++idx) {
        acc = multiply(acc.matrix, chain[idx]->to_band(), acc.window, full_window(n));
    }
    BandMatrix shifted = acc.matrix;
    for (int r = 0; r < n; ++r) {
        shifted.set(r, r, shifted(r, r) + factors.shift);
    }
    return {BandedHessenberg::from_band(shifted, p), acc.window};
}

Scalar backlund_entry(const GammaTable& table, int j, int row, int k, Scalar shift)
{
    const int p = table.p();
    if (j < 0 || j > p || k < 0 || k > p || row < 0) {
        throw Error(ErrorCode::InvalidArgument, "backlund_entry: need 0 <= j, k <= p and row >= 0");
    }
    const long pl = p;
    if (k == 0) {
        Scalar sum = shift;
        for (int s = j + 1; s <= j + p + 1; ++s) {
            sum += table[(row - 1) * pl + row + s];
        }
        return sum;
    }
    Scalar sum{};
    for (const IndexTuple& tuple : enumerate_indices(j, k, p)) {
        Scalar term{1.0, 0.0};
        for (std::size_t r = 0; r < tuple.size(); ++r) {
            term *= table[(row + static_cast<long>(r) - 1) * pl + tuple[r] + row];
        }
        sum += term;
    }
    return sum;
}

BandedHessenberg backlund_transform(const GammaTable& table, int j, Scalar shift, int rows)
{
    const int p = table.p();
    std::vector<std::vector<IndexTuple>> sets(static_cast<std::size_t>(p) + 1);
    for (int k = 1; k <= p; ++k) {
        sets[static_cast<std::size_t>(k)] = enumerate_indices(j, k, p);
    }
    const long pl = p;
    return BandedHessenberg::generate(p, rows, [&](int r, int c) {
        const int k = r - c;
        if (k == 0) {
            return backlund_entry(table, j, c, 0, shift);
        }
        Scalar sum{};
        for (const IndexTuple& tuple : sets[static_cast<std::size_t>(k)]) {
            Scalar term{1.0, 0.0};
            for (std::size_t s = 0; s < tuple.size(); ++s) {
                term *= table[(c + static_cast<long>(s) - 1) * pl + tuple[s] + c];
            }
            sum += term;
        }
        return sum;
    });
}

// ---------------------------------------------------------------------------

FullFactorization factorize_full(const BandedHessenberg& matrix, Scalar shift,
                                 const std::optional<ParameterSet>& params, Rng& rng,
                                 const FactorizationOptions& options)
{
    LuFactors lu = [&] {
        try {
            return lu_factorize({matrix, shift}, options.pivot_tol);
        } catch (const Error& e) {
            throw e.with_stage("lu");
        }
    }();
    LowerFactorization lower = params ? darboux_factorize(lu.lower, *params, options.sampling.margin)
                                      : darboux_factorize(lu.lower, rng, options.sampling);
    GammaTable table = [&] {
        try {
            return table_fill(lu.upper.values(), lower.params, matrix, options.pivot_tol);
        } catch (const Error& e) {
            throw e.with_stage("table");
        }
    }();
    DarbouxFactors factors{lu.upper, std::move(lower.factors), shift};
    return {std::move(lu), std::move(factors), std::move(lower.params), std::move(table)};
}

GammaTable random_gamma_table(int p, int columns, std::uint64_t seed, Mode mode, double upper_scale,
                              double lower_scale)
{
    if (p < 1 || columns < 1 || !(upper_scale > 0.0) || !(lower_scale > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "random_gamma_table: need p >= 1, columns >= 1 and positive scales");
    }
    Rng rng(seed);
    std::vector<Scalar> gamma(static_cast<std::size_t>(columns) * static_cast<std::size_t>(p + 1));
    for (int c = 0; c < columns; ++c) {
        for (int r = 0; r <= p; ++r) {
            const Scalar v = draw_annulus(rng, mode);
            gamma[static_cast<std::size_t>(GammaTable::index(p, r, c) - 1)] = (r == 0 ? upper_scale : lower_scale) * v;
        }
    }
    return GammaTable(p, columns, std::move(gamma));
}

ParameterSet parameters_from_table(const GammaTable& table)
{
    const int p = table.p();
    ParameterSet params = ParameterSet::empty(p);
    for (int s = 0; s + 2 <= p; ++s) {
        for (int i = 0; i < p - s - 1; ++i) {
            params.alphas[static_cast<std::size_t>(s)].push_back(table.entry(s + 1, i));
        }
    }
    return params;
}

} // namespace toda_darboux
