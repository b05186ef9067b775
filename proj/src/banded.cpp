#include "toda_darboux/banded.hpp"

#include "toda_darboux/error.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace toda_darboux {

namespace {

bool finite(Scalar v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

void require_finite(const std::vector<std::vector<Scalar>>& bands, const char* what)
{
    for (const auto& band : bands) {
        for (Scalar v : band) {
            if (!finite(v)) {
                throw Error(ErrorCode::InvalidArgument, std::string(what) + ": non-finite entry");
            }
        }
    }
}

void require_band_lengths(const std::vector<std::vector<Scalar>>& bands, int n, int first_offset,
                          const char* what)
{
    for (std::size_t k = 0; k < bands.size(); ++k) {
        const int d = first_offset + static_cast<int>(k);
        const auto expected = static_cast<std::size_t>(std::max(0, n - d));
        if (bands[k].size() != expected) {
            throw Error(ErrorCode::Size, std::string(what) + ": band " + std::to_string(-d) + " has "
                                             + std::to_string(bands[k].size()) + " entries, expected "
                                             + std::to_string(expected));
        }
    }
}

void check_truncation(int size, int n)
{
    if (size <= 0 || size > n) {
        throw Error(ErrorCode::Size,
                    "truncate: size " + std::to_string(size) + " outside [1, " + std::to_string(n) + "]", size);
    }
}

} // namespace

Scalar draw_annulus(Rng& rng, Mode mode)
{
    std::uniform_real_distribution<double> modulus(1.0, 2.0);
    const double r = modulus(rng);
    if (mode == Mode::real) {
        std::bernoulli_distribution sign(0.5);
        return {sign(rng) ? r : -r, 0.0};
    }
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    return std::polar(r, phase(rng));
}

// ---------------------------------------------------------------------------
// BandMatrix

BandMatrix::BandMatrix(int n, int lower, int upper) : n_(n), lower_(lower), upper_(upper)
{
    if (n <= 0 || lower < 0 || upper < 0) {
        throw Error(ErrorCode::Size, "BandMatrix: invalid shape");
    }
    lower_ = std::min(lower_, n_ - 1);
    upper_ = std::min(upper_, n_ - 1);
    diags_.resize(static_cast<std::size_t>(lower_ + upper_ + 1));
    for (int d = -lower_; d <= upper_; ++d) {
        diags_[static_cast<std::size_t>(d + lower_)].assign(static_cast<std::size_t>(n_ - std::abs(d)), Scalar{});
    }
}

void BandMatrix::set(int i, int j, Scalar value)
{
    if (!in_band(i, j)) {
        throw Error(ErrorCode::Index, "BandMatrix::set: (" + std::to_string(i) + ", " + std::to_string(j)
                                          + ") outside band");
    }
    diags_[static_cast<std::size_t>(j - i + lower_)][static_cast<std::size_t>(std::min(i, j))] = value;
}

std::span<const Scalar> BandMatrix::diagonal(int offset) const
{
    if (offset < -lower_ || offset > upper_) {
        return {};
    }
    return diags_[static_cast<std::size_t>(offset + lower_)];
}

// ---------------------------------------------------------------------------
// BandedHessenberg

BandedHessenberg::BandedHessenberg(int p, int n, std::vector<std::vector<Scalar>> bands)
    : p_(p), n_(n), bands_(std::move(bands))
{
    if (p < 1 || n < 1) {
        throw Error(ErrorCode::Size, "BandedHessenberg: need p >= 1 and n >= 1");
    }
    if (bands_.size() != static_cast<std::size_t>(p) + 1) {
        throw Error(ErrorCode::Size, "BandedHessenberg: expected p + 1 bands");
    }
    require_band_lengths(bands_, n_, 0, "BandedHessenberg");
    require_finite(bands_, "BandedHessenberg");
    regular_ = true;
    for (Scalar v : bands_.back()) {
        if (std::abs(v) == 0.0) {
            regular_ = false;
        }
    }
}

BandedHessenberg BandedHessenberg::zeros(int p, int n)
{
    return generate(p, n, [](int, int) { return Scalar{}; });
}

std::span<const Scalar> BandedHessenberg::band(int d) const
{
    if (d < 0 || d > p_) {
        return {};
    }
    return bands_[static_cast<std::size_t>(d)];
}

double BandedHessenberg::max_modulus() const noexcept
{
    double m = n_ > 1 ? 1.0 : 0.0;
    for (const auto& band : bands_) {
        for (Scalar v : band) {
            m = std::max(m, std::abs(v));
        }
    }
    return m;
}

BandMatrix BandedHessenberg::to_band() const
{
    BandMatrix m(n_, p_, 1);
    for (int i = 0; i < n_; ++i) {
        for (int j = std::max(0, i - p_); j <= std::min(i + 1, n_ - 1); ++j) {
            m.set(i, j, (*this)(i, j));
        }
    }
    return m;
}

BandedHessenberg BandedHessenberg::from_band(const BandMatrix& m, int p)
{
    return generate(p, m.size(), [&](int i, int j) { return m(i, j); });
}

// ---------------------------------------------------------------------------
// UnitLowerBanded

UnitLowerBanded::UnitLowerBanded(int p, int n, std::vector<std::vector<Scalar>> bands)
    : p_(p), n_(n), bands_(std::move(bands))
{
    if (p < 1 || n < 1) {
        throw Error(ErrorCode::Size, "UnitLowerBanded: need p >= 1 and n >= 1");
    }
    if (bands_.size() != static_cast<std::size_t>(p)) {
        throw Error(ErrorCode::Size, "UnitLowerBanded: expected p bands");
    }
    require_band_lengths(bands_, n_, 1, "UnitLowerBanded");
    require_finite(bands_, "UnitLowerBanded");
}

std::span<const Scalar> UnitLowerBanded::band(int d) const
{
    if (d < 1 || d > p_) {
        return {};
    }
    return bands_[static_cast<std::size_t>(d - 1)];
}

BandMatrix UnitLowerBanded::to_band() const
{
    BandMatrix m(n_, p_, 0);
    for (int i = 0; i < n_; ++i) {
        for (int j = std::max(0, i - p_); j <= i; ++j) {
            m.set(i, j, (*this)(i, j));
        }
    }
    return m;
}

UnitLowerBanded UnitLowerBanded::from_band(const BandMatrix& m, int p)
{
    std::vector<std::vector<Scalar>> bands(static_cast<std::size_t>(p));
    for (int d = 1; d <= p; ++d) {
        for (int i = d; i < m.size(); ++i) {
            bands[static_cast<std::size_t>(d - 1)].push_back(m(i, i - d));
        }
    }
    return UnitLowerBanded(p, m.size(), std::move(bands));
}

// ---------------------------------------------------------------------------
// Bidiagonal

Bidiagonal::Bidiagonal(BidiagonalKind kind, int n, std::vector<Scalar> values)
    : kind_(kind), n_(n), values_(std::move(values))
{
    if (n < 1) {
        throw Error(ErrorCode::Size, "Bidiagonal: need n >= 1");
    }
    const auto expected = static_cast<std::size_t>(kind == BidiagonalKind::upper ? n : n - 1);
    if (values_.size() != expected) {
        throw Error(ErrorCode::Size, "Bidiagonal: expected " + std::to_string(expected) + " free entries, got "
                                         + std::to_string(values_.size()));
    }
    require_finite({values_}, "Bidiagonal");
}

Scalar Bidiagonal::operator()(int i, int j) const noexcept
{
    if (i < 0 || j < 0 || i >= n_ || j >= n_) {
        return {};
    }
    if (kind_ == BidiagonalKind::upper) {
        if (i == j) {
            return values_[static_cast<std::size_t>(i)];
        }
        return j == i + 1 ? Scalar{1.0, 0.0} : Scalar{};
    }
    if (i == j) {
        return {1.0, 0.0};
    }
    return i == j + 1 ? values_[static_cast<std::size_t>(j)] : Scalar{};
}

BandMatrix Bidiagonal::to_band() const
{
    const bool upper = kind_ == BidiagonalKind::upper;
    BandMatrix m(n_, upper ? 0 : 1, upper ? 1 : 0);
    for (int i = 0; i < n_; ++i) {
        m.set(i, i, (*this)(i, i));
        if (upper && i + 1 < n_) {
            m.set(i, i + 1, (*this)(i, i + 1));
        }
        if (!upper && i > 0) {
            m.set(i, i - 1, (*this)(i, i - 1));
        }
    }
    return m;
}

// ---------------------------------------------------------------------------
// Operations

BandMatrix truncate(const BandMatrix& m, int size)
{
    check_truncation(size, m.size());
    BandMatrix out(size, m.lower(), m.upper());
    for (int i = 0; i < size; ++i) {
        for (int j = std::max(0, i - out.lower()); j <= std::min(size - 1, i + out.upper()); ++j) {
            out.set(i, j, m(i, j));
        }
    }
    return out;
}

BandedHessenberg truncate(const BandedHessenberg& m, int size)
{
    check_truncation(size, m.size());
    return BandedHessenberg::generate(m.p(), size, [&](int i, int j) { return m(i, j); });
}

UnitLowerBanded truncate(const UnitLowerBanded& m, int size)
{
    check_truncation(size, m.size());
    return UnitLowerBanded::from_band(truncate(m.to_band(), size), m.p());
}

Bidiagonal truncate(const Bidiagonal& m, int size)
{
    check_truncation(size, m.size());
    const auto keep = static_cast<std::size_t>(m.kind() == BidiagonalKind::upper ? size : size - 1);
    std::vector<Scalar> values(m.values().begin(), m.values().begin() + static_cast<std::ptrdiff_t>(keep));
    return Bidiagonal(m.kind(), size, std::move(values));
}

WindowedProduct multiply(const BandMatrix& a, const BandMatrix& b, ValidWindow wa, ValidWindow wb)
{
    if (a.size() != b.size()) {
        throw Error(ErrorCode::Size, "multiply: size mismatch " + std::to_string(a.size()) + " vs "
                                         + std::to_string(b.size()));
    }
    const int n = a.size();
    BandMatrix c(n, a.lower() + b.lower(), a.upper() + b.upper());
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(0, i - c.lower()); j <= std::min(n - 1, i + c.upper()); ++j) {
            const int k_lo = std::max({0, i - a.lower(), j - b.upper()});
            const int k_hi = std::min({n - 1, i + a.upper(), j + b.lower()});
            Scalar sum{};
            for (int k = k_lo; k <= k_hi; ++k) {
                sum += a(i, k) * b(k, j);
            }
            c.set(i, j, sum);
        }
    }
    const int rows = std::max(0, std::min(wa.rows, wb.rows - a.upper()));
    return {std::move(c), ValidWindow{std::min(rows, n)}};
}

double residual(const BandMatrix& a, const BandMatrix& b, ValidWindow window)
{
    const int n = std::min(a.size(), b.size());
    const int rows = std::min(window.rows, n);
    const int lower = std::max(a.lower(), b.lower());
    const int upper = std::max(a.upper(), b.upper());
    double worst = 0.0;
    for (int i = 0; i < rows; ++i) {
        for (int j = std::max(0, i - lower); j <= std::min(n - 1, i + upper); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

BandedHessenberg random_hessenberg(int p, int n, std::uint64_t seed, Mode mode)
{
    if (p < 1 || n <= p) {
        throw Error(ErrorCode::Size, "random_hessenberg: need n > p >= 1");
    }
    // Drawn row by row so that a smaller n yields the leading block of a
    // larger one with the same seed.
    Rng rng(seed);
    BandMatrix m(n, p, 0);
    for (int i = 0; i < n; ++i) {
        for (int j = std::max(0, i - p); j <= i; ++j) {
            m.set(i, j, draw_annulus(rng, mode));
        }
    }
    return BandedHessenberg::from_band(m, p);
}

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Size: return "SizeError";
    case ErrorCode::SingularLeadingMinor: return "SingularLeadingMinor";
    case ErrorCode::SamplingFailed: return "SamplingFailed";
    case ErrorCode::PeelBreakdown: return "PeelBreakdown";
    case ErrorCode::TableBreakdown: return "TableBreakdown";
    case ErrorCode::Index: return "IndexError";
    case ErrorCode::BlowUp: return "BlowUp";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::Parse: return "ParseError";
    }
    return "Unknown";
}

} // namespace toda_darboux
