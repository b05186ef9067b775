#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace toda_darboux {

using Scalar = std::complex<double>;
using Rng = std::mt19937_64;

enum class Mode { real, complex };

/// Draws a value with modulus uniform in [1, 2] and a random sign (real
/// mode) or a uniformly random phase (complex mode).
Scalar draw_annulus(Rng& rng, Mode mode);

/// Number of leading rows of a truncated product that agree with the
/// product of the underlying infinite matrices.
struct ValidWindow {
    int rows = 0;

    friend bool operator==(ValidWindow, ValidWindow) = default;
};

/// Square n x n truncation of an infinite band matrix with `lower`
/// subdiagonals and `upper` superdiagonals. Storage is one array per
/// diagonal; diagonal d = j - i has n - |d| entries indexed by min(i, j).
class BandMatrix {
public:
    BandMatrix(int n, int lower, int upper);

    int size() const noexcept { return n_; }
    int lower() const noexcept { return lower_; }
    int upper() const noexcept { return upper_; }

    bool in_band(int i, int j) const noexcept
    {
        return i >= 0 && j >= 0 && i < n_ && j < n_ && i - j <= lower_ && j - i <= upper_;
    }

    /// Zero outside the band.
    Scalar operator()(int i, int j) const noexcept
    {
        if (!in_band(i, j)) {
            return {};
        }
        return diags_[static_cast<std::size_t>(j - i + lower_)][static_cast<std::size_t>(std::min(i, j))];
    }

    void set(int i, int j, Scalar value);

    std::span<const Scalar> diagonal(int offset) const;

private:
    int n_;
    int lower_;
    int upper_;
    std::vector<std::vector<Scalar>> diags_;
};

/// The (p+2)-banded lower Hessenberg matrix: entries a(i, j) for
/// i - p <= j <= i, an implicit unit superdiagonal, zero elsewhere.
class BandedHessenberg {
public:
    /// bands[d] holds a(i, i - d) for i = d .. n-1.
    BandedHessenberg(int p, int n, std::vector<std::vector<Scalar>> bands);

    static BandedHessenberg zeros(int p, int n);

    template <class F>
    static BandedHessenberg generate(int p, int n, F&& entry)
    {
        std::vector<std::vector<Scalar>> bands(static_cast<std::size_t>(p) + 1);
        for (int d = 0; d <= p; ++d) {
            for (int i = d; i < n; ++i) {
                bands[static_cast<std::size_t>(d)].push_back(entry(i, i - d));
            }
        }
        return BandedHessenberg(p, n, std::move(bands));
    }

    int p() const noexcept { return p_; }
    int size() const noexcept { return n_; }

    Scalar operator()(int i, int j) const noexcept
    {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) {
            return {};
        }
        if (j == i + 1) {
            return {1.0, 0.0};
        }
        const int d = i - j;
        if (d < 0 || d > p_) {
            return {};
        }
        return bands_[static_cast<std::size_t>(d)][static_cast<std::size_t>(j)];
    }

    std::span<const Scalar> band(int d) const;
    const std::vector<std::vector<Scalar>>& bands() const noexcept { return bands_; }

    /// a(p + i, i) != 0 for every stored i.
    bool regular() const noexcept { return regular_; }

    /// Largest entry modulus, including the unit superdiagonal.
    double max_modulus() const noexcept;

    BandMatrix to_band() const;

    /// Reads the lower p+1 bands of `m`. The superdiagonal of `m` is
    /// expected to be 1 and is not stored.
    static BandedHessenberg from_band(const BandMatrix& m, int p);

private:
    int p_;
    int n_;
    std::vector<std::vector<Scalar>> bands_;
    bool regular_ = false;
};

/// Unit lower triangular matrix with p subdiagonals; bands[d-1] holds
/// l(i, i - d) for i = d .. n-1.
class UnitLowerBanded {
public:
    UnitLowerBanded(int p, int n, std::vector<std::vector<Scalar>> bands);

    int p() const noexcept { return p_; }
    int size() const noexcept { return n_; }

    Scalar operator()(int i, int j) const noexcept
    {
        if (i < 0 || j < 0 || i >= n_ || j >= n_ || j > i) {
            return {};
        }
        if (i == j) {
            return {1.0, 0.0};
        }
        const int d = i - j;
        if (d > p_) {
            return {};
        }
        return bands_[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(j)];
    }

    std::span<const Scalar> band(int d) const;

    BandMatrix to_band() const;
    static UnitLowerBanded from_band(const BandMatrix& m, int p);

private:
    int p_;
    int n_;
    std::vector<std::vector<Scalar>> bands_;
};

enum class BidiagonalKind { upper, lower };

/// Upper kind: free diagonal, unit superdiagonal.
/// Lower kind: unit diagonal, free subdiagonal.
class Bidiagonal {
public:
    /// `values` has n entries for the upper kind, n - 1 for the lower kind.
    Bidiagonal(BidiagonalKind kind, int n, std::vector<Scalar> values);

    BidiagonalKind kind() const noexcept { return kind_; }
    int size() const noexcept { return n_; }
    std::span<const Scalar> values() const noexcept { return values_; }

    Scalar operator()(int i, int j) const noexcept;

    BandMatrix to_band() const;

private:
    BidiagonalKind kind_;
    int n_;
    std::vector<Scalar> values_;
};

inline BandMatrix to_band(const BandMatrix& m) { return m; }
inline BandMatrix to_band(const BandedHessenberg& m) { return m.to_band(); }
inline BandMatrix to_band(const UnitLowerBanded& m) { return m.to_band(); }
inline BandMatrix to_band(const Bidiagonal& m) { return m.to_band(); }

inline ValidWindow full_window(int n) { return ValidWindow{n}; }

/// Leading m x m block. Throws Size when m == 0 or m > size.
BandMatrix truncate(const BandMatrix& m, int size);
BandedHessenberg truncate(const BandedHessenberg& m, int size);
UnitLowerBanded truncate(const UnitLowerBanded& m, int size);
Bidiagonal truncate(const Bidiagonal& m, int size);

struct WindowedProduct {
    BandMatrix matrix;
    ValidWindow window;
};

/// Truncated product a * b. Row i of the product only involves rows
/// k <= i + a.upper() of b, so the certified window is
/// min(wa, wb - a.upper()), clamped at 0.
WindowedProduct multiply(const BandMatrix& a, const BandMatrix& b, ValidWindow wa, ValidWindow wb);

inline WindowedProduct multiply(const BandMatrix& a, const BandMatrix& b)
{
    return multiply(a, b, full_window(a.size()), full_window(b.size()));
}

/// Max |a(i, j) - b(i, j)| over rows i < window.rows and all columns.
double residual(const BandMatrix& a, const BandMatrix& b, ValidWindow window);

BandedHessenberg random_hessenberg(int p, int n, std::uint64_t seed, Mode mode);

} // namespace toda_darboux
