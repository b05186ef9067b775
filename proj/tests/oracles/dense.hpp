#pragma once

// Dense reference implementations used only by the tests. They share no
// code with the library beyond the Scalar type and the element accessors.

#include "toda_darboux/banded.hpp"

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using Scalar = std::complex<double>;

struct Dense {
    int n = 0;
    std::vector<Scalar> a;

    explicit Dense(int size) : n(size), a(static_cast<std::size_t>(size) * static_cast<std::size_t>(size)) {}

    Scalar& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }
    Scalar operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)]; }

    static Dense identity(int size)
    {
        Dense d(size);
        for (int i = 0; i < size; ++i) {
            d(i, i) = 1.0;
        }
        return d;
    }
};

// Anything with size() and operator()(i, j).
template <class M>
Dense dense(const M& m)
{
    Dense d(m.size());
    for (int i = 0; i < m.size(); ++i) {
        for (int j = 0; j < m.size(); ++j) {
            d(i, j) = m(i, j);
        }
    }
    return d;
}

inline Dense operator*(const Dense& x, const Dense& y)
{
    Dense out(x.n);
    for (int i = 0; i < x.n; ++i) {
        for (int k = 0; k < x.n; ++k) {
            const Scalar xik = x(i, k);
            if (xik == Scalar{}) {
                continue;
            }
            for (int j = 0; j < x.n; ++j) {
                out(i, j) += xik * y(k, j);
            }
        }
    }
    return out;
}

inline Dense leading(const Dense& x, int m)
{
    Dense out(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            out(i, j) = x(i, j);
        }
    }
    return out;
}

// Max |x - y| over rows < rows, all columns both matrices have.
inline double max_gap(const Dense& x, const Dense& y, int rows)
{
    double gap = 0.0;
    const int cols = std::min(x.n, y.n);
    for (int i = 0; i < rows && i < cols; ++i) {
        for (int j = 0; j < cols; ++j) {
            gap = std::max(gap, std::abs(x(i, j) - y(i, j)));
        }
    }
    return gap;
}

// Gaussian elimination with partial pivoting.
inline Scalar det(Dense x)
{
    Scalar result{1.0, 0.0};
    for (int c = 0; c < x.n; ++c) {
        int pivot = c;
        for (int r = c + 1; r < x.n; ++r) {
            if (std::abs(x(r, c)) > std::abs(x(pivot, c))) {
                pivot = r;
            }
        }
        if (x(pivot, c) == Scalar{}) {
            return {};
        }
        if (pivot != c) {
            for (int j = 0; j < x.n; ++j) {
                std::swap(x(pivot, j), x(c, j));
            }
            result = -result;
        }
        result *= x(c, c);
        for (int r = c + 1; r < x.n; ++r) {
            const Scalar f = x(r, c) / x(c, c);
            for (int j = c; j < x.n; ++j) {
                x(r, j) -= f * x(c, j);
            }
        }
    }
    return result;
}

// Laplace expansion along the first row; exponential, for k <= 6.
inline Scalar cofactor_det(const Dense& x)
{
    if (x.n == 0) {
        return {1.0, 0.0};
    }
    if (x.n == 1) {
        return x(0, 0);
    }
    Scalar sum{};
    for (int c = 0; c < x.n; ++c) {
        Dense minor(x.n - 1);
        for (int i = 1; i < x.n; ++i) {
            for (int j = 0, jj = 0; j < x.n; ++j) {
                if (j != c) {
                    minor(i - 1, jj++) = x(i, j);
                }
            }
        }
        const Scalar term = x(0, c) * cofactor_det(minor);
        sum += c % 2 == 0 ? term : -term;
    }
    return sum;
}

struct DenseLu {
    Dense lower;
    Dense upper;
};

// Doolittle without pivoting.
inline DenseLu lu(const Dense& x)
{
    DenseLu out{Dense::identity(x.n), Dense(x.n)};
    for (int i = 0; i < x.n; ++i) {
        for (int j = i; j < x.n; ++j) {
            Scalar s = x(i, j);
            for (int k = 0; k < i; ++k) {
                s -= out.lower(i, k) * out.upper(k, j);
            }
            out.upper(i, j) = s;
        }
        for (int r = i + 1; r < x.n; ++r) {
            Scalar s = x(r, i);
            for (int k = 0; k < i; ++k) {
                s -= out.lower(r, k) * out.upper(k, i);
            }
            out.lower(r, i) = s / out.upper(i, i);
        }
    }
    return out;
}

inline Dense shifted(const Dense& x, Scalar c)
{
    Dense out = x;
    for (int i = 0; i < x.n; ++i) {
        out(i, i) -= c;
    }
    return out;
}

inline double relative(Scalar x, Scalar y)
{
    return std::abs(x - y) / std::max({1.0, std::abs(x), std::abs(y)});
}

} // namespace oracle
