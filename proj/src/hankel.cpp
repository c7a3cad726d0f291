#include "qhahn/hankel.hpp"

#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <fmt/format.h>

#include "qhahn/errors.hpp"

namespace qhahn {

namespace {

template <class T>
HankelFactor factor_impl(std::span<const double> mu, std::size_t size, bool extra_row) {
    using std::abs;
    const std::size_t rows = size + (extra_row ? 1 : 0);
    auto h = [&](std::size_t i, std::size_t j) { return T(mu[i + j]); };

    std::vector<std::vector<T>> L(rows);
    std::vector<T> D;
    HankelFactor out;
    for (std::size_t i = 0; i < rows; ++i) {
        const std::size_t cols = i < size ? i : size;
        L[i].resize(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            T s = h(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= L[i][k] * L[j][k] * D[k];
            L[i][j] = s / D[j];
        }
        out.lower.emplace_back();
        for (const T& v : L[i]) out.lower.back().push_back(static_cast<double>(v));
        if (i >= size) break;

        T d = h(i, i);
        T mag = abs(d);
        for (std::size_t k = 0; k < i; ++k) {
            const T term = L[i][k] * L[i][k] * D[k];
            d -= term;
            mag += abs(term);
        }
        out.pivots.push_back(static_cast<double>(d));
        // a pivot lost entirely to cancellation is treated as zero
        if (!(d > T(64) * std::numeric_limits<T>::epsilon() * mag)) {
            out.failure = i;
            return out;
        }
        D.push_back(d);
    }
    return out;
}

}  // namespace

HankelFactor factor_hankel(std::span<const double> mu, std::size_t size, bool extra_row,
                           int precision_digits) {
    const std::size_t needed = extra_row ? 2 * size : (size == 0 ? 0 : 2 * size - 1);
    if (mu.size() < needed) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("Hankel block of size {} needs {} moments, have {}", size, needed,
                                mu.size()));
    }
    if (precision_digits <= 15) return factor_impl<double>(mu, size, extra_row);
    if (precision_digits <= 18) return factor_impl<long double>(mu, size, extra_row);
    if (precision_digits <= 50) {
        return factor_impl<boost::multiprecision::cpp_bin_float_50>(mu, size, extra_row);
    }
    throw Error(ErrorKind::InvalidArgument,
                fmt::format("precision_digits must be at most 50, got {}", precision_digits));
}

}  // namespace qhahn
