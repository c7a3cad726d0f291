#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace qhahn {

/// Symmetric factorisation H = L D L^T of the leading size x size block of
/// the Hankel matrix [mu_{i+j}], with L unit lower triangular.
///
/// `lower` holds rows 0..size-1 of L and, when extra_row is set, the
/// subdiagonal part of row `size` (needs mu up to mu_{2 size - 1}).
/// Factorisation stops at the first pivot that is not positive.
struct HankelFactor {
    std::vector<double> pivots;               // D_0, D_1, ...
    std::vector<std::vector<double>> lower;   // ragged rows of L
    std::optional<std::size_t> failure;       // first nonpositive pivot
};

/// precision_digits <= 15 factors in double, <= 18 in long double and
/// <= 50 in a 50-digit software float.
HankelFactor factor_hankel(std::span<const double> mu, std::size_t size, bool extra_row,
                           int precision_digits = 15);

}  // namespace qhahn
