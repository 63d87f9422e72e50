// wick.hpp — Gaussian moments by explicit enumeration of pair contractions

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace gnt::fock {

// (2n)!/(2^n n!) = (2n-1)!!: the number of ways to divide 2n labels into n
// unordered pairs.
inline std::uint64_t pairing_count(int n) {
    if (n < 0) throw std::domain_error("pairing_count: need n >= 0");
    if (n > 16) throw std::overflow_error("pairing_count: result exceeds 64 bits for n > 16");
    std::uint64_t acc = 1;
    for (int k = 3; k <= 2 * n - 1; k += 2) acc *= static_cast<std::uint64_t>(k);
    return acc;
}

struct WickResult {
    std::complex<double> value{0.0, 0.0};
    bool odd = false;  // odd-length strings vanish for mean-zero Gaussian states
};

namespace detail {

inline void wick_recurse(const Eigen::MatrixXcd& delta, std::vector<char>& used,
                         std::complex<double> product, std::complex<double>& sum) {
    const int n = static_cast<int>(delta.rows());
    int first = -1;
    for (int i = 0; i < n; ++i)
        if (!used[i]) { first = i; break; }
    if (first < 0) {
        sum += product;
        return;
    }
    used[first] = 1;
    for (int j = first + 1; j < n; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        wick_recurse(delta, used, product * delta(first, j), sum);
        used[j] = 0;
    }
    used[first] = 0;
}

} // namespace detail

// Sum over all pairings of products of two-point functions. delta(i, j) for
// i < j must be the contraction of labels i and j in operator-string order
// (only the upper triangle is read).
inline WickResult wick_moment(const Eigen::MatrixXcd& delta) {
    if (delta.rows() != delta.cols())
        throw std::invalid_argument("wick_moment: two-point matrix must be square");
    const int n = static_cast<int>(delta.rows());
    if (n % 2 != 0) return {std::complex<double>(0.0, 0.0), true};
    if (n == 0) return {std::complex<double>(1.0, 0.0), false};
    WickResult out;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    detail::wick_recurse(delta, used, std::complex<double>(1.0, 0.0), out.value);
    return out;
}

} // namespace gnt::fock
