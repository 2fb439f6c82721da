#pragma once

// Test-only reference computations, written without the library's closure,
// witness or census code paths.

#include <random>
#include <vector>

#include "affsim/algebra.hpp"
#include "affsim/linalg.hpp"

namespace affsim::oracle {

using IntMatrix = std::vector<std::vector<long long>>;

inline IntMatrix int_identity(int n) {
    IntMatrix m(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size();
    IntMatrix c(n, std::vector<long long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

/// The cyclic matrix written out entry by entry: ones at (j, j+1) and (n, 1).
inline IntMatrix int_sigma(int n) {
    IntMatrix m(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    for (int j = 0; j + 1 < n; ++j) m[static_cast<std::size_t>(j)][static_cast<std::size_t>(j + 1)] = 1;
    m[static_cast<std::size_t>(n - 1)][0] = 1;
    return m;
}

inline IntMatrix int_pow(const IntMatrix& m, int k) {
    IntMatrix r = int_identity(static_cast<int>(m.size()));
    for (int t = 0; t < k; ++t) r = int_mul(r, m);
    return r;
}

/// Dimensions n in `support` where some block of e sigma^i e is nonzero,
/// computed one block at a time with integer matrices. Block (n, j) of
/// e sigma^i e is lambda_j^2 * sigma_n^i(1,1) * E_11.
inline std::vector<int> relation_support_bruteforce(const std::vector<int>& support, int i) {
    std::vector<int> out;
    for (int n : support) {
        IntMatrix e = int_identity(n);
        for (auto& row : e)
            for (auto& x : row) x = 0;
        e[0][0] = 1;
        const IntMatrix prod = int_mul(int_mul(e, int_pow(int_sigma(n), i)), e);
        bool nonzero = false;
        for (const auto& row : prod)
            for (long long x : row) nonzero = nonzero || x != 0;
        if (nonzero) out.push_back(n);
    }
    return out;
}

/// Dimension of the algebra generated by `gens` (with 1) as the fixed point
/// of V <- span(V + V V): every pairwise product of the current basis is
/// added and the whole set re-eliminated until the rank stops growing.
template <typename S>
Index closure_dimension_bruteforce(const SpecPtr<S>& spec, const std::vector<BlockElement<S>>& gens) {
    std::vector<BlockElement<S>> current{BlockElement<S>::identity(spec)};
    current.insert(current.end(), gens.begin(), gens.end());
    Index previous = -1;
    while (true) {
        std::vector<BlockElement<S>> candidates = current;
        for (const auto& a : current)
            for (const auto& b : current) candidates.push_back(a * b);
        Matrix<S> m(static_cast<Index>(candidates.size()), spec->dimension());
        for (std::size_t r = 0; r < candidates.size(); ++r)
            m.row(static_cast<Index>(r)) = flatten(candidates[r]).transpose();
        const auto reduced = rref(m);
        if (reduced.rank == previous) return reduced.rank;
        previous = reduced.rank;
        current.clear();
        for (Index r = 0; r < reduced.rank; ++r)
            current.push_back(unflatten(spec, Vector<S>(reduced.reduced.row(r).transpose())));
    }
}

template <typename S>
Matrix<S> random_matrix(std::mt19937& rng, Index rows, Index cols, int lo = -4, int hi = 4, double zero_rate = 0.3) {
    std::uniform_int_distribution<int> val(lo, hi);
    std::bernoulli_distribution zero(zero_rate);
    Matrix<S> m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = zero(rng) ? S(0) : S(val(rng));
    return m;
}

}  // namespace affsim::oracle
