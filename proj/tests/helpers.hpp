#pragma once

#include <random>
#include <vector>

#include "liegen/series.hpp"
#include "liegen/vector_field.hpp"

namespace testutil {

inline liegen::Rational rand_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
    int n = num(rng);
    if (n == 0) n = 1;
    return liegen::make_rational(n, den(rng));
}

inline liegen::MultiIndex rand_index(std::mt19937& rng, int m, int degree) {
    std::vector<std::uint32_t> alpha(static_cast<std::size_t>(m), 0);
    int rem = degree;
    for (int i = 0; i + 1 < m; ++i) {
        std::uniform_int_distribution<int> part(0, rem);
        int p = part(rng);
        alpha[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(p);
        rem -= p;
    }
    alpha[static_cast<std::size_t>(m - 1)] += static_cast<std::uint32_t>(rem);
    return liegen::MultiIndex(std::move(alpha));
}

/// Sparse random series with `terms` draws in degrees [min_deg, trunc].
inline liegen::Series rand_series(std::mt19937& rng, int m, int trunc, int terms, int min_deg = 0) {
    liegen::Series f(m, trunc);
    std::uniform_int_distribution<int> deg(min_deg, trunc);
    for (int t = 0; t < terms; ++t)
        f.add_coeff(rand_index(rng, m, deg(rng)), rand_rational(rng));
    return f;
}

/// Random field of declared order n (component degrees start at n).
inline liegen::VectorField rand_field(std::mt19937& rng, int m, int n, int trunc, int terms) {
    std::vector<liegen::Series> comps;
    comps.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) comps.push_back(rand_series(rng, m, trunc, terms, n));
    return liegen::VectorField(n, std::move(comps));
}

} // namespace testutil
