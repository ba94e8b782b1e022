#pragma once

#include "wha/tower.hpp"
#include "wha/examples.hpp"

#include <doctest.h>

#include <random>

namespace wha::test {

inline Vec unit_vector(int n, int i)
{
    Vec v = Vec::Zero(n);
    v[i] = 1.0;
    return v;
}

inline Vec random_vector(int n, unsigned seed)
{
    std::mt19937 gen(seed);
    std::normal_distribution<double> d;
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = cx(d(gen), d(gen));
    return v;
}

inline Mat pauli_x() { Mat m(2, 2); m << 0, 1, 1, 0; return m; }
inline Mat pauli_z() { Mat m(2, 2); m << 1, 0, 0, -1; return m; }

inline std::string failures_of(const Report& r)
{
    std::string out;
    for (const auto& n : r.failures()) out += n + " ";
    return out;
}

#define WHA_CHECK_REPORT(report)                                 \
    do {                                                          \
        const ::wha::Report& wha_r_ = (report);                   \
        INFO("failing checks: " << ::wha::test::failures_of(wha_r_)); \
        CHECK(wha_r_.ok());                                       \
    } while (0)

}  // namespace wha::test
