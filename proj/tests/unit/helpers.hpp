#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "pslab/cultures.hpp"
#include "pslab/model.hpp"
#include "pslab/ps.hpp"

namespace testutil {

inline pslab::Rational rat(long long n, long long d = 1) {
    return pslab::Rational(pslab::BigInt(n), pslab::BigInt(d));
}

inline pslab::Instance instance_of(std::initializer_list<std::vector<int>> orders) {
    pslab::Instance inst;
    inst.n = static_cast<int>(orders.size());
    inst.m = static_cast<int>(orders.begin()->size());
    for (const auto& o : orders) inst.profile.push_back(pslab::LinearOrder{o});
    return inst;
}

inline pslab::UtilityProfile utilities_of(std::initializer_list<std::vector<long long>> rows) {
    pslab::UtilityProfile u(static_cast<int>(rows.size()),
                            static_cast<int>(rows.begin()->size()));
    int i = 0;
    for (const auto& row : rows) {
        for (int j = 0; j < u.m; ++j) u.at(i, j) = rat(row[static_cast<std::size_t>(j)]);
        ++i;
    }
    return u;
}

// The worked three-agent example: orders h1h2h3 | h2h1h3 | h2h3h1.
inline pslab::Instance worked_example() {
    return instance_of({{0, 1, 2}, {1, 0, 2}, {1, 2, 0}});
}

// The two-agent five-house cycle instance with its Borda utilities.
inline pslab::Instance cycle_instance() {
    return instance_of({{1, 2, 4, 3, 0}, {4, 2, 3, 0, 1}});
}

// Time-quantized eating simulation: everyone eats delta = 1/(n*m*L) of his
// top remaining house per tick. Returns nothing when some house would be
// over-eaten inside a tick, i.e. when delta does not divide every event gap.
// Event-free, so it is an independent check of the event-driven engine.
inline std::optional<pslab::Assignment> quantized_ps(const pslab::Instance& inst, int L) {
    using pslab::Rational;
    const int n = inst.n;
    const int m = inst.m;
    const Rational delta(pslab::BigInt(1),
                         pslab::BigInt(static_cast<long long>(n) * m * L));
    std::vector<Rational> remaining(static_cast<std::size_t>(m), Rational(1));
    pslab::Assignment consumed(n, m);
    int houses_left = m;
    while (houses_left > 0) {
        std::vector<int> top(static_cast<std::size_t>(n), -1);
        std::vector<int> eaters(static_cast<std::size_t>(m), 0);
        for (int i = 0; i < n; ++i) {
            for (int h : inst.profile[static_cast<std::size_t>(i)].ranking) {
                if (!remaining[static_cast<std::size_t>(h)].is_zero()) {
                    top[static_cast<std::size_t>(i)] = h;
                    ++eaters[static_cast<std::size_t>(h)];
                    break;
                }
            }
        }
        for (int h = 0; h < m; ++h) {
            if (eaters[static_cast<std::size_t>(h)] == 0) continue;
            if (remaining[static_cast<std::size_t>(h)] <
                delta * Rational(eaters[static_cast<std::size_t>(h)]))
                return std::nullopt;  // an exhaustion falls inside this tick
        }
        for (int i = 0; i < n; ++i) consumed.at(i, top[static_cast<std::size_t>(i)]) += delta;
        for (int h = 0; h < m; ++h) {
            if (eaters[static_cast<std::size_t>(h)] == 0) continue;
            remaining[static_cast<std::size_t>(h)] -=
                delta * Rational(eaters[static_cast<std::size_t>(h)]);
            if (remaining[static_cast<std::size_t>(h)].is_zero()) --houses_left;
        }
    }
    return consumed;
}

inline pslab::Assignment oracle_ps(const pslab::Instance& inst) {
    for (int L = 1; L <= 5000; ++L) {
        if (auto result = quantized_ps(inst, L)) return *result;
    }
    throw std::runtime_error("oracle_ps: no clean step size found");
}

}  // namespace testutil
