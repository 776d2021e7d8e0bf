#include "pslab/ps.hpp"

#include <algorithm>
#include <cassert>

namespace pslab {

PsEngine::PsEngine(int n, int m)
    : n_(n),
      m_(m),
      out_(n, m),
      remaining_(static_cast<std::size_t>(m)),
      cursor_(static_cast<std::size_t>(n)),
      top_(static_cast<std::size_t>(n)),
      eaters_(static_cast<std::size_t>(m)) {}

void PsEngine::run_internal(const Profile& profile, EatingTrace* trace) {
    const Rational zero;
    const Rational one(1);
    std::fill(remaining_.begin(), remaining_.end(), one);
    std::fill(cursor_.begin(), cursor_.end(), 0);
    std::fill(out_.cells.begin(), out_.cells.end(), zero);
    event_times_.clear();
    if (trace) {
        trace->events.clear();
        trace->final_time = Rational();
    }

    Rational now;
    int houses_left = m_;
    while (houses_left > 0) {
        // Everyone advances to his best house that still has mass.
        std::fill(eaters_.begin(), eaters_.end(), 0);
        for (int i = 0; i < n_; ++i) {
            const auto& rk = profile[static_cast<std::size_t>(i)].ranking;
            int& c = cursor_[static_cast<std::size_t>(i)];
            while (remaining_[static_cast<std::size_t>(rk[static_cast<std::size_t>(c)])].is_zero())
                ++c;
            top_[static_cast<std::size_t>(i)] = rk[static_cast<std::size_t>(c)];
            ++eaters_[static_cast<std::size_t>(top_[static_cast<std::size_t>(i)])];
        }

        // Next exhaustion: min over active houses of remaining/eaters.
        // Tracked as a fraction compared by cross-multiplication.
        int best_house = -1;
        for (int h = 0; h < m_; ++h) {
            if (eaters_[static_cast<std::size_t>(h)] == 0) continue;
            if (best_house < 0) {
                best_house = h;
                continue;
            }
            const Rational& a = remaining_[static_cast<std::size_t>(h)];
            const Rational& b = remaining_[static_cast<std::size_t>(best_house)];
            // a / k_h < b / k_best  <=>  a * k_best < b * k_h
            if ((a * Rational(eaters_[static_cast<std::size_t>(best_house)]))
                    .compare(b * Rational(eaters_[static_cast<std::size_t>(h)])) < 0)
                best_house = h;
        }
        assert(best_house >= 0);
        Rational dt = remaining_[static_cast<std::size_t>(best_house)] /
                      Rational(eaters_[static_cast<std::size_t>(best_house)]);
        now += dt;

        EatingEvent ev;
        for (int i = 0; i < n_; ++i)
            out_.at(i, top_[static_cast<std::size_t>(i)]) += dt;
        if (trace) {
            for (int i = 0; i < n_; ++i)
                ev.consumption.emplace_back(i, top_[static_cast<std::size_t>(i)], dt);
        }
        for (int h = 0; h < m_; ++h) {
            int k = eaters_[static_cast<std::size_t>(h)];
            if (k == 0) continue;
            Rational& rem = remaining_[static_cast<std::size_t>(h)];
            rem -= dt * Rational(k);
            assert(rem.sign() >= 0);
            if (rem.is_zero()) {
                --houses_left;
                if (trace) ev.houses_finished.push_back(h);
            }
        }
        event_times_.push_back(now);
        if (trace) {
            ev.time = now;
            trace->events.push_back(std::move(ev));
        }
    }
    if (trace) trace->final_time = now;
    assert(now == Rational(BigInt(m_), BigInt(n_)));
}

const Assignment& PsEngine::run(const Profile& profile) {
    run_internal(profile, nullptr);
    return out_;
}

PsResult run_ps(const Instance& inst) {
    inst.validate();
    PsEngine engine(inst.n, inst.m);
    PsResult result;
    engine.run_internal(inst.profile, &result.trace);
    result.assignment = std::move(engine.out_);
    return result;
}

}  // namespace pslab
