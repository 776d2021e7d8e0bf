#pragma once

#include <tuple>
#include <vector>

#include "pslab/model.hpp"

namespace pslab {

struct EatingEvent {
    Rational time;                     // absolute time of the event
    std::vector<int> houses_finished;  // ascending house indices
    // (agent, house, amount) consumed since the previous event
    std::vector<std::tuple<int, int, Rational>> consumption;
};

struct EatingTrace {
    std::vector<EatingEvent> events;
    Rational final_time;  // always m/n
};

struct PsResult {
    Assignment assignment;
    EatingTrace trace;
};

/// Runs the simultaneous-eating rule: every agent continuously consumes his
/// most-preferred house with mass left, all at unit speed, until everything
/// is eaten at time m/n. Event-driven — each step jumps to the next house
/// exhaustion, so a run costs at most m events and m*n eating segments.
PsResult run_ps(const Instance& inst);

/// Assignment-only variant with reusable buffers for enumeration loops.
class PsEngine {
public:
    PsEngine(int n, int m);

    /// `profile` must hold n rankings over the m houses. The result stays
    /// valid until the next run.
    const Assignment& run(const Profile& profile);

    /// Event times of the latest run (house-finish times, ascending).
    const std::vector<Rational>& event_times() const { return event_times_; }

private:
    int n_;
    int m_;
    Assignment out_;
    std::vector<Rational> remaining_;
    std::vector<int> cursor_;
    std::vector<int> top_;
    std::vector<int> eaters_;
    std::vector<Rational> event_times_;

    friend PsResult run_ps(const Instance&);
    void run_internal(const Profile& profile, EatingTrace* trace);
};

}  // namespace pslab
