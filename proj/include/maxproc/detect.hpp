#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <vector>

#include "maxproc/brownian.hpp"
#include "maxproc/correlation.hpp"
#include "maxproc/errors.hpp"

namespace maxproc {

// Detected occurrence times on one path: grid times whose value dominates
// the whole discrete window [t-a, t+b].  Only times whose window fits inside
// the path are reported; estimators use the matching valid measure.
struct PointSample {
    std::vector<double> times;
    double window_lo = 0.0;  // -horizon + a
    double window_hi = 0.0;  // +horizon - b
    double dt = 0.0;         // grid step the times live on
    int tie_count = 0;       // equal window maxima ever seen (resolved to the earliest index)

    double window_length() const { return window_hi - window_lo; }
};

namespace detail {

// Monotone deque holding indices of a non-increasing value sequence; the
// front is the earliest index attaining the window maximum.
class SlidingMax {
  public:
    explicit SlidingMax(const std::vector<double>& v) : v_(v) {}

    void push(std::size_t i) {
        while (!dq_.empty() && v_[dq_.back()] < v_[i]) dq_.pop_back();
        dq_.push_back(i);
    }
    void drop_before(std::size_t lo) {
        while (!dq_.empty() && dq_.front() < lo) dq_.pop_front();
    }
    std::size_t argmax() const { return dq_.front(); }
    double max() const { return v_[dq_.front()]; }
    bool has_tie() const { return dq_.size() >= 2 && v_[dq_[1]] == v_[dq_[0]]; }

  private:
    const std::vector<double>& v_;
    std::deque<std::size_t> dq_;
};

}  // namespace detail

// O(N) detection of the points dominating their reach window, via a sliding
// window maximum.  Ties (never seen with continuous increments) resolve to
// the earliest index and are counted.
inline PointSample detect_m_ab(const BrownianPath& path, const ProcessParams& p) {
    validate(p);
    if (!(path.dt <= p.b / 200.0)) throw ResolutionTooCoarse("detect_m_ab: need dt <= b/200");

    const auto a_steps = static_cast<std::size_t>(std::llround(p.a / path.dt));
    const auto b_steps = static_cast<std::size_t>(std::llround(p.b / path.dt));
    const std::size_t n = path.values.size();

    PointSample out;
    out.window_lo = -path.horizon() + p.a;
    out.window_hi = path.horizon() - p.b;
    out.dt = path.dt;
    if (a_steps + b_steps >= n) return out;

    detail::SlidingMax win(path.values);
    for (std::size_t j = 0; j < a_steps + b_steps; ++j) win.push(j);
    for (std::size_t i = a_steps; i + b_steps < n; ++i) {
        win.push(i + b_steps);
        win.drop_before(i - a_steps);
        if (win.argmax() == i) {
            if (win.has_tie()) ++out.tie_count;
            out.times.push_back(path.t_of(i));
        }
    }
    return out;
}

// A maximal run of grid times at which the path equals its running maximum
// over the trailing window of length a.  Closed intervals in time.
struct RunInterval {
    double begin;
    double end;
};

// Detection of the trailing-record set on the nonnegative half of the path.
// The gaps between consecutive runs are the jumps of the associated
// subordinator; gap starts with gaps longer than b reproduce the two-sided
// detection for t > a.
inline std::vector<RunInterval> detect_r_a(const BrownianPath& path, double a) {
    if (!(a > 0.0)) throw InvalidParams("detect_r_a: a must be positive");
    if (!(path.dt <= a / 200.0)) throw ResolutionTooCoarse("detect_r_a: need dt <= a/200");

    const auto a_steps = static_cast<std::size_t>(std::llround(a / path.dt));
    const std::size_t z = path.zero_index();
    const std::size_t n_pos = path.n_side + 1;

    std::vector<RunInterval> runs;
    detail::SlidingMax win(path.values);
    bool in_run = false;
    double run_begin = 0.0;
    for (std::size_t j = 0; j < n_pos; ++j) {
        const std::size_t i = z + j;
        win.push(i);
        win.drop_before(i - std::min(j, a_steps));
        const bool at_max = path.values[i] >= win.max();
        if (at_max && !in_run) {
            in_run = true;
            run_begin = path.t_of(i);
        } else if (!at_max && in_run) {
            in_run = false;
            runs.push_back({run_begin, path.t_of(i - 1)});
        }
    }
    if (in_run) runs.push_back({run_begin, path.t_of(z + n_pos - 1)});
    return runs;
}

// Heights of the gaps between consecutive runs (jump sizes), excluding the
// boundary-truncated gap at the horizon.
inline std::vector<double> run_gap_heights(const std::vector<RunInterval>& runs) {
    std::vector<double> gaps;
    for (std::size_t k = 0; k + 1 < runs.size(); ++k)
        gaps.push_back(runs[k + 1].begin - runs[k].end);
    return gaps;
}

}  // namespace maxproc
