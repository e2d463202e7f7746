#include "vgs/link_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "vgs/errors.hpp"
#include "vgs/format.hpp"

namespace vgs {

namespace {

std::uint64_t pair_key(NodeId a, NodeId b) {
    return (static_cast<std::uint64_t>(std::min(a, b)) << 32) | std::max(a, b);
}

}  // namespace

LinkTimelineBuilder::LinkTimelineBuilder(std::optional<double> dt) : dt_(dt) {
    if (dt_ && (!(*dt_ > 0.0) || !std::isfinite(*dt_))) throw DomainError("tick must be positive");
}

double LinkTimelineBuilder::tick_time(std::uint64_t k) const {
    return t0_ + static_cast<double>(k) * dt_.value_or(0.0);
}

void LinkTimelineBuilder::close(const Open& o, std::uint64_t last_tick) {
    auto& tl = timelines_.at(o.key);
    LinkInterval iv;
    iv.t_open = tick_time(o.start);
    iv.t_close = tick_time(last_tick);
    iv.ticks = last_tick - o.start + 1;
    iv.censored_start = o.start == 0;
    tl.intervals.push_back(iv);
}

void LinkTimelineBuilder::add(const Snapshot& s) {
    if (ticks_ == 0) {
        t0_ = s.t();
    } else {
        if (!dt_) {
            if (!(s.t() > t0_)) throw ValidationError("snapshot times must be strictly increasing");
            dt_ = s.t() - t0_;
        }
        const double expected = tick_time(ticks_);
        if (std::abs(s.t() - expected) > 1e-6 * *dt_) {
            throw ValidationError("non-uniform snapshot spacing at t=" + format_double(s.t()) +
                                  " (expected " + format_double(expected) + ")");
        }
    }
    const std::uint64_t k = ticks_++;

    std::vector<std::uint64_t> current;
    current.reserve(s.graph().edge_count());
    for (auto [u, v] : s.graph().edges()) {
        const Node& nu = s.node(u);
        const Node& nv = s.node(v);
        const std::uint64_t key = pair_key(nu.id, nv.id);
        current.push_back(key);
        auto [it, inserted] = timelines_.try_emplace(key);
        if (inserted) {
            const bool swap = nu.id > nv.id;
            it->second.a = swap ? nv.id : nu.id;
            it->second.b = swap ? nu.id : nv.id;
            it->second.kind_a = swap ? nv.kind : nu.kind;
            it->second.kind_b = swap ? nu.kind : nv.kind;
        }
    }
    std::sort(current.begin(), current.end());

    std::vector<Open> next;
    next.reserve(current.size());
    std::size_t i = 0;
    for (std::uint64_t key : current) {
        while (i < open_.size() && open_[i].key < key) close(open_[i++], k - 1);
        if (i < open_.size() && open_[i].key == key) {
            next.push_back(open_[i++]);
        } else {
            next.push_back({key, k});
        }
    }
    while (i < open_.size()) close(open_[i++], k - 1);
    open_ = std::move(next);
}

std::vector<LinkTimeline> LinkTimelineBuilder::finish() {
    if (ticks_ > 0) {
        for (const Open& o : open_) {
            close(o, ticks_ - 1);
            timelines_.at(o.key).intervals.back().censored_end = true;
        }
    }
    open_.clear();
    std::vector<LinkTimeline> out;
    out.reserve(timelines_.size());
    for (auto& [key, tl] : timelines_) out.push_back(std::move(tl));
    timelines_.clear();
    std::sort(out.begin(), out.end(), [](const LinkTimeline& x, const LinkTimeline& y) {
        return std::tie(x.a, x.b) < std::tie(y.a, y.b);
    });
    return out;
}

std::vector<LinkTimeline> build_link_timelines(std::span<const Snapshot> snapshots) {
    LinkTimelineBuilder builder;
    for (const Snapshot& s : snapshots) builder.add(s);
    return builder.finish();
}

std::vector<bool> connectivity_from_intervals(const LinkTimeline& timeline, double t0, double dt,
                                              std::size_t ticks) {
    std::vector<bool> bits(ticks, false);
    for (const LinkInterval& iv : timeline.intervals) {
        const long long first = std::llround((iv.t_open - t0) / dt);
        const long long last = std::llround((iv.t_close - t0) / dt);
        for (long long k = std::max(first, 0LL); k <= last && k < static_cast<long long>(ticks); ++k) {
            bits[static_cast<std::size_t>(k)] = true;
        }
    }
    return bits;
}

LinkStats link_stats(std::span<const LinkTimeline> timelines, double dt) {
    LinkStats out;
    std::vector<double> periods;
    std::vector<double> durations;
    std::vector<double> ticks;
    std::vector<double> gaps;
    for (const LinkTimeline& tl : timelines) {
        PairLinkStats p;
        p.a = tl.a;
        p.b = tl.b;
        p.kind_a = tl.kind_a;
        p.kind_b = tl.kind_b;
        p.period_count = tl.intervals.size();
        for (std::size_t i = 0; i < tl.intervals.size(); ++i) {
            const LinkInterval& iv = tl.intervals[i];
            p.durations.push_back(iv.t_close - iv.t_open);
            p.duration_ticks.push_back(static_cast<double>(iv.ticks) * dt);
            if (i > 0) p.rehealings.push_back(iv.t_open - tl.intervals[i - 1].t_close);
            if (iv.censored_start || iv.censored_end) ++p.censored;
        }
        periods.push_back(static_cast<double>(p.period_count));
        durations.insert(durations.end(), p.durations.begin(), p.durations.end());
        ticks.insert(ticks.end(), p.duration_ticks.begin(), p.duration_ticks.end());
        gaps.insert(gaps.end(), p.rehealings.begin(), p.rehealings.end());
        out.pairs.push_back(std::move(p));
    }
    out.periods = summarize(periods);
    out.durations = summarize(durations);
    out.duration_ticks = summarize(ticks);
    out.rehealings = summarize(gaps);
    out.periods_cdf = empirical_cdf(periods);
    out.durations_cdf = empirical_cdf(durations);
    out.rehealings_cdf = empirical_cdf(gaps);
    return out;
}

}  // namespace vgs
