#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "vgs/snapshot.hpp"
#include "vgs/stats.hpp"

namespace vgs {

// A maximal run of consecutive connected ticks, bounds inclusive.
struct LinkInterval {
    double t_open = 0.0;
    double t_close = 0.0;
    std::uint64_t ticks = 0;
    bool censored_start = false;  // run already open at the first tick
    bool censored_end = false;    // run still open at the last tick
};

struct LinkTimeline {
    NodeId a = 0;  // a < b
    NodeId b = 0;
    NodeKind kind_a = NodeKind::vehicle;
    NodeKind kind_b = NodeKind::vehicle;
    std::vector<LinkInterval> intervals;
};

// Incremental fold of a snapshot stream into per-pair timelines. Snapshots
// must arrive with strictly increasing, uniformly spaced timestamps.
class LinkTimelineBuilder {
public:
    // With no `dt` the spacing is taken from the first two snapshots.
    explicit LinkTimelineBuilder(std::optional<double> dt = std::nullopt);

    void add(const Snapshot& s);
    std::size_t ticks() const { return ticks_; }

    // Pairs sorted by (a, b); pairs never connected are absent.
    std::vector<LinkTimeline> finish();

private:
    struct Open {
        std::uint64_t key;
        std::uint64_t start;
    };

    std::optional<double> dt_;
    double t0_ = 0.0;
    std::uint64_t ticks_ = 0;
    std::vector<Open> open_;
    std::unordered_map<std::uint64_t, LinkTimeline> timelines_;

    double tick_time(std::uint64_t k) const;
    void close(const Open& o, std::uint64_t last_tick);
};

std::vector<LinkTimeline> build_link_timelines(std::span<const Snapshot> snapshots);

// Per-tick connectivity of one pair, replayed from its intervals.
std::vector<bool> connectivity_from_intervals(const LinkTimeline& timeline, double t0, double dt,
                                              std::size_t ticks);

struct PairLinkStats {
    NodeId a = 0;
    NodeId b = 0;
    NodeKind kind_a = NodeKind::vehicle;
    NodeKind kind_b = NodeKind::vehicle;
    std::size_t period_count = 0;
    std::vector<double> durations;       // t_close - t_open
    std::vector<double> duration_ticks;  // connected ticks * dt
    std::vector<double> rehealings;      // next t_open - previous t_close
    std::size_t censored = 0;            // intervals touching the window edge
};

struct LinkStats {
    std::vector<PairLinkStats> pairs;
    std::optional<Summary> periods;
    std::optional<Summary> durations;
    std::optional<Summary> duration_ticks;
    std::optional<Summary> rehealings;
    std::vector<std::pair<double, double>> periods_cdf;
    std::vector<std::pair<double, double>> durations_cdf;
    std::vector<std::pair<double, double>> rehealings_cdf;
};

LinkStats link_stats(std::span<const LinkTimeline> timelines, double dt);

}  // namespace vgs
