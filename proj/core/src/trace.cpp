#include "vgs/trace.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "vgs/errors.hpp"
#include "vgs/format.hpp"
#include "vgs/rng.hpp"

namespace vgs {

namespace {

void check_geo(double lat, double lon) {
    if (!std::isfinite(lat) || !std::isfinite(lon) || std::abs(lat) > 90.0 ||
        std::abs(lon) > 180.0) {
        throw DomainError("GPS coordinate out of range: (" + format_double(lat) + ", " +
                          format_double(lon) + ")");
    }
}

constexpr double kDeg = std::numbers::pi / 180.0;

struct HeaderState {
    std::optional<TraceFormat> format;
    std::optional<GeoPoint> ref;
};

// Handles one header line; unrecognised keys are comments.
void read_header(std::string_view line, std::size_t lineno, HeaderState& state,
                 std::string_view format_key) {
    const auto fields = split(line.substr(1), ',');
    const std::string_view key = trim(fields[0]);
    if (key == format_key) {
        if (fields.size() != 2) throw ParseError("malformed #" + std::string(key) + " header", lineno);
        const auto value = trim(fields[1]);
        if (value == "cartesian" || value == "xy") {
            state.format = TraceFormat::cartesian;
        } else if (value == "gps") {
            state.format = TraceFormat::gps;
        } else {
            throw ParseError("unknown coordinate format '" + std::string(value) + "'", lineno);
        }
    } else if (key == "ref") {
        if (fields.size() != 3) throw ParseError("malformed #ref header", lineno);
        const auto lat = parse_double(fields[1]);
        const auto lon = parse_double(fields[2]);
        if (!lat || !lon) throw ParseError("non-numeric #ref header", lineno);
        check_geo(*lat, *lon);
        state.ref = GeoPoint{*lat, *lon};
    }
}

std::vector<Trajectory> parse_trace_impl(std::istream& in, std::optional<TraceFormat> expected) {
    HeaderState header;
    std::vector<Trajectory> out;
    std::unordered_map<std::string, std::size_t> index;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '#') {
            read_header(text, lineno, header, "format");
            if (expected && header.format && *header.format != *expected) {
                throw ParseError("header format contradicts the requested format", lineno);
            }
            continue;
        }
        const auto fields = split(text, ',');
        if (fields.size() != 4) {
            throw ParseError("expected 4 fields (t,vehicle_id,a,b), got " +
                                 std::to_string(fields.size()),
                             lineno);
        }
        const auto t = parse_double(fields[0]);
        const auto a = parse_double(fields[2]);
        const auto b = parse_double(fields[3]);
        const std::string id(trim(fields[1]));
        if (!t || !a || !b || id.empty() || !std::isfinite(*t) || !std::isfinite(*a) ||
            !std::isfinite(*b)) {
            throw ParseError("malformed row", lineno);
        }

        const TraceFormat format = header.format.value_or(expected.value_or(TraceFormat::cartesian));
        Sample s{*t, *a, *b};
        if (format == TraceFormat::gps) {
            if (!header.ref) throw ParseError("gps rows require a #ref header", lineno);
            const Point p = project_gps(*a, *b, *header.ref);
            s.x = p.x;
            s.y = p.y;
        }

        auto [it, inserted] = index.try_emplace(id, out.size());
        if (inserted) {
            out.push_back(Trajectory{id, {}});
        }
        auto& samples = out[it->second].samples;
        if (!samples.empty() && !(s.t > samples.back().t)) {
            throw ValidationError("vehicle '" + id + "': timestamps not strictly increasing at line " +
                                  std::to_string(lineno));
        }
        samples.push_back(s);
    }
    return out;
}

}  // namespace

Point project_gps(double lat, double lon, GeoPoint ref) {
    check_geo(lat, lon);
    check_geo(ref.lat, ref.lon);
    const double x = kEarthRadius * (lon - ref.lon) * kDeg * std::cos(ref.lat * kDeg);
    const double y = kEarthRadius * (lat - ref.lat) * kDeg;
    return {x, y};
}

std::vector<Trajectory> parse_trace(std::istream& in) { return parse_trace_impl(in, std::nullopt); }

std::vector<Trajectory> parse_trace(std::istream& in, TraceFormat format) {
    return parse_trace_impl(in, format);
}

std::vector<Trajectory> read_trace_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open trace file");
    return parse_trace(in);
}

void write_trace(std::ostream& out, std::span<const Trajectory> trajectories) {
    struct Row {
        double t;
        std::size_t traj;
        std::size_t sample;
    };
    std::vector<Row> rows;
    for (std::size_t i = 0; i < trajectories.size(); ++i) {
        for (std::size_t k = 0; k < trajectories[i].samples.size(); ++k) {
            rows.push_back({trajectories[i].samples[k].t, i, k});
        }
    }
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });

    out << "#format,cartesian\n";
    for (const Row& r : rows) {
        const Trajectory& tr = trajectories[r.traj];
        const Sample& s = tr.samples[r.sample];
        out << format_double(s.t) << ',' << tr.vehicle_id << ',' << format_double(s.x) << ','
            << format_double(s.y) << '\n';
    }
}

std::vector<Trajectory> clip_and_resample(std::span<const Trajectory> trajectories,
                                          const Region& region, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("resampling tick must be positive");

    constexpr double kSlack = 1e-9;
    std::vector<Trajectory> out;
    for (const Trajectory& tr : trajectories) {
        if (tr.samples.empty()) continue;
        const auto& s = tr.samples;
        const auto k_first = static_cast<long long>(std::ceil(s.front().t / dt - kSlack));
        const auto k_last = static_cast<long long>(std::floor(s.back().t / dt + kSlack));

        Trajectory segment{tr.vehicle_id, {}};
        std::size_t seg = 0;
        for (long long k = k_first; k <= k_last; ++k) {
            const double t = static_cast<double>(k) * dt;
            while (seg + 1 < s.size() && s[seg + 1].t <= t) ++seg;
            Point p{s[seg].x, s[seg].y};
            if (seg + 1 < s.size() && t > s[seg].t) {
                const double f = (t - s[seg].t) / (s[seg + 1].t - s[seg].t);
                p.x = s[seg].x + f * (s[seg + 1].x - s[seg].x);
                p.y = s[seg].y + f * (s[seg + 1].y - s[seg].y);
            }
            if (region.contains(p)) {
                segment.samples.push_back({t, p.x, p.y});
            } else if (!segment.samples.empty()) {
                out.push_back(std::move(segment));
                segment = Trajectory{tr.vehicle_id, {}};
            }
        }
        if (!segment.samples.empty()) out.push_back(std::move(segment));
    }
    return out;
}

std::vector<std::string> vehicle_ids(std::span<const Trajectory> trajectories) {
    std::vector<std::string> ids;
    std::unordered_set<std::string> seen;
    for (const Trajectory& tr : trajectories) {
        if (seen.insert(tr.vehicle_id).second) ids.push_back(tr.vehicle_id);
    }
    return ids;
}

bool PenetrationSample::contains(const std::string& id) const {
    return std::find(selected.begin(), selected.end(), id) != selected.end();
}

PenetrationSample sample_penetration(std::span<const std::string> ids, double ratio,
                                     std::uint64_t seed) {
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw DomainError("penetration ratio must be in (0, 1], got " + format_double(ratio));
    }
    // Sorting first makes the selection independent of input order.
    std::vector<std::string> pool(ids.begin(), ids.end());
    std::sort(pool.begin(), pool.end());
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());

    Rng rng(seed);
    for (std::size_t i = pool.size(); i > 1; --i) {
        std::swap(pool[i - 1], pool[rng.below(i)]);
    }
    const auto count = static_cast<std::size_t>(std::llround(ratio * static_cast<double>(pool.size())));
    pool.resize(std::min(count, pool.size()));
    return PenetrationSample{ratio, seed, std::move(pool)};
}

RsuSet load_rsus(std::istream& in, const Region& region, std::optional<GeoPoint> ref) {
    HeaderState header;
    header.ref = ref;
    RsuSet out;
    std::unordered_set<std::string> ids;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string_view text = trim(line);
        if (text.empty()) continue;
        if (text.front() == '#') {
            read_header(text, lineno, header, "coords");
            continue;
        }
        const auto fields = split(text, ',');
        if (fields.size() != 3) throw ParseError("expected 3 fields (rsu_id,a,b)", lineno);
        const std::string id(trim(fields[0]));
        const auto a = parse_double(fields[1]);
        const auto b = parse_double(fields[2]);
        if (id.empty() || !a || !b) throw ParseError("malformed row", lineno);

        Point p{*a, *b};
        if (header.format.value_or(TraceFormat::cartesian) == TraceFormat::gps) {
            check_geo(*a, *b);
            if (!header.ref) throw ParseError("gps rows require a #ref header", lineno);
            p = project_gps(*a, *b, *header.ref);
        } else if (!std::isfinite(*a) || !std::isfinite(*b)) {
            throw DomainError("non-finite RSU position at line " + std::to_string(lineno));
        }
        if (!ids.insert(id).second) throw ValidationError("duplicate RSU id '" + id + "'");
        if (region.contains(p)) out.units.push_back(Rsu{id, p});
    }
    return out;
}

RsuSet read_rsu_file(const std::filesystem::path& path, const Region& region,
                     std::optional<GeoPoint> ref) {
    std::ifstream in(path);
    if (!in) throw IoError(path.string(), "cannot open RSU file");
    return load_rsus(in, region, ref);
}

}  // namespace vgs
