#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vgs/geometry.hpp"

namespace vgs {

struct Sample {
    double t = 0.0;  // seconds
    double x = 0.0;  // meters
    double y = 0.0;

    friend bool operator==(const Sample&, const Sample&) = default;
};

// One vehicle's time-ordered positions. Timestamps are strictly increasing.
struct Trajectory {
    std::string vehicle_id;
    std::vector<Sample> samples;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

enum class TraceFormat { cartesian, gps };

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

inline constexpr double kEarthRadius = 6371000.0;

// Equirectangular projection around `ref`:
//   x = R * dlon * cos(lat0), y = R * dlat   (angles in radians)
// Throws DomainError when |lat| > 90 or |lon| > 180 (for either point).
Point project_gps(double lat, double lon, GeoPoint ref);

// Reads `t,vehicle_id,a,b` rows. Lines starting with '#' are headers:
// `#format,cartesian|gps` selects the column meaning and `#ref,lat,lon` sets
// the projection origin for gps rows. Output holds one trajectory per vehicle
// in order of first appearance.
std::vector<Trajectory> parse_trace(std::istream& in);
// As above, but the stream must be in `format` (a contradicting header is an error).
std::vector<Trajectory> parse_trace(std::istream& in, TraceFormat format);
std::vector<Trajectory> read_trace_file(const std::filesystem::path& path);

// Writes a cartesian trace, rows ordered by time then by trajectory order.
void write_trace(std::ostream& out, std::span<const Trajectory> trajectories);

// Linear interpolation onto t = k*dt, keeping only ticks inside `region`.
// A vehicle that leaves and re-enters yields one trajectory per resident
// segment, all under the same vehicle_id.
std::vector<Trajectory> clip_and_resample(std::span<const Trajectory> trajectories,
                                          const Region& region, double dt);

// Distinct vehicle ids in order of first appearance.
std::vector<std::string> vehicle_ids(std::span<const Trajectory> trajectories);

struct PenetrationSample {
    double ratio = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::string> selected;  // permutation prefix, in draw order

    bool contains(const std::string& id) const;
};

// First round(ratio * n) ids of a seeded permutation of the distinct ids.
// Selections for one seed are nested across ratios.
PenetrationSample sample_penetration(std::span<const std::string> ids, double ratio,
                                     std::uint64_t seed);

struct Rsu {
    std::string id;
    Point position;

    friend bool operator==(const Rsu&, const Rsu&) = default;
};

struct RsuSet {
    std::vector<Rsu> units;

    std::size_t size() const { return units.size(); }
    bool empty() const { return units.empty(); }
};

// Reads `rsu_id,a,b` rows under a `#coords,xy|gps` header (default xy). gps
// rows need a projection origin, from `ref` or a `#ref,lat,lon` header.
// Units outside `region` are dropped; duplicate ids are a ValidationError.
RsuSet load_rsus(std::istream& in, const Region& region, std::optional<GeoPoint> ref = {});
RsuSet read_rsu_file(const std::filesystem::path& path, const Region& region,
                     std::optional<GeoPoint> ref = {});

}  // namespace vgs
