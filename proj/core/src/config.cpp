#include "vgs/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>

#include "vgs/errors.hpp"
#include "vgs/format.hpp"

namespace vgs {

namespace {

double to_double(const std::string& key, const std::string& value) {
    const auto v = parse_double(trim(value));
    if (!v || !std::isfinite(*v)) throw ConfigError(key, "expected a number, got '" + value + "'");
    return *v;
}

long long to_int(const std::string& key, const std::string& value, long long lo) {
    const auto v = parse_int(trim(value));
    if (!v) throw ConfigError(key, "expected an integer, got '" + value + "'");
    if (*v < lo) throw ConfigError(key, "must be at least " + std::to_string(lo));
    return *v;
}

bool to_bool(const std::string& key, const std::string& value) {
    const auto v = trim(value);
    if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "off" || v == "no") return false;
    throw ConfigError(key, "expected true or false, got '" + value + "'");
}

std::vector<double> to_doubles(const std::string& key, const std::string& value) {
    std::vector<double> out;
    for (auto part : split(value, ',')) out.push_back(to_double(key, std::string(part)));
    return out;
}

}  // namespace

void ScenarioConfig::set(const std::string& key, const std::string& raw) {
    const std::string value(trim(raw));
    const auto num = [&] { return to_double(key, value); };
    const auto count = [&](long long lo) { return to_int(key, value, lo); };

    if (key == "trace") {
        trace = value;
    } else if (key == "trace.format") {
        if (value == "cartesian") trace_format = TraceFormat::cartesian;
        else if (value == "gps") trace_format = TraceFormat::gps;
        else throw ConfigError(key, "expected cartesian or gps");
    } else if (key == "region") {
        const auto v = to_doubles(key, value);
        if (v.size() != 4) throw ConfigError(key, "expected x_min,y_min,x_max,y_max");
        try {
            region = Region(v[0], v[1], v[2], v[3]);
        } catch (const Error& e) {
            throw ConfigError(key, e.what());
        }
    } else if (key == "dt") {
        dt = num();
    } else if (key == "window.start") {
        window_start = num();
    } else if (key == "window.length") {
        window_length = num();
    } else if (key == "range") {
        range = num();
    } else if (key == "los") {
        if (value == "unit_disk") los = LosMode::unit_disk;
        else if (value == "manhattan_los") los = LosMode::manhattan_los;
        else throw ConfigError(key, "expected unit_disk or manhattan_los");
    } else if (key == "road.origin") {
        const auto v = to_doubles(key, value);
        if (v.size() != 2) throw ConfigError(key, "expected x,y");
        road.origin = {v[0], v[1]};
        road_map_given = true;
    } else if (key == "road.spacing") {
        road.spacing = num();
        road_map_given = true;
    } else if (key == "road.streets_x") {
        road.streets_x = static_cast<int>(count(0));
        road_map_given = true;
    } else if (key == "road.streets_y") {
        road.streets_y = static_cast<int>(count(0));
        road_map_given = true;
    } else if (key == "road.corridor_width") {
        road.corridor_width = num();
        road_map_given = true;
    } else if (key == "synth.vehicles") {
        synth.vehicle_count = static_cast<int>(count(0));
    } else if (key == "synth.speed_min") {
        synth.speed_min = num();
    } else if (key == "synth.speed_max") {
        synth.speed_max = num();
    } else if (key == "synth.duration") {
        synth.duration = num();
    } else if (key == "penetration") {
        penetration = to_doubles(key, value);
    } else if (key == "seed") {
        seed = static_cast<std::uint64_t>(count(0));
    } else if (key == "rsu") {
        rsu_file = value;
    } else if (key == "rsu.ref") {
        const auto v = to_doubles(key, value);
        if (v.size() != 2) throw ConfigError(key, "expected lat,lon");
        rsu_ref = GeoPoint{v[0], v[1]};
    } else if (key == "metrics.betweenness") {
        metrics.betweenness = to_bool(key, value);
    } else if (key == "metrics.paths") {
        metrics.paths = to_bool(key, value);
    } else if (key == "metrics.communities") {
        metrics.communities = to_bool(key, value);
    } else if (key == "metrics.diameter_quantile") {
        metrics.diameter_quantile = num();
    } else if (key == "metrics.powerlaw_k_min") {
        metrics.powerlaw_k_min = static_cast<std::uint32_t>(count(1));
    } else if (key == "metrics.powerlaw_min_samples") {
        metrics.powerlaw_min_samples = static_cast<std::size_t>(count(1));
    } else if (key == "stride") {
        stride = static_cast<std::size_t>(count(0));
    } else if (key == "dump_snapshots") {
        dump_snapshots = to_bool(key, value);
    } else if (key == "out") {
        out = value;
    } else if (key == "protocol") {
        const auto p = parse_protocol(value);
        if (!p) throw ConfigError(key, "unknown protocol '" + value + "'");
        protocol = *p;
    } else if (key == "gpcr_mode") {
        const auto m = parse_gpcr_mode(value);
        if (!m) throw ConfigError(key, "unknown GPCR mode '" + value + "'");
        gpcr_mode = *m;
    } else if (key == "lobby_threshold") {
        routing.lobby_threshold = static_cast<std::uint32_t>(count(0));
    } else if (key == "runs") {
        runs = static_cast<std::size_t>(count(0));
    } else if (key == "senders") {
        traffic.sender_count = static_cast<std::size_t>(count(0));
    } else if (key == "packets_per_sender") {
        traffic.packets_per_sender = static_cast<std::size_t>(count(0));
    } else if (key == "cbr_rate") {
        traffic.packets_per_second = num();
    } else if (key == "ttl") {
        ttl = num();
    } else if (key == "hop_latency") {
        traffic.hop_latency = num();
    } else if (key == "max_hops") {
        traffic.max_hops_per_tick = static_cast<std::size_t>(count(0));
    } else if (key == "destination") {
        if (value == "point") traffic.destination = DestinationPolicy::fixed_point;
        else if (value == "node") traffic.destination = DestinationPolicy::fixed_node;
        else throw ConfigError(key, "expected point or node");
    } else if (key == "rho_min") {
        routing.rho_min = num();
    } else if (key == "mean_speed") {
        routing.mean_speed = num();
    } else if (key == "intersection_radius") {
        routing.intersection_radius = num();
    } else if (key == "correlation_threshold") {
        routing.correlation_threshold = num();
    } else if (key == "perimeter_budget") {
        routing.perimeter_hop_budget = static_cast<std::size_t>(count(0));
    } else {
        throw ConfigError(key, "unknown configuration key");
    }
}

void ScenarioConfig::validate() const {
    if (!(dt > 0.0)) throw ConfigError("dt", "must be positive");
    if (window_length && !(*window_length > 0.0)) throw ConfigError("window.length", "must be positive");
    if (!(range > 0.0)) throw ConfigError("range", "must be positive");
    if (penetration.empty()) throw ConfigError("penetration", "needs at least one ratio");
    for (double r : penetration) {
        if (!(r > 0.0 && r <= 1.0)) throw ConfigError("penetration", "ratios must lie in (0, 1]");
    }
    if (stride < 1) throw ConfigError("stride", "must be at least 1");
    if (runs < 1) throw ConfigError("runs", "must be at least 1");
    if (!(metrics.diameter_quantile > 0.0 && metrics.diameter_quantile <= 1.0)) {
        throw ConfigError("metrics.diameter_quantile", "must lie in (0, 1]");
    }
    if (ttl && !(*ttl > 0.0)) throw ConfigError("ttl", "must be positive");
    road.validate();
    if (!trace) {
        GridScenarioConfig g = synth;
        g.road = road;
        g.dt = dt;
        g.validate();
    }
}

Region ScenarioConfig::effective_region() const { return region.value_or(road.bounds()); }

RadioModel ScenarioConfig::radio() const {
    RadioModel m;
    m.range = range;
    m.los = los;
    if (los == LosMode::manhattan_los) m.road_map = road;
    return m;
}

double ScenarioConfig::effective_ttl() const {
    if (ttl) return *ttl;
    return protocol == Protocol::gpcr ? 30.0 : 300.0;
}

void apply_config_text(ScenarioConfig& cfg, std::istream& in) {
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected key = value", number);
        const std::string key(trim(text.substr(0, eq)));
        if (key.empty()) throw ParseError("missing key", number);
        cfg.set(key, std::string(trim(text.substr(eq + 1))));
    }
}

ScenarioConfig load_config(const std::optional<std::filesystem::path>& file,
                           const std::vector<std::pair<std::string, std::string>>& overrides) {
    ScenarioConfig cfg;
    if (file) {
        std::ifstream in(*file);
        if (!in) throw IoError(file->string(), "cannot open config file");
        apply_config_text(cfg, in);
    }
    for (const auto& [key, value] : overrides) cfg.set(key, value);
    cfg.validate();
    return cfg;
}

Scenario load_scenario(const ScenarioConfig& cfg) {
    const Region region = cfg.effective_region();
    std::vector<Trajectory> raw;
    if (cfg.trace) {
        std::ifstream in(*cfg.trace);
        if (!in) throw IoError(cfg.trace->string(), "cannot open trace file");
        try {
            raw = cfg.trace_format ? parse_trace(in, *cfg.trace_format) : parse_trace(in);
        } catch (const ParseError& e) {
            throw ParseError(cfg.trace->string() + ": " + e.what());
        }
    } else {
        GridScenarioConfig g = cfg.synth;
        g.road = cfg.road;
        g.dt = cfg.dt;
        g.seed = cfg.seed;
        raw = generate_grid_scenario(g);
    }

    Scenario sc{clip_and_resample(raw, region, cfg.dt), {}, region, {}, cfg.dt};
    if (cfg.rsu_file) sc.rsus = read_rsu_file(*cfg.rsu_file, region, cfg.rsu_ref);

    double length = 0.0;
    if (cfg.window_length) {
        length = *cfg.window_length;
    } else if (!cfg.trace) {
        length = cfg.synth.duration - cfg.window_start;
    } else {
        double last = -std::numeric_limits<double>::infinity();
        for (const auto& tr : sc.trajectories) {
            if (!tr.samples.empty()) last = std::max(last, tr.samples.back().t);
        }
        length = std::isfinite(last) ? last + cfg.dt - cfg.window_start : 0.0;
    }
    if (!(length > 0.0)) throw ConfigError("window.length", "window is empty for this trace");
    sc.window = Window{cfg.window_start, cfg.window_start + length};
    return sc;
}

}  // namespace vgs
