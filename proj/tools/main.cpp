#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vgs/config.hpp"
#include "vgs/errors.hpp"
#include "vgs/report.hpp"

namespace {

struct Options {
    std::optional<std::string> config;
    std::optional<std::string> range, penetration, seed, stride, out;
    std::optional<std::string> protocol, gpcr_mode, lobby_threshold, runs;
    std::optional<std::string> trace;
    std::vector<std::string> sets;  // --set key=value
};

void add_common(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "key = value configuration file");
    cmd->add_option("--range", o.range, "radio range in meters");
    cmd->add_option("--penetration", o.penetration, "penetration ratios, comma separated");
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--trace", o.trace, "input trace file");
    cmd->add_option("--set", o.sets, "extra key=value setting (repeatable)");
}

std::vector<std::pair<std::string, std::string>> overrides(const Options& o) {
    std::vector<std::pair<std::string, std::string>> kv;
    // --set first so the dedicated flags win when both name a key
    for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) throw vgs::ConfigError(s, "--set expects key=value");
        kv.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    const std::pair<const char*, const std::optional<std::string>*> flags[] = {
        {"range", &o.range},         {"penetration", &o.penetration},
        {"seed", &o.seed},           {"stride", &o.stride},
        {"out", &o.out},             {"protocol", &o.protocol},
        {"gpcr_mode", &o.gpcr_mode}, {"lobby_threshold", &o.lobby_threshold},
        {"runs", &o.runs},           {"trace", &o.trace},
    };
    for (const auto& [key, value] : flags) {
        if (*value) kv.emplace_back(key, **value);
    }
    return kv;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temporal graph analysis and routing simulation for vehicular networks"};
    app.require_subcommand(1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "per-tick graph metrics");
    add_common(analyze, o);
    analyze->add_option("--stride", o.stride, "betweenness every K ticks");

    auto* links = app.add_subcommand("links", "link durations and re-healing times");
    add_common(links, o);

    auto* route = app.add_subcommand("route", "packet routing simulation");
    add_common(route, o);
    route->add_option("--protocol", o.protocol, "vadd_baseline | vadd_enhanced | gpcr");
    route->add_option("--gpcr-mode", o.gpcr_mode, "neighbor_table | correlation | lobby_index");
    route->add_option("--lobby-threshold", o.lobby_threshold, "lobby index threshold for GPCR");
    route->add_option("--runs", o.runs, "number of seeded runs");

    auto* synth = app.add_subcommand("synth", "generate a grid mobility trace");
    add_common(synth, o);

    auto* convert = app.add_subcommand("convert", "clip and resample a trace");
    add_common(convert, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    vgs::ScenarioConfig cfg;
    try {
        cfg = vgs::load_config(o.config, overrides(o));
    } catch (const vgs::ParseError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const vgs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const vgs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }

    try {
        if (analyze->parsed()) vgs::cmd_analyze(cfg);
        else if (links->parsed()) vgs::cmd_links(cfg);
        else if (route->parsed()) vgs::cmd_route(cfg);
        else if (synth->parsed()) vgs::cmd_synth(cfg);
        else if (convert->parsed()) vgs::cmd_convert(cfg);
    } catch (const vgs::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const vgs::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
