#include "fbmc/scenario.hpp"

#include <cmath>
#include <fstream>

namespace fbmc {

std::string to_string(ChannelKind kind) {
    switch (kind) {
    case ChannelKind::Awgn: return "awgn";
    case ChannelKind::BrazilA: return "brazil_a";
    case ChannelKind::Custom: return "custom";
    }
    return "awgn";
}

ChannelKind parse_channel_kind(const std::string& text) {
    if (text == "awgn") return ChannelKind::Awgn;
    if (text == "brazil_a") return ChannelKind::BrazilA;
    if (text == "custom") return ChannelKind::Custom;
    throw ConfigError("unknown channel type '" + text + "'");
}

std::string to_string(PilotSource source) { return source == PilotSource::Training ? "training" : "frame"; }

PilotSource parse_pilot_source(const std::string& text) {
    if (text == "training") return PilotSource::Training;
    if (text == "frame") return PilotSource::Frame;
    throw ConfigError("unknown pilot_source '" + text + "'");
}

ChannelProfile Scenario::channel_profile() const {
    switch (channel) {
    case ChannelKind::Awgn: return identity_profile();
    case ChannelKind::BrazilA: return brazil_a_profile(params.sample_rate);
    case ChannelKind::Custom: return resolve_profile(custom_paths, params.sample_rate);
    }
    return identity_profile();
}

void Scenario::validate() const {
    params.validate();
    if (std::isnan(snr_db)) throw ConfigError("snr_db is not a number");
    if (min_errors == 0) throw ConfigError("min_errors must be positive");
    if (frame_symbols == 0) throw ConfigError("frame_symbols must be positive");
    if (pilot_window == 0 || pilot_window > frame_symbols)
        throw ConfigError("pilot_window must be between 1 and frame_symbols");
    const std::size_t frame_bits = frame_symbols * params.data_carriers * params.bits_per_symbol();
    if (max_bits < frame_bits) throw ConfigError("max_bits is smaller than one frame");
    if (!(nn.delta > 0.0)) throw ConfigError("nn.delta must be positive");
    if (nn.max_epochs == 0) throw ConfigError("nn.epochs must be positive");
    if (!(nn.tolerance >= 0.0)) throw ConfigError("nn.tolerance must be non-negative");
    if (channel == ChannelKind::Custom && custom_paths.empty())
        throw ConfigError("custom channel needs at least one path");
}

namespace {

SystemParams params_from_json(const nlohmann::json& j, int qam) {
    if (j.contains("mode") && j.contains("toy")) throw ConfigError("give either mode or toy, not both");
    if (j.contains("toy")) {
        const auto& t = j.at("toy");
        return toy_params(t.at("m").get<std::size_t>(), t.at("occupied").get<std::size_t>(), qam);
    }
    if (!j.contains("mode")) throw ConfigError("scenario needs mode or toy");
    const Mode mode = parse_mode(j.at("mode").get<std::string>());
    if (mode == Mode::Toy) throw ConfigError("toy mode needs a toy {m, occupied} block");
    return mode_params(mode, qam);
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
    Scenario s;
    try {
        const int qam = j.value("qam_order", 4);
        s.params = params_from_json(j, qam);

        if (j.contains("channel")) {
            const auto& c = j.at("channel");
            s.channel = parse_channel_kind(c.at("type").get<std::string>());
            if (c.contains("profile_file")) {
                if (s.channel != ChannelKind::Custom) throw ConfigError("profile_file needs channel type custom");
                std::filesystem::path file = c.at("profile_file").get<std::string>();
                if (file.is_relative()) file = base_dir / file;
                s.custom_paths = load_paths(file);
            } else if (c.contains("paths")) {
                if (s.channel != ChannelKind::Custom) throw ConfigError("paths needs channel type custom");
                s.custom_paths = paths_from_json(c.at("paths"));
            }
        }

        if (j.contains("snr_db")) s.snr_db = j.at("snr_db").get<double>();
        s.estimator = parse_estimator(j.value("estimator", std::string("cubic")));
        if (j.contains("nn")) {
            const auto& n = j.at("nn");
            s.nn.delta = n.value("delta", s.nn.delta);
            s.nn.max_epochs = n.value("epochs", s.nn.max_epochs);
            s.nn.tolerance = n.value("tolerance", s.nn.tolerance);
            s.nn.activation = parse_activation(n.value("activation", to_string(s.nn.activation)));
            s.nn.rule = parse_update_rule(n.value("rule", to_string(s.nn.rule)));
            s.nn.train_bias = n.value("train_bias", s.nn.train_bias);
        }
        s.seed = j.value("seed", s.seed);
        s.min_errors = j.value("min_errors", s.min_errors);
        s.max_bits = static_cast<std::size_t>(j.value("max_bits", static_cast<double>(s.max_bits)));
        s.frame_symbols = j.value("frame_symbols", s.frame_symbols);
        s.pilot_window = j.value("pilot_window", s.pilot_window);
        s.pilot_source = parse_pilot_source(j.value("pilot_source", to_string(s.pilot_source)));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad scenario: ") + e.what());
    }
    s.validate();
    // Resolve once so bad custom delays surface as configuration errors.
    (void)s.channel_profile();
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open scenario " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse scenario " + file.string() + ": " + e.what());
    }
    return scenario_from_json(j, file.parent_path());
}

}  // namespace fbmc
