// Copyright 2026 The qonline Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "config.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qonline::tools {

namespace {

std::string trim(const std::string &s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string &line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); i++) {
        if (line[i] == '"') {
            quoted = !quoted;
        } else if (line[i] == '#' && !quoted) {
            return line.substr(0, i);
        }
    }
    return line;
}

ConfigValue parse_value(const std::string &raw, int line_no) {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
        return raw.substr(1, raw.size() - 2);
    }
    if (raw == "true") {
        return true;
    }
    if (raw == "false") {
        return false;
    }
    std::string digits;
    for (char c : raw) {
        if (c != '_') {
            digits += c;
        }
    }
    double v = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
        throw std::invalid_argument("config line " + std::to_string(line_no) + ": cannot parse value '" + raw + "'");
    }
    return v;
}

double as_number(const ConfigTable &t, const std::string &key) {
    const ConfigValue &v = t.at(key);
    if (const double *d = std::get_if<double>(&v)) {
        return *d;
    }
    if (const std::string *s = std::get_if<std::string>(&v)) {
        double out = 0;
        auto [ptr, ec] = std::from_chars(s->data(), s->data() + s->size(), out);
        if (ec == std::errc() && ptr == s->data() + s->size()) {
            return out;
        }
    }
    throw std::invalid_argument("config key '" + key + "' must be a number");
}

std::string as_string(const ConfigTable &t, const std::string &key) {
    const ConfigValue &v = t.at(key);
    if (const std::string *s = std::get_if<std::string>(&v)) {
        return *s;
    }
    if (const double *d = std::get_if<double>(&v)) {
        std::ostringstream os;
        os.precision(17);
        os << *d;
        return os.str();
    }
    return std::get<bool>(v) ? "true" : "false";
}

long as_count(const ConfigTable &t, const std::string &key) {
    const double v = as_number(t, key);
    if (v != static_cast<double>(static_cast<long>(v))) {
        throw std::invalid_argument("config key '" + key + "' must be an integer");
    }
    return static_cast<long>(v);
}

}  // namespace

ConfigTable parse_config(const std::string &text) {
    ConfigTable out;
    std::istringstream in(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        line = trim(strip_comment(line));
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::invalid_argument("config line " + std::to_string(line_no) + ": unterminated section");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        }
        if (!section.empty()) {
            key = section + "." + key;
        }
        if (out.count(key)) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        out[key] = parse_value(trim(line.substr(eq + 1)), line_no);
    }
    return out;
}

ConfigTable load_config_file(const std::string &path) {
    std::ifstream f(path);
    if (!f) {
        throw std::invalid_argument("cannot open config file " + path);
    }
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

ConfigTable merge_tables(ConfigTable base, const ConfigTable &flags) {
    for (const auto &[k, v] : flags) {
        base[k] = v;
    }
    return base;
}

ExperimentConfig config_from_table(const ConfigTable &t) {
    static const std::set<std::string> known = {
        "scenario", "seed",      "n",      "r",      "T",     "K",     "epsilon", "eta",   "loss",  "mechanism",
        "mode",     "wrapper",   "channel", "game",  "k",     "M",     "delta",   "q",     "out",   "bound"};
    ExperimentConfig c;
    for (const auto &[key, value] : t) {
        if (key.rfind("params.", 0) == 0) {
            c.bound_params[key.substr(7)] = as_number(t, key);
            continue;
        }
        if (!known.count(key)) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    auto has = [&](const char *k) { return t.count(k) > 0; };
    if (has("scenario")) c.scenario = as_string(t, "scenario");
    if (has("seed")) {
        const double s = as_number(t, "seed");
        if (s < 0 || s != static_cast<double>(static_cast<uint64_t>(s))) {
            throw std::invalid_argument("seed must be a nonnegative integer");
        }
        c.seed = static_cast<uint64_t>(s);
    }
    if (has("n")) c.n = static_cast<int>(as_count(t, "n"));
    if (has("r")) c.r = static_cast<int>(as_count(t, "r"));
    if (has("T")) c.rounds = as_count(t, "T");
    if (has("K")) c.k_hypotheses = as_count(t, "K");
    if (has("epsilon")) c.epsilon = as_number(t, "epsilon");
    if (has("eta")) c.eta = as_string(t, "eta");
    if (has("loss")) c.loss = as_string(t, "loss");
    if (has("mechanism")) c.mechanism = as_string(t, "mechanism");
    if (has("mode")) c.mode = as_string(t, "mode");
    if (has("wrapper")) c.wrapper = as_string(t, "wrapper");
    if (has("channel")) c.channel = as_string(t, "channel");
    if (has("game")) c.game = as_string(t, "game");
    if (has("k")) c.samples = as_count(t, "k");
    if (has("M")) c.queries = as_count(t, "M");
    if (has("delta")) c.delta = as_number(t, "delta");
    if (has("q")) c.reads_per_round = as_count(t, "q");
    if (has("out")) c.out = as_string(t, "out");
    if (has("bound")) c.bound = as_string(t, "bound");
    return c;
}

void validate_config(const ExperimentConfig &c) {
    static const std::set<std::string> scenarios = {"learn-pauli", "learn-mixture", "learn-choi-mmw", "shadow",
                                                    "comb-shadow", "adversary-game", "bounds"};
    auto require = [](bool ok, const std::string &msg) {
        if (!ok) {
            throw std::invalid_argument(msg);
        }
    };
    require(scenarios.count(c.scenario) > 0, "unknown or missing scenario '" + c.scenario + "'");
    if (c.scenario == "bounds") {
        require(!c.bound.empty(), "bounds scenario needs a bound name");
        return;
    }
    require(c.seed.has_value(), "seed is mandatory");
    require(c.n >= 1 && c.n <= 4, "n must lie in 1..4");
    require(c.epsilon > 0 && c.epsilon < 1, "epsilon must lie in (0, 1)");
    require(c.eta == "default" || std::stod(c.eta) > 0, "eta must be 'default' or positive");
    require(c.loss == "absolute" || c.loss == "squared", "loss must be absolute or squared");
    if (c.scenario.rfind("learn", 0) == 0) {
        require(c.rounds >= 1, "T must be positive");
        require(c.wrapper == "mistake-driven" || c.wrapper == "plain", "wrapper must be mistake-driven or plain");
    }
    if (c.scenario == "learn-mixture") {
        require(c.k_hypotheses >= 1, "K must be positive");
    }
    if (c.scenario == "learn-choi-mmw") {
        require(c.mode == "lazy" || c.mode == "agile", "mode must be lazy or agile");
        require(c.n <= 2, "learn-choi-mmw supports n <= 2");
    }
    if (c.scenario == "shadow" || c.scenario == "comb-shadow") {
        require(c.samples >= 1 && c.queries >= 1, "k and M must be positive");
        require(c.delta > 0 && c.delta < 1, "delta must lie in (0, 1)");
        require(c.mechanism == "naive" || c.mechanism == "split-noise", "mechanism must be naive or split-noise");
        require(c.channel == "pauli" || c.channel == "random" || c.channel == "depolarized-hadamard",
                "channel must be pauli, random or depolarized-hadamard");
    }
    if (c.scenario == "comb-shadow") {
        require(c.r >= 1 && c.r <= 3 && c.n * c.r <= 4, "comb-shadow needs 1 <= r <= 3 and n*r <= 4");
    }
    if (c.scenario == "adversary-game") {
        require(c.game == "all-zeros" || c.game == "pauli-embedding", "game must be all-zeros or pauli-embedding");
        require(c.reads_per_round >= 1, "q must be positive");
    }
}

}  // namespace qonline::tools
