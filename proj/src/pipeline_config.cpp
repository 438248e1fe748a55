#include "robemb/pipeline_config.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <stdexcept>
#include <type_traits>

#include "robemb/spread_matching.hpp"

namespace robemb {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        T v;
        if constexpr (std::is_same_v<T, double>) {
            v = std::stod(text, &used);
        } else if constexpr (std::is_same_v<T, std::uint64_t>) {
            if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
            v = std::stoull(text, &used);
        } else {
            v = static_cast<T>(std::stoll(text, &used));
        }
        if (used != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::logic_error&) {
        throw std::invalid_argument("config: bad value for '" + key + "': '" + text + "'");
    }
}

}  // namespace

PipelineConfig parse_pipeline_config(std::istream& in) {
    PipelineConfig c;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
        if (key == "delta") c.delta = parse_number<int>(key, val);
        else if (key == "gamma") c.gamma = parse_number<double>(key, val);
        else if (key == "d") c.d = parse_number<double>(key, val);
        else if (key == "eps") c.eps = parse_number<double>(key, val);
        else if (key == "m") c.m = parse_number<int>(key, val);
        else if (key == "r") c.r = parse_number<int>(key, val);
        else if (key == "mu") c.mu = parse_number<double>(key, val);
        else if (key == "zeta") c.zeta = parse_number<double>(key, val);
        else if (key == "theta") c.theta = parse_number<double>(key, val);
        else if (key == "C") c.C = parse_number<int>(key, val);
        else if (key == "trials") c.trials = parse_number<std::int64_t>(key, val);
        else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, val);
        else if (key == "pattern") c.pattern = val;
        else if (key == "alpha") c.alpha = parse_number<double>(key, val);
        else if (key == "probes") c.probes = parse_number<int>(key, val);
        else if (key == "max_resamples") c.max_resamples = parse_number<int>(key, val);
        else throw std::invalid_argument("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    if (c.delta < 1 || c.r < 1 || c.m < 1 || c.trials < 1 || c.probes < 0 || c.max_resamples < 0)
        throw std::invalid_argument("config: delta, r, m and trials must be positive");
    if (c.pattern != "clique-factor" && c.pattern != "matching")
        throw std::invalid_argument("config: pattern must be 'clique-factor' or 'matching'");
    return c;
}

PipelineConfig read_pipeline_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    return parse_pipeline_config(in);
}

Graph clique_factor_pattern(int n, int s) {
    if (s < 1 || n % s != 0) throw std::invalid_argument("clique factor pattern: n must be a multiple of s");
    GraphBuilder b(n);
    for (int base = 0; base < n; base += s)
        for (int i = 0; i < s; ++i)
            for (int j = i + 1; j < s; ++j) b.add_edge(base + i, base + j);
    return b.build();
}

Graph perfect_matching_pattern(int n) { return clique_factor_pattern(n, 2); }

PipelineSetup build_pipeline(const PipelineConfig& cfg) {
    const int clique = cfg.delta + 1;
    if (cfg.r % clique != 0) throw std::invalid_argument("pipeline: r must be a multiple of delta + 1");
    Graph r = complete_graph(cfg.r);
    GraphBuilder rp(cfg.r);
    for (int base = 0; base < cfg.r; base += clique)
        for (int i = 0; i < clique; ++i)
            for (int j = i + 1; j < clique; ++j) rp.add_edge(base + i, base + j);
    Seed seed{cfg.seed};
    PipelineSetup s;
    s.host = generate_regular_host(r, rp.build(), cfg.m, cfg.d, seed.stream(100));
    if (cfg.eps > 0.0) s.host.params.eps = cfg.eps;
    const int n = cfg.r * cfg.m;
    Graph h = cfg.pattern == "matching" ? perfect_matching_pattern(n) : clique_factor_pattern(n, clique);
    const double alpha = cfg.alpha > 0.0 ? cfg.alpha : cfg.mu;
    s.pattern = partition_pattern(h, s.host, {}, alpha, seed.stream(200));
    s.rga.mu = cfg.mu;
    s.rga.zeta = cfg.zeta;
    s.rga.theta = cfg.theta > 0.0 ? cfg.theta : -1.0;
    s.C = cfg.C > 0 ? cfg.C : default_spread_constant(cfg.d, std::max(1, h.max_degree()));
    return s;
}

}  // namespace robemb
