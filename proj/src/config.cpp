#include "mlnet/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mlnet {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(const std::string& key, const std::string& why) {
    throw std::runtime_error("parse_config: " + key + ": " + why);
}

double to_real(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        fail(key, "not a number: '" + v + "'");
    }
    if (pos != v.size()) fail(key, "not a number: '" + v + "'");
    return x;
}

long to_int(const std::string& key, const std::string& v) {
    std::size_t pos = 0;
    long x;
    try {
        x = std::stol(v, &pos);
    } catch (const std::exception&) {
        fail(key, "not an integer: '" + v + "'");
    }
    if (pos != v.size()) fail(key, "not an integer: '" + v + "'");
    return x;
}

}  // namespace

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("parse_config: cannot open " + path);
    RunConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "parse_config: " << path << ":" << lineno << ": expected key = value";
            throw std::runtime_error(msg.str());
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (val.empty()) fail(key, "empty value");

        if (key == "network.kind") {
            if (val != "er" && val != "scale_free")
                fail(key, "must be er or scale_free");
            cfg.network_kind = val;
        } else if (key == "network.n") {
            long n = to_int(key, val);
            if (n < 2) fail(key, "must be >= 2");
            cfg.n = static_cast<int>(n);
        } else if (key == "network.mean_degree") {
            cfg.mean_degree = to_real(key, val);
            if (!(cfg.mean_degree > 0)) fail(key, "must be positive");
        } else if (key == "network.gamma") {
            cfg.gamma = to_real(key, val);
            if (!(cfg.gamma > 1)) fail(key, "must be > 1");
        } else if (key == "network.k_min") {
            long k = to_int(key, val);
            if (k < 1) fail(key, "must be >= 1");
            cfg.k_min = static_cast<int>(k);
        } else if (key == "network.k_max") {
            long k = to_int(key, val);
            if (k < 0) fail(key, "must be >= 0");
            cfg.k_max = static_cast<int>(k);
        } else if (key == "theta") {
            cfg.theta.clear();
            std::istringstream ls(val);
            std::string item;
            while (std::getline(ls, item, ','))
                cfg.theta.push_back(to_real(key, trim(item)));
            if (cfg.theta.empty()) fail(key, "empty list");
        } else if (key == "omega") {
            cfg.omega = to_real(key, val);
            if (!(cfg.omega >= 0 && cfg.omega <= 1)) fail(key, "must be in [0,1]");
        } else if (key == "p.start") {
            cfg.p_start = to_real(key, val);
            if (!(cfg.p_start >= 0 && cfg.p_start <= 1)) fail(key, "must be in [0,1]");
        } else if (key == "p.stop") {
            cfg.p_stop = to_real(key, val);
            if (!(cfg.p_stop >= 0 && cfg.p_stop <= 1)) fail(key, "must be in [0,1]");
        } else if (key == "p.step") {
            cfg.p_step = to_real(key, val);
            if (!(cfg.p_step > 0)) fail(key, "p.step must be positive");
        } else if (key == "realizations") {
            long r = to_int(key, val);
            if (r < 1) fail(key, "must be >= 1");
            cfg.realizations = static_cast<int>(r);
        } else if (key == "seed") {
            long s = to_int(key, val);
            if (s < 0) fail(key, "must be >= 0");
            cfg.seed = static_cast<std::uint64_t>(s);
        } else if (key == "layers") {
            long l = to_int(key, val);
            if (l != 2 && l != 3) fail(key, "must be 2 or 3");
            cfg.layers = static_cast<int>(l);
        } else if (key == "pairing") {
            if (val != "identity" && val != "random_permutation" && val != "random_subset")
                fail(key, "must be identity, random_permutation, or random_subset");
            cfg.pairing = val;
        } else {
            fail(key, "unknown key");
        }
    }
    if (cfg.p_start > cfg.p_stop) fail("p.start", "must be <= p.stop");
    return cfg;
}

}  // namespace mlnet
