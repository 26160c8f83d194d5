#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace mlnet {

// Parsed run specification. Defaults correspond to a desk-scale ER
// double layer.
struct RunConfig {
    std::string network_kind = "er";  // "er" or "scale_free"
    int n = 100000;
    double mean_degree = 4.0;
    double gamma = 2.6;
    int k_min = 2;
    int k_max = 0;  // 0: floor(sqrt(n))
    std::vector<double> theta = {0.0};
    double omega = std::numeric_limits<double>::quiet_NaN();  // NaN: unused
    double p_start = 0.0;
    double p_stop = 1.0;
    double p_step = 0.005;
    int realizations = 10;
    std::uint64_t seed = 42;
    int layers = 2;
    std::string pairing = "identity";
};

// Flat `key = value` file; '#' starts a comment; theta accepts a comma
// list. Unknown keys and out-of-range values raise std::runtime_error
// naming the key.
RunConfig parse_config(const std::string& path);

}  // namespace mlnet
