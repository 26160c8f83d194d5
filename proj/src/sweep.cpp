#include "mlnet/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace mlnet {

namespace {

constexpr const char* kHeader = "theta,omega,p,layer,s_mean,s_std,noi_mean,realizations";

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// NaN omega ("NA") sorts before any numeric value
double omega_key(double omega) {
    return std::isnan(omega) ? -std::numeric_limits<double>::infinity() : omega;
}

}  // namespace

void write_sweep_csv(std::vector<SweepRecord> records, const std::string& path) {
    std::stable_sort(records.begin(), records.end(),
                     [](const SweepRecord& a, const SweepRecord& b) {
                         return std::make_tuple(a.theta, omega_key(a.omega), a.p,
                                                std::cref(a.layer)) <
                                std::make_tuple(b.theta, omega_key(b.omega), b.p,
                                                std::cref(b.layer));
                     });
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_sweep_csv: cannot open " + path);
    out << kHeader << "\n";
    for (const auto& r : records) {
        out << fmt(r.theta) << ',' << (std::isnan(r.omega) ? "NA" : fmt(r.omega)) << ','
            << fmt(r.p) << ',' << r.layer << ',' << fmt(r.s_mean) << ','
            << fmt(r.s_std) << ',' << fmt(r.noi_mean) << ',' << r.realizations << "\n";
    }
    if (!out) throw std::runtime_error("write_sweep_csv: write failed for " + path);
}

std::vector<SweepRecord> read_sweep_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_sweep_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw std::runtime_error("read_sweep_csv: bad header in " + path);
    std::vector<SweepRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (fields.size() != 8)
            throw std::runtime_error("read_sweep_csv: bad row in " + path);
        SweepRecord r;
        r.theta = std::stod(fields[0]);
        r.omega = fields[1] == "NA" ? std::numeric_limits<double>::quiet_NaN()
                                    : std::stod(fields[1]);
        r.p = std::stod(fields[2]);
        r.layer = fields[3];
        r.s_mean = std::stod(fields[4]);
        r.s_std = std::stod(fields[5]);
        r.noi_mean = std::stod(fields[6]);
        r.realizations = std::stoi(fields[7]);
        records.push_back(std::move(r));
    }
    return records;
}

}  // namespace mlnet
