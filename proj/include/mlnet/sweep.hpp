#pragma once

#include <string>
#include <vector>

namespace mlnet {

// One row of sweep output. omega = NaN means "not applicable" and is
// serialized as NA.
struct SweepRecord {
    double theta = 0.0;
    double omega = 0.0;
    double p = 0.0;
    std::string layer;
    double s_mean = 0.0;
    double s_std = 0.0;
    double noi_mean = 0.0;
    int realizations = 0;
};

// Writes `theta,omega,p,layer,s_mean,s_std,noi_mean,realizations` with
// reals at 6 significant digits, rows sorted by (theta, omega, p,
// layer) with NA omega first, and a trailing newline. Byte output is a
// pure function of the records.
void write_sweep_csv(std::vector<SweepRecord> records, const std::string& path);

// Parses a file produced by write_sweep_csv; throws on schema
// mismatch.
std::vector<SweepRecord> read_sweep_csv(const std::string& path);

}  // namespace mlnet
