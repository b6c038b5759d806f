#pragma once

#include <string>
#include <vector>

#include "rfis/partition.hpp"

namespace rfis {

// JSON configuration: square uniform grid, address indices, scaling factors
// and a partition given as 1-based cell pairs.
struct RfisConfig {
    int N = 0;
    int K = 0;
    Matrix z;                           // (N+1) x (N+1)
    Matrix s;                           // (N+1) x (N+1)
    std::vector<int> xprime_idx;        // N+1 node indices
    std::vector<int> yprime_idx;
    std::vector<std::vector<Cell>> partition;
    std::string name;                   // optional
};

RfisConfig parse_config(const std::string& text);
RfisConfig load_config(const std::string& path);
std::string dump_config(const RfisConfig& config);

// Everything the pipeline needs, built and validated from a config.
struct Scenario {
    InterpolationData data;
    AddressMaps maps;
    BilinearRfis rfis;
    Partition partition;
    int K = 0;
};

Scenario build_scenario(const RfisConfig& config);

// The bundled N=4, K=2 example configuration. The original variant carries
// the scaling matrix whose uniform sums fail at (r,t) = (1,2); the corrected
// variant changes s[1][0] from 0.2 to 0.1, which restores them.
std::string paper_example_json(bool corrected);

}  // namespace rfis
