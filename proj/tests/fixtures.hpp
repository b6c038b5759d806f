#pragma once

#include <utility>

#include "rfis/config.hpp"

namespace rfis_test {

inline rfis::RfisConfig paper_config(bool corrected) {
    return rfis::parse_config(rfis::paper_example_json(corrected));
}

inline rfis::Scenario paper(bool corrected) { return rfis::build_scenario(paper_config(corrected)); }

// Paper data and maps with a replaced scaling matrix.
inline rfis::Scenario paper_with_scaling(rfis::Matrix s) {
    rfis::RfisConfig config = paper_config(true);
    config.s = std::move(s);
    return rfis::build_scenario(config);
}

inline rfis::Scenario zero_scaling_paper() {
    return paper_with_scaling(rfis::Matrix(5, 5, 0.0));
}

// Paper example with every scaling factor multiplied by `factor`.
inline rfis::Scenario scaled_paper(double factor) {
    rfis::RfisConfig config = paper_config(true);
    for (double& v : config.s.data()) v *= factor;
    return rfis::build_scenario(config);
}

// Minimal N = K = 2 setup: every map spans the whole axis, so each cell
// domain is [0,1]^2 and the single whole-square part is compatible.
inline rfis::Scenario n2_scenario(rfis::Matrix z, rfis::Matrix s) {
    rfis::RfisConfig config;
    config.N = 2;
    config.K = 2;
    config.xprime_idx = {0, 2, 0};
    config.yprime_idx = {0, 2, 0};
    config.z = std::move(z);
    config.s = std::move(s);
    config.partition = {{{1, 1}, {1, 2}, {2, 1}, {2, 2}}};
    return rfis::build_scenario(config);
}

// N = K = 3 whole-square setup, for coverage of refinement ratios above 2.
inline rfis::Scenario n3_scenario(rfis::Matrix z, rfis::Matrix s) {
    rfis::RfisConfig config;
    config.N = 3;
    config.K = 3;
    config.xprime_idx = {0, 3, 0, 3};
    config.yprime_idx = {3, 0, 3, 0};
    config.z = std::move(z);
    config.s = std::move(s);
    config.partition = {{{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3},
                         {3, 1}, {3, 2}, {3, 3}}};
    return rfis::build_scenario(config);
}

}  // namespace rfis_test
