#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "votenet/cc_core.hpp"

namespace votenet {

// Outcome of one solver or baseline run. Imbalance is always measured on the
// signed graph, whatever view the algorithm saw.
struct RunReport {
    std::string algorithm;
    std::string view;
    Partition partition;
    ImbalanceBreakdown imbalance;
    std::size_t cluster_count = 0;
    std::optional<double> modularity;
    std::chrono::duration<double, std::milli> wall_time{0};
    std::vector<std::pair<std::string, std::string>> config;
};

}  // namespace votenet
