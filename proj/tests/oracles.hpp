#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dtmfilt/persistence.hpp"
#include "dtmfilt/pointcloud.hpp"

namespace oracle {

struct Entry {
    std::vector<std::uint32_t> vertices;  // sorted
    double value;
};

/// Every clique of at most max_dim + 1 points, valued by half its longest edge.
std::vector<Entry> standard_rips(const dtmf::PointCloud& cloud, int max_dim);

/// Diagram points of dimensions 0..max_hom_dim from ranks of the maps
/// H_k(K_a) -> H_k(K_b) between all pairs of critical values. Points with
/// birth == death do not appear.
std::vector<dtmf::DiagramPoint> rank_diagram(const std::vector<Entry>& entries, int max_hom_dim);

/// Minimum over all partial matchings, by enumeration.
double exhaustive_bottleneck(const std::vector<dtmf::DiagramPoint>& a, const std::vector<dtmf::DiagramPoint>& b);

/// W2 between uniform measures on equally many points, over all permutations.
double exhaustive_w2(const dtmf::PointCloud& a, const dtmf::PointCloud& b);

/// sqrt of the mean squared distance to the k nearest points of the cloud.
double knn_dtm(const dtmf::PointCloud& cloud, std::span<const double> query, std::size_t k);

}  // namespace oracle
