#pragma once

#include <vector>

#include "vfcsim/core/rng.hpp"
#include "vfcsim/core/vec3.hpp"

namespace vfc {

struct KMeansResult {
    std::vector<Vec2> centers;      // sorted by x then y
    double objective = 0.0;         // sum of squared distances to assigned centers
    bool duplicate_centers = false; // k exceeded the number of distinct positions
    int iterations = 0;
};

/// Lloyd's algorithm with k-means++ seeding. Stops when no center moves more
/// than move_tol or after max_iters sweeps. Centers are returned sorted by
/// (x, y) so the output is stable for a fixed rng stream.
KMeansResult plan_kmeans(const std::vector<Vec2>& points, int k, RngStream& rng,
                         int max_iters = 20, double move_tol = 0.1);

double kmeans_objective(const std::vector<Vec2>& points, const std::vector<Vec2>& centers);

}  // namespace vfc
