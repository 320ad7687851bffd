#include "vfcsim/mobility/kmeans.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace vfc {

namespace {

double sq_dist(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

size_t nearest_center(const Vec2& p, const std::vector<Vec2>& centers) {
    size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < centers.size(); ++c) {
        const double d = sq_dist(p, centers[c]);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

}  // namespace

double kmeans_objective(const std::vector<Vec2>& points, const std::vector<Vec2>& centers) {
    double total = 0.0;
    for (const Vec2& p : points) total += sq_dist(p, centers[nearest_center(p, centers)]);
    return total;
}

KMeansResult plan_kmeans(const std::vector<Vec2>& points, int k, RngStream& rng,
                         int max_iters, double move_tol) {
    if (k < 1) throw std::invalid_argument("k must be >= 1");
    KMeansResult result;
    if (points.empty()) return result;

    std::set<std::pair<double, double>> distinct;
    for (const Vec2& p : points) distinct.insert({p.x, p.y});
    result.duplicate_centers = static_cast<size_t>(k) > distinct.size();

    // k-means++ seeding
    std::vector<Vec2> centers;
    centers.push_back(points[rng.uniform_index(points.size())]);
    std::vector<double> d2(points.size());
    while (static_cast<int>(centers.size()) < k) {
        double total = 0.0;
        for (size_t i = 0; i < points.size(); ++i) {
            d2[i] = sq_dist(points[i], centers[nearest_center(points[i], centers)]);
            total += d2[i];
        }
        if (total <= 0.0) {
            centers.push_back(centers.back());  // all mass covered; duplicate allowed
            continue;
        }
        double pick = rng.uniform() * total;
        size_t chosen = points.size() - 1;
        for (size_t i = 0; i < points.size(); ++i) {
            pick -= d2[i];
            if (pick <= 0.0) {
                chosen = i;
                break;
            }
        }
        centers.push_back(points[chosen]);
    }

    std::vector<size_t> assign(points.size());
    for (int iter = 0; iter < max_iters; ++iter) {
        result.iterations = iter + 1;
        for (size_t i = 0; i < points.size(); ++i) assign[i] = nearest_center(points[i], centers);
        double max_move = 0.0;
        for (size_t c = 0; c < centers.size(); ++c) {
            double sx = 0.0, sy = 0.0;
            size_t count = 0;
            for (size_t i = 0; i < points.size(); ++i) {
                if (assign[i] == c) {
                    sx += points[i].x;
                    sy += points[i].y;
                    ++count;
                }
            }
            if (count == 0) continue;  // empty cluster keeps its center
            const Vec2 updated{sx / count, sy / count};
            max_move = std::max(max_move, std::sqrt(sq_dist(updated, centers[c])));
            centers[c] = updated;
        }
        if (max_move < move_tol) break;
    }

    std::sort(centers.begin(), centers.end(), [](const Vec2& a, const Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    result.centers = std::move(centers);
    result.objective = kmeans_objective(points, result.centers);
    return result;
}

}  // namespace vfc
