#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace randattr {

using Vec = std::vector<double>;

double dist(const Vec& a, const Vec& b);

/// Finite point set standing in for a compact subset of R^d. The
/// represented set lies within `resolution` of the points in Hausdorff
/// metric.
struct PointCloud {
    std::vector<Vec> points;
    double resolution = 0.0;
    std::string label;

    int dim() const;
    void validate() const;  // non-empty, finite, uniform dimension
};

struct Box {
    Vec lower, upper;

    int dim() const { return static_cast<int>(lower.size()); }
    void validate() const;
    double dist_to(const Vec& x) const;
    bool contains(const Vec& x) const;
    Box inflated(double delta) const;
    Vec center() const;
};

/// Hausdorff semi-distance sup_{b in B} inf_{a in A} d(a,b). Asymmetric.
double semidist(const PointCloud& B, const PointCloud& A);

/// max of the two semi-distances.
double hausdorff(const PointCloud& A, const PointCloud& B);

/// Distance from a point to a cloud (nearest neighbor).
double dist_to_cloud(const Vec& x, const PointCloud& A);

bool neighborhood_contains(const PointCloud& A, double delta, const Vec& x);
bool neighborhood_contains(const Box& A, double delta, const Vec& x);

/// True iff semidist(B, A) <= delta.
bool cover_contains(const PointCloud& A, double delta, const PointCloud& B);
bool cover_contains(const Box& A, double delta, const PointCloud& B);

/// Smallest axis-aligned box holding >= q of all sample points, per-axis
/// empirical quantiles at (1-q)/2 and 1-(1-q)/2.
Box fit_compact(const std::vector<PointCloud>& samples, double coverage);

/// Set union; resolution is the max of the inputs.
PointCloud merge(const std::vector<PointCloud>& clouds);

/// Greedy eps-net thinning: every input point stays within eps of the output.
PointCloud prune(const PointCloud& cloud, double eps);

/// Deterministic grid sample of a box, about `density` points total
/// (cell centers). Resolution = half cell diagonal.
PointCloud sample_box(const Box& box, int density);

/// Grid sample of the closed ball around `center`; always includes the center.
PointCloud sample_ball(const Vec& center, double radius, int density);

Box bounding_box(const PointCloud& cloud);

/// Uniform-grid nearest-neighbor index. Falls back to brute force for
/// degenerate geometry; results must match brute force exactly.
class GridIndex {
  public:
    explicit GridIndex(const std::vector<Vec>& points);
    // returns (point index, distance)
    std::pair<std::size_t, double> nearest(const Vec& q) const;

  private:
    const std::vector<Vec>& pts_;
    double cell_ = 0.0;
    Vec origin_;
    int dim_ = 0;
    bool brute_ = true;
    std::vector<std::vector<std::size_t>> cells_;
    std::vector<int> shape_;
    std::vector<int> cell_of(const Vec& x) const;
    std::size_t flat(const std::vector<int>& c) const;
};

/// Points above this size get a grid index for nearest-neighbor queries.
inline constexpr std::size_t kBruteForceLimit = 4096;

}  // namespace randattr
