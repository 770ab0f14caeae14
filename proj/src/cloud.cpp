#include "randattr/cloud.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace randattr {

double dist(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dist: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

int PointCloud::dim() const {
    return points.empty() ? 0 : static_cast<int>(points.front().size());
}

void PointCloud::validate() const {
    if (points.empty()) throw std::invalid_argument("PointCloud: empty");
    const std::size_t d = points.front().size();
    for (const Vec& p : points) {
        if (p.size() != d) throw std::invalid_argument("PointCloud: mixed dimensions");
        for (double v : p)
            if (!std::isfinite(v)) throw std::invalid_argument("PointCloud: non-finite point");
    }
    if (resolution < 0.0) throw std::invalid_argument("PointCloud: negative resolution");
}

void Box::validate() const {
    if (lower.size() != upper.size() || lower.empty())
        throw std::invalid_argument("Box: bad bounds");
    for (std::size_t i = 0; i < lower.size(); ++i)
        if (!(lower[i] <= upper[i])) throw std::invalid_argument("Box: lower > upper");
}

double Box::dist_to(const Vec& x) const {
    if (x.size() != lower.size()) throw std::invalid_argument("Box::dist_to: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = 0.0;
        if (x[i] < lower[i]) d = lower[i] - x[i];
        else if (x[i] > upper[i]) d = x[i] - upper[i];
        s += d * d;
    }
    return std::sqrt(s);
}

bool Box::contains(const Vec& x) const { return dist_to(x) == 0.0; }

Box Box::inflated(double delta) const {
    Box out = *this;
    for (std::size_t i = 0; i < lower.size(); ++i) {
        out.lower[i] -= delta;
        out.upper[i] += delta;
    }
    return out;
}

Vec Box::center() const {
    Vec c(lower.size());
    for (std::size_t i = 0; i < lower.size(); ++i) c[i] = 0.5 * (lower[i] + upper[i]);
    return c;
}

double dist_to_cloud(const Vec& x, const PointCloud& A) {
    if (A.points.empty()) throw std::invalid_argument("dist_to_cloud: empty cloud");
    if (A.points.size() > kBruteForceLimit) {
        GridIndex idx(A.points);
        return idx.nearest(x).second;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const Vec& a : A.points) best = std::min(best, dist(x, a));
    return best;
}

double semidist(const PointCloud& B, const PointCloud& A) {
    if (A.dim() != B.dim()) throw std::invalid_argument("semidist: dimension mismatch");
    double worst = 0.0;
    if (A.points.size() > kBruteForceLimit) {
        GridIndex idx(A.points);
        for (const Vec& b : B.points) worst = std::max(worst, idx.nearest(b).second);
        return worst;
    }
    for (const Vec& b : B.points) worst = std::max(worst, dist_to_cloud(b, A));
    return worst;
}

double hausdorff(const PointCloud& A, const PointCloud& B) {
    return std::max(semidist(A, B), semidist(B, A));
}

bool neighborhood_contains(const PointCloud& A, double delta, const Vec& x) {
    return dist_to_cloud(x, A) <= delta;
}

bool neighborhood_contains(const Box& A, double delta, const Vec& x) {
    return A.dist_to(x) <= delta;
}

bool cover_contains(const PointCloud& A, double delta, const PointCloud& B) {
    return semidist(B, A) <= delta;
}

bool cover_contains(const Box& A, double delta, const PointCloud& B) {
    for (const Vec& b : B.points)
        if (A.dist_to(b) > delta) return false;
    return true;
}

namespace {

// linear-interpolation empirical quantile on a sorted vector
double quantile_sorted(const std::vector<double>& s, double q) {
    if (s.empty()) throw std::invalid_argument("quantile: empty");
    if (s.size() == 1) return s[0];
    double pos = q * static_cast<double>(s.size() - 1);
    std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= s.size()) return s.back();
    double frac = pos - static_cast<double>(i);
    return s[i] * (1.0 - frac) + s[i + 1] * frac;
}

}  // namespace

Box fit_compact(const std::vector<PointCloud>& samples, double coverage) {
    if (samples.empty()) throw std::invalid_argument("fit_compact: no samples");
    if (!(coverage > 0.0 && coverage < 1.0))
        throw std::invalid_argument("fit_compact: coverage must be in (0,1)");
    const int d = samples.front().dim();
    Box box;
    box.lower.resize(d);
    box.upper.resize(d);
    const double tail = (1.0 - coverage) / 2.0;
    std::vector<double> axis;
    for (int a = 0; a < d; ++a) {
        axis.clear();
        for (const PointCloud& c : samples)
            for (const Vec& p : c.points) axis.push_back(p[a]);
        std::sort(axis.begin(), axis.end());
        box.lower[a] = quantile_sorted(axis, tail);
        box.upper[a] = quantile_sorted(axis, 1.0 - tail);
    }
    return box;
}

PointCloud merge(const std::vector<PointCloud>& clouds) {
    if (clouds.empty()) throw std::invalid_argument("merge: no clouds");
    PointCloud out;
    out.resolution = 0.0;
    for (const PointCloud& c : clouds) {
        out.points.insert(out.points.end(), c.points.begin(), c.points.end());
        out.resolution = std::max(out.resolution, c.resolution);
    }
    return out;
}

PointCloud prune(const PointCloud& cloud, double eps) {
    if (eps < 0.0) throw std::invalid_argument("prune: negative eps");
    PointCloud out;
    out.label = cloud.label;
    out.resolution = cloud.resolution + eps;
    for (const Vec& p : cloud.points) {
        bool covered = false;
        for (const Vec& kept : out.points) {
            if (dist(p, kept) <= eps) {
                covered = true;
                break;
            }
        }
        if (!covered) out.points.push_back(p);
    }
    return out;
}

PointCloud sample_box(const Box& box, int density) {
    box.validate();
    if (density < 1) throw std::invalid_argument("sample_box: density < 1");
    const int d = box.dim();
    int per_axis = std::max(1, static_cast<int>(std::ceil(std::pow(static_cast<double>(density), 1.0 / d))));
    PointCloud out;
    std::vector<int> idx(d, 0);
    Vec widths(d);
    double half_diag2 = 0.0;
    for (int a = 0; a < d; ++a) {
        widths[a] = (box.upper[a] - box.lower[a]) / per_axis;
        half_diag2 += widths[a] * widths[a] / 4.0;
    }
    while (true) {
        Vec p(d);
        for (int a = 0; a < d; ++a)
            p[a] = box.lower[a] + (idx[a] + 0.5) * widths[a];
        out.points.push_back(std::move(p));
        int a = 0;
        while (a < d && ++idx[a] == per_axis) idx[a++] = 0;
        if (a == d) break;
    }
    out.resolution = std::sqrt(half_diag2);
    return out;
}

PointCloud sample_ball(const Vec& center, double radius, int density) {
    const int d = static_cast<int>(center.size());
    Box bb;
    bb.lower = center;
    bb.upper = center;
    for (int a = 0; a < d; ++a) {
        bb.lower[a] -= radius;
        bb.upper[a] += radius;
    }
    PointCloud grid = sample_box(bb, density);
    PointCloud out;
    out.resolution = grid.resolution;
    for (Vec& p : grid.points)
        if (dist(p, center) <= radius) out.points.push_back(std::move(p));
    out.points.push_back(center);
    return out;
}

Box bounding_box(const PointCloud& cloud) {
    cloud.validate();
    Box box;
    box.lower = cloud.points.front();
    box.upper = cloud.points.front();
    for (const Vec& p : cloud.points)
        for (std::size_t a = 0; a < p.size(); ++a) {
            box.lower[a] = std::min(box.lower[a], p[a]);
            box.upper[a] = std::max(box.upper[a], p[a]);
        }
    return box;
}

GridIndex::GridIndex(const std::vector<Vec>& points) : pts_(points) {
    if (points.empty()) throw std::invalid_argument("GridIndex: empty");
    dim_ = static_cast<int>(points.front().size());
    Vec lo = points.front(), hi = points.front();
    for (const Vec& p : points)
        for (int a = 0; a < dim_; ++a) {
            lo[a] = std::min(lo[a], p[a]);
            hi[a] = std::max(hi[a], p[a]);
        }
    double extent = 0.0;
    for (int a = 0; a < dim_; ++a) extent = std::max(extent, hi[a] - lo[a]);
    if (extent <= 0.0) return;  // all points coincide, keep brute force
    // aim for O(1) points per cell
    double cells_per_axis = std::pow(static_cast<double>(points.size()), 1.0 / dim_);
    cell_ = extent / std::max(1.0, cells_per_axis);
    origin_ = lo;
    shape_.resize(dim_);
    std::size_t total = 1;
    for (int a = 0; a < dim_; ++a) {
        shape_[a] = static_cast<int>((hi[a] - lo[a]) / cell_) + 1;
        total *= static_cast<std::size_t>(shape_[a]);
        if (total > 4 * points.size() + 1024) return;  // grid too sparse, brute force
    }
    cells_.assign(total, {});
    for (std::size_t i = 0; i < points.size(); ++i)
        cells_[flat(cell_of(points[i]))].push_back(i);
    brute_ = false;
}

std::vector<int> GridIndex::cell_of(const Vec& x) const {
    std::vector<int> c(dim_);
    for (int a = 0; a < dim_; ++a) {
        int v = static_cast<int>(std::floor((x[a] - origin_[a]) / cell_));
        c[a] = std::clamp(v, 0, shape_[a] - 1);
    }
    return c;
}

std::size_t GridIndex::flat(const std::vector<int>& c) const {
    std::size_t f = 0;
    for (int a = 0; a < dim_; ++a) f = f * static_cast<std::size_t>(shape_[a]) + static_cast<std::size_t>(c[a]);
    return f;
}

std::pair<std::size_t, double> GridIndex::nearest(const Vec& q) const {
    if (brute_) {
        std::size_t best_i = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            double d = dist(q, pts_[i]);
            if (d < best) {
                best = d;
                best_i = i;
            }
        }
        return {best_i, best};
    }
    std::vector<int> qc = cell_of(q);
    std::size_t best_i = 0;
    double best = std::numeric_limits<double>::infinity();
    int max_ring = 0;
    for (int a = 0; a < dim_; ++a) max_ring = std::max(max_ring, shape_[a]);
    for (int ring = 0; ring <= max_ring; ++ring) {
        // any unvisited cell is at least (ring-1)*cell_ away
        if (best <= (ring - 1) * cell_) break;
        // enumerate cells at Chebyshev distance == ring from qc
        std::vector<int> offs(dim_, -ring);
        while (true) {
            int cheb = 0;
            for (int a = 0; a < dim_; ++a) cheb = std::max(cheb, std::abs(offs[a]));
            if (cheb == ring) {
                std::vector<int> c(dim_);
                bool ok = true;
                for (int a = 0; a < dim_; ++a) {
                    c[a] = qc[a] + offs[a];
                    if (c[a] < 0 || c[a] >= shape_[a]) { ok = false; break; }
                }
                if (ok) {
                    for (std::size_t i : cells_[flat(c)]) {
                        double d = dist(q, pts_[i]);
                        if (d < best) {
                            best = d;
                            best_i = i;
                        }
                    }
                }
            }
            int a = 0;
            while (a < dim_ && ++offs[a] > ring) offs[a++] = -ring;
            if (a == dim_) break;
        }
    }
    return {best_i, best};
}

}  // namespace randattr
