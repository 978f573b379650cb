#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace crispec {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

class MetricError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AsymmetricMatrix : public MetricError {
public:
    AsymmetricMatrix(std::size_t i, std::size_t j);
    std::size_t i, j;
};

class NegativeDistance : public MetricError {
public:
    NegativeDistance(std::size_t i, std::size_t j, double value);
    std::size_t i, j;
    double value;
};

// two distinct points at distance 0, or a non-finite / non-square input
class MalformedMatrix : public MetricError {
public:
    using MetricError::MetricError;
};

// dist[i][k] exceeds dist[i][j] + dist[j][k] by `slack`
class TriangleViolation : public MetricError {
public:
    TriangleViolation(std::size_t i, std::size_t k, std::size_t j, double slack);
    std::size_t i, k, j;
    double slack;
};

// Immutable once constructed. Distances are row-major n*n.
class FiniteMetricSpace {
public:
    FiniteMetricSpace() = default;

    std::size_t size() const { return n_; }
    double d(std::size_t i, std::size_t j) const { return dist_[i * n_ + j]; }
    const std::vector<double>& matrix() const { return dist_; }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::optional<std::vector<Point2>>& coords() const { return coords_; }

    // throws MetricError if the label is unknown
    std::size_t index_of(const std::string& label) const;
    std::optional<std::size_t> find(const std::string& label) const;

    double diameter() const;

    friend FiniteMetricSpace validate_metric(std::vector<std::vector<double>> raw, double tol_metric,
                                             std::vector<std::string> labels,
                                             std::optional<std::vector<Point2>> coords);

private:
    std::size_t n_ = 0;
    std::vector<double> dist_;
    std::vector<std::string> labels_;
    std::optional<std::vector<Point2>> coords_;
};

// Labels default to p0, p1, ...
FiniteMetricSpace validate_metric(std::vector<std::vector<double>> raw, double tol_metric = 0.0,
                                  std::vector<std::string> labels = {},
                                  std::optional<std::vector<Point2>> coords = std::nullopt);

// Sorted distinct off-diagonal distances.
std::vector<double> candidate_scales(const FiniteMetricSpace& X);

// Index of the candidate interval holding eps: interval k is (c[k-1], c[k]],
// interval 0 is (0, c[0]], interval c.size() is (c.back(), inf).
std::size_t scale_interval(const std::vector<double>& cands, double eps);

// A short decimal strictly above lo and at most hi (hi may be +inf).
double representative_scale(double lo, double hi);

// Largest edge of a minimum spanning tree: the space is eps-connected iff eps exceeds it.
double connectivity_threshold(const FiniteMetricSpace& X);

}  // namespace crispec
