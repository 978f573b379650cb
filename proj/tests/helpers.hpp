#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "crispec/generators.hpp"
#include "crispec/metric.hpp"

namespace testutil {

inline crispec::FiniteMetricSpace circle(int n, double C = 1.0)
{
    crispec::GeneratorSpec s;
    s.kind = "circle";
    s.n = n;
    s.circumference = C;
    return crispec::generate(s);
}

inline crispec::FiniteMetricSpace line(const std::vector<double>& xs)
{
    std::vector<std::vector<double>> D(xs.size(), std::vector<double>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) D[i][j] = std::abs(xs[i] - xs[j]);
    return crispec::validate_metric(D);
}

inline crispec::FiniteMetricSpace planar(const std::vector<crispec::Point2>& pts,
                                         std::vector<std::string> labels = {})
{
    std::vector<std::vector<double>> D(pts.size(), std::vector<double>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            D[i][j] = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
    return crispec::validate_metric(D, 1e-12, std::move(labels), pts);
}

inline std::vector<std::size_t> range_loop(std::size_t n)
{
    std::vector<std::size_t> l;
    for (std::size_t i = 0; i <= n; ++i) l.push_back(i % n);
    return l;
}

}  // namespace testutil
