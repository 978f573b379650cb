#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "crispec/chain.hpp"
#include "crispec/metric.hpp"

namespace crispec::oracle {

// Homotopy classes of eps-chains from s to t with at most `max_interior`
// interior points, found by brute force: every such chain is a state and
// every removal of an interior point joins two states. Two chains in
// different classes here may still be homotopic through longer chains.
class ChainClasses {
public:
    ChainClasses(const FiniteMetricSpace& X, double eps, Index s, Index t, std::size_t max_interior);

    bool contains(const std::vector<Index>& chain) const;
    // class label, -1 if the chain is not a state
    long class_of(const std::vector<Index>& chain) const;
    // whether the class of `chain` holds a chain with every hop below lo
    bool class_has_chain_below(const std::vector<Index>& chain, double lo) const;
    std::size_t states() const { return valid_count_; }

private:
    std::size_t encode(const std::vector<Index>& interior) const;
    std::vector<Index> decode(std::size_t code, std::size_t& k) const;
    std::size_t find(std::size_t v) const;

    const FiniteMetricSpace* X_;
    double eps_;
    Index s_, t_;
    std::size_t n_, K_;
    std::vector<std::size_t> offset_, power_;
    std::vector<char> valid_;
    std::vector<std::size_t> codes_;  // valid states
    mutable std::vector<std::size_t> parent_;
    std::size_t valid_count_ = 0;
};

// Largest interior bound keeping the state count near `budget`.
std::size_t interior_bound(std::size_t n, std::size_t budget = 60000);

bool is_null(const FiniteMetricSpace& X, double eps, const std::vector<Index>& loop, std::size_t max_interior);
bool is_refinable(const FiniteMetricSpace& X, double eps_hi, double eps_lo, Index x, Index y,
                  std::size_t max_interior);

// planar points or a shortest-path metric on a random weighted graph
FiniteMetricSpace random_space(std::mt19937_64& rng, std::size_t n);

struct SuiteOptions {
    std::size_t spaces = 300;
    std::uint64_t seed = 0;
    std::size_t loops_per_scale = 10;
    std::size_t pairs_per_scale = 5;
    std::size_t min_points = 3, max_points = 8;
    unsigned threads = 1;
};

struct SuiteResult {
    std::size_t spaces = 0, scales = 0;
    std::size_t null_checks = 0, refine_checks = 0;
    std::size_t traces = 0, traces_verified = 0;
    std::size_t unknown = 0;
    std::vector<std::string> disagreements;
    // a sample of emitted certificates, for external re-verification
    std::vector<std::pair<FiniteMetricSpace, HomotopyTrace>> sample;
};

// Compares decide_null and refine_check with the brute force on random spaces.
SuiteResult run_suite(const SuiteOptions& opt, std::size_t keep_sample = 0);

}  // namespace crispec::oracle
