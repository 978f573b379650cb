#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "crispec/metric.hpp"

namespace crispec {

using Index = std::size_t;

struct Chain {
    std::vector<Index> points;
    double scale = 0;

    std::size_t size() const { return points.size(); }
    Index front() const { return points.front(); }
    Index back() const { return points.back(); }
    bool is_loop() const { return !points.empty() && points.front() == points.back(); }
};

bool is_valid_chain(const FiniteMetricSpace& X, const Chain& c);
double chain_length(const FiniteMetricSpace& X, const Chain& c);
Chain reversed(const Chain& c);
// a.back() must equal b.front(); the shared point appears once
Chain concat(const Chain& a, const Chain& b);

struct BasicMove {
    enum Kind { Insert, Remove } kind = Insert;
    std::size_t pos = 0;
    Index point = 0;  // inserted point; for removals, the point taken out
};

struct HomotopyTrace {
    Chain start;
    std::vector<BasicMove> moves;
};

struct VerifyResult {
    bool accepted = true;
    std::size_t step = 0;  // failing move
    std::string reason;
    std::vector<Index> end;  // final chain when accepted
    explicit operator bool() const { return accepted; }
};

// Checks every move against the space; endpoints must stay put.
VerifyResult verify_homotopy(const FiniteMetricSpace& X, const HomotopyTrace& h);

// Inverse homotopy: undoes the moves in reverse order, starting from the end chain.
HomotopyTrace reverse_trace(const HomotopyTrace& h, const std::vector<Index>& end);

// Incrementally records moves while editing a chain. Moves are not checked
// here; verify_homotopy is the authority.
class TraceBuilder {
public:
    explicit TraceBuilder(std::vector<Index> start) : chain_(std::move(start)) {}

    const std::vector<Index>& chain() const { return chain_; }
    const std::vector<BasicMove>& moves() const { return moves_; }
    std::size_t size() const { return chain_.size(); }
    Index operator[](std::size_t i) const { return chain_[i]; }

    void insert(std::size_t pos, Index p);
    void remove(std::size_t pos);
    // Replays moves recorded against a subchain that starts at `offset`.
    void apply(const std::vector<BasicMove>& moves, std::size_t offset);
    // Turns chain[pos] = path[0] into path[0..m] followed by path[m-1..0].
    void insert_backtrack(std::size_t pos, const std::vector<Index>& path);
    // Drops one copy of a repeated point at pos/pos+1, never an endpoint.
    void remove_duplicate(std::size_t pos);
    // Removes backtracks p,q,p centred at pos and at the positions they expose,
    // touching nothing right of `limit`. Returns the number of points removed.
    std::size_t reduce_at(std::size_t pos, std::size_t limit = static_cast<std::size_t>(-1));

private:
    std::vector<Index> chain_;
    std::vector<BasicMove> moves_;
};

// mirror image of a move list recorded on a chain of the given initial length
std::vector<BasicMove> mirror_moves(const std::vector<BasicMove>& moves, std::size_t start_len);

}  // namespace crispec
