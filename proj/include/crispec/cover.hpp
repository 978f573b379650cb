#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "crispec/chain.hpp"
#include "crispec/free_group.hpp"
#include "crispec/metric.hpp"
#include "crispec/pi1.hpp"

namespace crispec {

class LeftBall : public std::runtime_error {
public:
    explicit LeftBall(std::size_t index);
    std::size_t index;  // first chain position whose lift is not in the ball
};

// A point of the cover: the class of chains from the basepoint to `base`,
// named by their reduced word.
struct CoverVertex {
    Index base = 0;
    Word word;
};

struct CoverBall {
    double scale = 0;
    Index basepoint = 0;
    std::vector<CoverVertex> vertices;  // BFS order; vertex 0 is the basepoint lift
    std::vector<std::tuple<std::size_t, std::size_t, double>> edges;  // a < b, base distance
    std::vector<std::size_t> depth;
    std::size_t radius = 0;
    bool complete = false;     // every neighbour of every vertex is in the ball
    bool approximate = false;  // words are not normal forms, classes may be split
    std::shared_ptr<const Pi1Engine> engine;

    std::optional<std::size_t> find(Index base, const Word& w) const;
    std::vector<std::size_t> fiber(Index base) const;

private:
    friend CoverBall build_cover_ball(const FiniteMetricSpace&, double, Index, std::size_t);
    std::map<std::pair<Index, Word>, std::size_t> index_;
};

// max_vertices 0 means 10 * n.
CoverBall build_cover_ball(const FiniteMetricSpace& X, double eps, Index basepoint, std::size_t max_vertices = 0);

// Lift of a chain starting at the basepoint; throws LeftBall.
std::vector<std::size_t> lift_chain(const CoverBall& ball, const std::vector<Index>& chain);

// Action of a loop class (word, or loop at the basepoint) by preconcatenation.
std::size_t deck_translate(const CoverBall& ball, const Word& g, std::size_t v);
std::size_t deck_translate(const CoverBall& ball, const std::vector<Index>& loop, std::size_t v);

struct ProbeResult {
    bool passed = true;
    std::size_t tested = 0;
    std::size_t unknown = 0;
    std::vector<std::size_t> witness;  // ball vertices of a loop that is not null in the ball
};

// Tests random loops of the ball's own graph (and, for complete balls, its whole
// group) for nullity. Uses only `vertices` and `edges`.
ProbeResult simply_connected_probe(const CoverBall& ball, std::size_t sample_count, std::uint64_t seed = 0);

}  // namespace crispec
