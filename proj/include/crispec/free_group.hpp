#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace crispec {

// Letters are +(g+1) / -(g+1) for generator g.
using Letter = std::int32_t;
using Word = std::vector<Letter>;

inline int gen_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline Letter letter(int g, bool inverse = false) { return inverse ? -(g + 1) : g + 1; }

Word reduce(const Word& w);
// appends b to a, cancelling across the seam
void append_reduced(Word& a, const Word& b);
Word inverse(const Word& w);
Word concat(const Word& a, const Word& b);
// strips conjugating pairs; `stripped` receives how many letters came off each end
Word cyclic_reduce(const Word& w, std::size_t* stripped = nullptr);

// Folded graph of a finitely generated subgroup of a free group.
class SubgroupGraph {
public:
    explicit SubgroupGraph(const std::vector<Word>& generators);
    bool contains(const Word& w) const;
    // rank of the subgroup; equals the number of generators iff they form a free basis
    std::size_t rank() const;

private:
    std::size_t find(std::size_t v) const;
    void add_edge(std::size_t u, Letter l, std::size_t v);
    void merge(std::size_t a, std::size_t b);
    std::size_t fresh();

    mutable std::vector<std::size_t> parent_;
    std::vector<std::map<Letter, std::size_t>> out_;
    std::vector<std::pair<std::size_t, std::size_t>> pending_;
};

}  // namespace crispec
