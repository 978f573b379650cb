#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crispec/free_group.hpp"

namespace crispec {

struct H1Invariants {
    std::size_t free_rank = 0;
    std::vector<std::string> torsion;  // invariant factors > 1, decimal (may exceed 64 bits)
};

// Abelianization of <gens | relators>; only letters of the listed generators may appear.
H1Invariants abelian_invariants(const std::vector<int>& gens, const std::vector<Word>& relators);

// Whether the abelian image of w vanishes in <gens | relators>^ab.
bool abelian_image_trivial(const std::vector<int>& gens, const std::vector<Word>& relators,
                           const Word& w);

}  // namespace crispec
