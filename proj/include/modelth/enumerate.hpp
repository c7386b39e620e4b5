#ifndef MODELTH_ENUMERATE_HPP
#define MODELTH_ENUMERATE_HPP

#include <vector>

#include "modelth/formula.hpp"
#include "modelth/structure.hpp"

namespace modelth {

struct EnumConfig {
    long long leaf_cap = 4'000'000; // completed candidate budget before the cost guard fires
};

/// One canonical representative per isomorphism class of structures of size
/// 1..max_size satisfying all axioms. The representative is the
/// lexicographically least relation encoding over all domain permutations;
/// output is ordered by (size, encoding). Universal axioms with quantifier-free
/// matrices prune the search; everything else is checked on completed
/// candidates. Function symbols of arity >= 1 are rejected above size 5.
std::vector<FinStructure> enumerate_structures(const Signature& sig, int max_size,
                                               const std::vector<Formula>& axioms,
                                               const EnumConfig& cfg = {});

} // namespace modelth

#endif
