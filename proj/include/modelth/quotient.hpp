#ifndef MODELTH_QUOTIENT_HPP
#define MODELTH_QUOTIENT_HPP

#include <string>
#include <vector>

#include "modelth/code.hpp"
#include "modelth/hf.hpp"

namespace modelth {

/// Exhaustive verification over all valid codes with domain <= m that the
/// quotient of (codes, graph-membership) by graph-equality is the restriction
/// of (HF, membership) to sets of transitive-closure size < m.
struct QuotientReport {
    bool pass = true;
    int total_codes = 0;
    int classes = 0;
    std::vector<int> class_sets;      // hf ids, Ackermann order
    bool dual_path_equal_ok = true;   // collapse comparison == isomorphism search
    bool dual_path_mem_ok = true;
    bool equivalence_ok = true;       // iso path is reflexive/symmetric/transitive
    bool congruence_ok = true;        // membership respects equality
    bool matches_reference_ok = true; // classes == {a : |TC(a)| < m}, membership agrees
    std::string detail;
};

/// m <= 5; k >= m so the reference universe HF(k) covers every set of
/// transitive-closure size < m. Throws SpecError on a bound mismatch.
QuotientReport quotient_check(HfPool& pool, int m, int k);

} // namespace modelth

#endif
