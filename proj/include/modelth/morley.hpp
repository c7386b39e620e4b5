#ifndef MODELTH_MORLEY_HPP
#define MODELTH_MORLEY_HPP

#include <string>
#include <vector>

#include "modelth/formula.hpp"
#include "modelth/structure.hpp"

namespace modelth {

/// Result of expanding a signature with R_phi / f_phi symbols and the matching
/// biconditional and witness axioms.
struct MorleyizationResult {
    Signature expanded;
    std::vector<Formula> axioms;
    struct Entry {
        Formula source;
        bool skolem = false;
        std::string symbol;
        std::vector<std::string> free; // free variables of source, first-occurrence order
    };
    std::vector<Entry> entries;
};

/// selected: (formula, skolem?) pairs over sig. Relation entries add R_<i> of
/// arity |FV(phi)| with axiom  forall x.. (phi <-> R_i(x..)); skolem entries
/// add f_<i> of arity |FV(phi)|-1 with axiom
/// forall params (exists w phi -> phi[w := f_i(params)]), the witness slot
/// being the first free variable. Symbols are numbered by selection order.
MorleyizationResult morleyize(const Signature& sig,
                              const std::vector<std::pair<Formula, bool>>& selected);

/// The unique expansion of m fixed by the axioms: R_phi is interpreted as the
/// phi-definable set; f_phi picks the least witness, and where no witness
/// exists it returns the first parameter (element 0 for 0-ary f).
FinStructure expand_morley(const FinStructure& m, const MorleyizationResult& mr);

} // namespace modelth

#endif
