#ifndef MODELTH_TRANSLATE_HPP
#define MODELTH_TRANSLATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "modelth/codestruct.hpp"
#include "modelth/formula.hpp"
#include "modelth/hf.hpp"

namespace modelth {

/// Guard mutations for the translation clauses (testing hooks; Official is the
/// real map).
enum class GuardMode {
    Official,
    DropExistsGuard, // exists y body  ->  no WFE(y) conjunct
    DropForallGuard, // forall y body  ->  no WFE(y) antecedent
    DropAtomGuards,  // = and membership clauses emit bare EQ/MEM atoms
};

/// The recursive membership-to-code compilation:
///   x = y   ->  WFE(x) and (WFE(y) and EQ(x,y))
///   x in y  ->  WFE(x) and (WFE(y) and MEM(x,y))
///   connectives homomorphic; exists y b -> exists y (b' and WFE(y));
///   forall y b -> forall y (WFE(y) -> b').
/// Bounded quantifiers are desugared first. Input must be a pure membership
/// formula (no other relations, variable terms only).
Formula translate(const Formula& f, GuardMode mode = GuardMode::Official);

struct VerifyReport {
    bool pass = true;
    long long assignments_checked = 0;
    std::vector<std::pair<std::string, int>> counterexample; // var -> hf id
    bool lhs_value = false;                                  // membership-side value at the counterexample
};

/// Checks, for every assignment of the free variables to sets of
/// transitive-closure size < m, that the relativized membership truth of f
/// equals the truth of translate(f, mode) in the code structure. Quotient
/// evaluation by default; brute forces the full relation universe when
/// raw_atoms (needed for DropAtomGuards semantics) or when forced.
/// assign_from restricts the assignment draws to an explicit set list (they
/// must all have transitive-closure size < m); quantifiers still range over
/// the full scale.
VerifyReport verify_translation(HfPool& pool, const Formula& f, int m,
                                GuardMode mode = GuardMode::Official, bool raw_atoms = false,
                                bool force_brute = false,
                                const std::vector<int>* assign_from = nullptr);

/// The official translation confines atomic extensions to WFE tuples: the
/// translated atom is false whenever an argument is not WFE. Returns a
/// violating pair when the property fails (exhaustive over the universe;
/// materialized structures only).
struct ConfinementReport {
    bool pass = true;
    std::uint64_t r = 0, s = 0;
};
ConfinementReport atomic_confinement(const CodeStructure& cs, GuardMode mode, bool raw_atoms);

/// Universal form of a Sigma1 membership formula f(x1..xn):
///   forall r1..rn ((Cod r1 x1) and ... -> (Theta_f r1..rn))
/// over the hybrid signature {Cod^2, Theta_f^n}. n = 0 degenerates to the
/// closed atom (Theta_f).
struct UniversalForm {
    Formula formula;
    Signature hybrid_sig;
    std::vector<std::string> code_vars;
};
UniversalForm universal_form(const Formula& f);

/// Exhaustive equivalence of f with its universal form at scale m: Cod links a
/// code variable to a set via collapse, Theta_f's extension is the translated
/// formula's truth over code classes.
VerifyReport verify_universal_form(HfPool& pool, const Formula& f, int m);

/// Substitutes Pi1/Sigma1 stand-in definitions for WFE/EQ/MEM
/// (WFE t -> forall g not Desc(g,t); EQ s t -> exists h Iso(h,s,t);
/// MEM s t -> exists h IsoP(h,s,t)) for Levy-classification experiments.
Formula expand_code_predicates(const Formula& translated);
Signature expanded_code_signature();

} // namespace modelth

#endif
