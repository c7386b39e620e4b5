#ifndef MODELTH_LEVY_HPP
#define MODELTH_LEVY_HPP

#include <string>

#include "modelth/formula.hpp"

namespace modelth {

enum class LevyTag { Delta0, Sigma, Pi };

/// Levy-hierarchy class. Sigma(0) and Pi(0) normalize to Delta0.
struct LevyClass {
    LevyTag tag = LevyTag::Delta0;
    int n = 0;

    static LevyClass delta0() { return {LevyTag::Delta0, 0}; }
    static LevyClass sigma(int n) { return n == 0 ? delta0() : LevyClass{LevyTag::Sigma, n}; }
    static LevyClass pi(int n) { return n == 0 ? delta0() : LevyClass{LevyTag::Pi, n}; }

    int level() const { return n; }
    std::string str() const;
    bool operator==(const LevyClass&) const = default;
};

/// Prenex normal form. Unbounded quantifiers are pulled to an outer prefix with
/// as few alternation blocks as possible; bounded quantifiers whose scope is
/// itself Delta0 stay in the matrix, all others are desugared into guarded
/// unbounded quantifiers first. Logically equivalent to the input.
Formula to_prenex(const Formula& f);

/// Alternation count of the unbounded-quantifier prefix of to_prenex(f).
LevyClass levy_classify(const Formula& f);

/// True when f contains no unbounded quantifier (bounded ones are fine).
bool is_delta0(const Formula& f);

/// (forall-in w t g) -> (forall w ((in w t) -> g)), recursively; likewise exists-in.
Formula desugar_bounded(const Formula& f);

} // namespace modelth

#endif
