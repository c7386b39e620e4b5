#ifndef MODELTH_EMBED_HPP
#define MODELTH_EMBED_HPP

#include <optional>
#include <string>
#include <vector>

#include "modelth/levy.hpp"
#include "modelth/structure.hpp"

namespace modelth {

/// Injective map preserving and reflecting every atomic formula.
struct Embedding {
    std::vector<int> map; // element i of the source goes to map[i]
    bool operator==(const Embedding&) const = default;
};

bool is_embedding(const FinStructure& m, const FinStructure& n, const std::vector<int>& map);

/// All embeddings of m into n, in lexicographic order of the image tuple.
/// Throws SpecError on signature mismatch.
std::vector<Embedding> enumerate_embeddings(const FinStructure& m, const FinStructure& n);

/// Atomic diagram over sig extended with fresh constants c0..c(n-1): every
/// positive or negated atomic sentence, function-value equations, and all
/// pairwise distinctness literals.
struct AtomicDiagram {
    Signature expanded_sig;
    std::vector<Formula> sentences;
};
AtomicDiagram atomic_diagram(const FinStructure& m);

enum class ElemStatus { Confirmed, Refuted, CapExceeded };

struct ElemReport {
    ElemStatus status = ElemStatus::Confirmed;
    std::optional<Formula> witness;  // transfers differently across e
    Assignment assignment;           // source-side parameters
    bool true_in_target = false;     // direction of the failure
    long long templates_checked = 0;
};

struct TemplateBounds {
    int qrank = 1;
    int max_free = 3;
    int max_literals = 4;
    long long cap = 2'000'000; // template budget before CapExceeded
};

/// Bounded surrogate of "e is a Sigma_n-elementary embedding": every formula of
/// the requested class built from quantifier templates within the bounds, with
/// parameters from m, has the same truth value on both sides of e. Supports
/// Delta0, Sigma(1)/Pi(1) and Sigma(2); refutations come with a witness.
ElemReport is_elementary_up_to(const FinStructure& m, const FinStructure& n, const Embedding& e,
                               const LevyClass& level, int qrank);

} // namespace modelth

#endif
