#ifndef MODELTH_MODELCOMP_HPP
#define MODELTH_MODELCOMP_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "modelth/embed.hpp"
#include "modelth/enumerate.hpp"
#include "modelth/formula.hpp"
#include "modelth/structure.hpp"
#include "modelth/templates.hpp"

namespace modelth {

/// Finitely axiomatized theory truncated at a size bound, with one canonical
/// model per isomorphism class.
struct BoundedClass {
    Signature sig;
    std::vector<Formula> axioms;
    int size_bound = 0;
    std::vector<FinStructure> models; // canonical order, duplicate-free

    void validate() const;
};

BoundedClass build_class(const Signature& sig, const std::vector<Formula>& axioms, int n);
/// Wraps an explicit model list (used for Morleyized expansions of a base class).
BoundedClass class_from_models(const Signature& sig, const std::vector<Formula>& axioms, int n,
                               std::vector<FinStructure> models);

struct EcOptions {
    int max_params = 2;    // parameters of the Sigma1 checks
    int max_literals = 4;  // matrix conjunction size
    long long template_cap = 2'000'000;
    int jobs = 1;
};

enum class EcVerdict { EcWithinBounds, Refuted, BoundaryVacuous };

std::string to_string(EcVerdict v);

/// Existential-closedness report. A refutation carries a self-verifying
/// witness: an extension in the class, an embedding, and a Sigma1 formula with
/// parameters that holds in the extension at the image but fails at home.
struct EcReport {
    int model_index = -1;
    EcVerdict verdict = EcVerdict::EcWithinBounds;
    int extension_index = -1;
    Embedding embedding;
    std::optional<Formula> witness;
    Assignment parameters;
    long long templates_checked = 0;
};

EcReport is_ec_in_class(const BoundedClass& c, int model_index, int qrank, const EcOptions& opts = {});

std::vector<EcReport> ec_models(const BoundedClass& c, int qrank, const EcOptions& opts = {});

/// Robinson's test at bounded scale: passes iff no model is refuted.
struct ModelCompleteReport {
    bool pass = true;
    std::vector<EcReport> reports;
    std::optional<EcReport> counterexample; // first refutation
};
ModelCompleteReport check_model_complete_bounded(const BoundedClass& c, int qrank,
                                                 const EcOptions& opts = {});

/// Pi1-separation search between two classes over the same signature; a
/// separator is a universal sentence true in every model of ct and false in
/// every model of cs. When none exists within bounds and some model of cs
/// embeds into a model of ct, that embedding certifies genuine absence.
struct SeparatorReport {
    enum class Kind { Separator, AbsentWithEmbedding, UnknownWithinBounds, CapExceeded } kind =
        Kind::UnknownWithinBounds;
    std::optional<Formula> separator;
    int s_model = -1; // embedding witness: model of cs ...
    int t_model = -1; // ... into this model of ct
    Embedding embedding;
};
SeparatorReport pi1_separator(const BoundedClass& ct, const BoundedClass& cs, int qrank, int max_vars,
                              const EcOptions& opts = {});

/// Searches universal templates for a class-equivalent of a Sigma1 formula.
struct UniversalEquivalentReport {
    std::optional<Formula> equivalent;
    bool cap_exceeded = false;
};
UniversalEquivalentReport find_universal_equivalent(const Formula& phi, const BoundedClass& c,
                                                    int qrank, const EcOptions& opts = {});

/// Pi2 sentences (forall-block then exists-block within the bounds) true in
/// every genuinely ec model (verdict EcWithinBounds) and consistent with the
/// class (true in at least one model). Deterministic template order.
struct KaiserHullReport {
    std::vector<Formula> sentences;
    std::vector<EcReport> ec_reports;
};
KaiserHullReport kaiser_hull_pi2(const BoundedClass& c, int qrank, int max_vars,
                                 const EcOptions& opts = {});

} // namespace modelth

#endif
