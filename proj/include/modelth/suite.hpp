#ifndef MODELTH_SUITE_HPP
#define MODELTH_SUITE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "modelth/json_io.hpp"

namespace modelth {

struct SuiteOptions {
    int jobs = 1;
    std::uint64_t seed = 0;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    Json evidence; // deterministic content only (no timings)
};

/// The concrete membership-language formula for "x is the Kuratowski pair of y
/// and z".
std::string kuratowski_pair_text();

struct CorpusItem {
    std::string name;
    std::string text;
    // verification scales: (m, assign_k); assign_k > 0 draws the free-variable
    // assignments from HF(assign_k) instead of every set of TC-size < m
    std::vector<std::pair<int, int>> scales;
};
/// The fixed translation-soundness corpus with its documented scales.
std::vector<CorpusItem> translation_corpus();

/// Standard axiom sets used by the model-companionship criteria.
std::vector<Formula> graph_axioms(const Signature& sig);
std::vector<Formula> clique_axioms(const Signature& sig);
std::vector<Formula> non_edge_axioms(const Signature& sig);
std::vector<Formula> triangle_free_axioms(const Signature& sig);

/// Rank-1 Morleyization selection: every non-degenerate primitive-existential
/// template with one quantifier and at most two free variables.
std::vector<std::pair<Formula, bool>> rank1_selection(const Signature& sig);

/// Runs acceptance criteria 1..8.
std::vector<CriterionResult> run_core_criteria(const SuiteOptions& opts);

/// Full suite: criteria 1..8 at opts.jobs plus the determinism criterion 9,
/// which re-runs the core at a different parallelism degree and compares the
/// serialized evidence byte for byte.
std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& opts);

Json suite_report(const std::vector<CriterionResult>& results, const SuiteOptions& opts);
/// One "PASS criterion N: name (x.xs)" line per criterion.
std::string suite_lines(const std::vector<CriterionResult>& results);

} // namespace modelth

#endif
