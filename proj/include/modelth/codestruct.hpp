#ifndef MODELTH_CODESTRUCT_HPP
#define MODELTH_CODESTRUCT_HPP

#include <cstdint>
#include <vector>

#include "modelth/code.hpp"
#include "modelth/formula.hpp"
#include "modelth/hf.hpp"

namespace modelth {

/// Structure on the universe of all binary relations over {0..m-1} pointed at
/// 0 (valid or not), with the unary predicate WFE and binary EQ / MEM. A
/// relation is identified by its bitmask (bit u*m+v = edge (u,v)). WFE accepts
/// relations whose trim (field plus top) is a valid code; EQ and MEM are false
/// unless both sides are WFE, in which case they compare collapses. The raw
/// variants are the unguarded isomorphism formulas; they are meaningful on
/// arbitrary relations and agree with EQ / MEM on WFE pairs.
class CodeStructure {
public:
    /// m <= 4 materializes the collapse table; m == 5 streams per query.
    explicit CodeStructure(HfPool& pool, int m);

    int m() const { return m_; }
    std::uint64_t universe_size() const { return 1ULL << (m_ * m_); }
    bool materialized() const { return materialized_; }

    bool wfe(std::uint64_t bits) const;
    /// hf id of the collapse of the trimmed relation, -1 when not WFE.
    int collapse_id(std::uint64_t bits) const;

    bool eq(std::uint64_t r, std::uint64_t s) const;
    bool mem(std::uint64_t r, std::uint64_t s) const;
    bool eq_raw(std::uint64_t r, std::uint64_t s) const;
    bool mem_raw(std::uint64_t r, std::uint64_t s) const;

    /// All WFE bitmasks (materialized structures only).
    const std::vector<std::uint64_t>& valid() const;
    /// Collapse classes = sets of transitive-closure size < m, Ackermann order.
    const std::vector<int>& classes() const;

    HfPool& pool() const { return *pool_; }

private:
    int compute_collapse(std::uint64_t bits) const;

    HfPool* pool_;
    int m_;
    bool materialized_;
    std::vector<int> collapse_;          // per bitmask
    std::vector<std::uint64_t> valid_;
    std::vector<int> classes_;
};

CodeStructure build_code_structure(HfPool& pool, int m);

/// Signature {WFE^1, EQ^2, MEM^2} of the translation target.
Signature code_signature();

/// Evaluates a formula over code_signature() with variables ranging over the
/// full relation universe. raw_atoms switches EQ/MEM atoms to the raw
/// isomorphism semantics. Assignment values are bitmasks.
bool eval_code_brute(const CodeStructure& cs, const Formula& f,
                     const std::vector<std::pair<std::string, std::uint64_t>>& assignment,
                     bool raw_atoms = false);

/// Quotient evaluation: every guarded predicate depends only on the collapse
/// class of its arguments (or their invalidity), so quantifiers range over one
/// representative per class plus a single invalid value. Values are hf ids,
/// -1 for the invalid class. Rejects raw_atoms semantics.
bool eval_code_quotient(const CodeStructure& cs, const Formula& f,
                        const std::vector<std::pair<std::string, int>>& assignment);

/// Embeds a code with domain <= m into the m-node universe (extra nodes
/// isolated; the trim recovers the code).
std::uint64_t embed_bits(const PointedCode& c, int m);

} // namespace modelth

#endif
