#ifndef MODELTH_STRUCTURE_HPP
#define MODELTH_STRUCTURE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modelth/formula.hpp"

namespace modelth {

/// Dense interpretation tables. A k-ary table over domain size n has n^k cells,
/// cell index = sum tuple[i] * n^(k-1-i) (row-major, leftmost argument most
/// significant).
struct RelTable {
    int arity = 0;
    std::vector<std::uint8_t> cells;
    bool operator==(const RelTable&) const = default;
};

struct FuncTable {
    int arity = 0;
    std::vector<int> cells;
    bool operator==(const FuncTable&) const = default;
};

/// Finite interpreted structure; elements are 0..size-1, functions total.
struct FinStructure {
    Signature sig;
    int size = 0;
    std::map<std::string, RelTable> relations;
    std::map<std::string, FuncTable> functions;

    static FinStructure empty(const Signature& sig, int size);
    /// Simple-graph helpers over Signature::graph(); edges added symmetrically.
    static FinStructure graph(int size, const std::vector<std::pair<int, int>>& edges);

    int pow_size(int arity) const;
    int tuple_index(const std::vector<int>& t) const;
    std::vector<int> index_tuple(int idx, int arity) const;

    bool rel_holds(const std::string& name, const std::vector<int>& t) const;
    void set_rel(const std::string& name, const std::vector<int>& t, bool v);
    int func_value(const std::string& name, const std::vector<int>& t) const;
    void set_func(const std::string& name, const std::vector<int>& t, int v);

    /// All tuples in a relation, lexicographic.
    std::vector<std::vector<int>> rel_tuples(const std::string& name) const;

    /// Tables in range and total; throws SpecError otherwise.
    void validate() const;

    /// Relation/function cells flattened in signature order (isomorphism key
    /// material; two structures of equal size are isomorphic iff some domain
    /// permutation equates their encodings).
    std::vector<int> encoding() const;
    FinStructure apply_permutation(const std::vector<int>& perm) const;
    /// Lexicographically least encoding over all domain permutations.
    FinStructure canonical_form() const;

    bool operator==(const FinStructure&) const = default;
};

using Assignment = std::vector<std::pair<std::string, int>>;

int lookup(const Assignment& a, const std::string& var);

int eval_term(const FinStructure& m, const Term& t, const Assignment& a);

/// Tarski satisfaction. Unbounded quantifiers range over the whole domain;
/// (forall-in w t body) ranges over { e : (e, value(t)) in the membership
/// relation } and requires a flagged membership symbol.
bool satisfies(const FinStructure& m, const Formula& f, const Assignment& a = {});

bool satisfies_all(const FinStructure& m, const std::vector<Formula>& sentences);

} // namespace modelth

#endif
