#ifndef MODELTH_CODE_HPP
#define MODELTH_CODE_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "modelth/hf.hpp"

namespace modelth {

/// Finite pointed relation: domain {0..domain-1}, edges (u,v) meaning u lies
/// below v, top element 0. Valid codes are extensional, acyclic, junk-free
/// (field of R plus {0} covers the domain) with every element reaching 0 and 0
/// having no successor.
struct PointedCode {
    int domain = 1;
    std::vector<std::pair<int, int>> rel; // kept sorted lexicographically

    void normalize();
    bool has_edge(int u, int v) const;
    bool operator==(const PointedCode&) const = default;
};

struct WfeCheck {
    bool ok = true;
    std::string reason;
};

/// Validates all PointedCode invariants; on failure names the violated clause.
WfeCheck is_wfe(const PointedCode& c);

/// Mostowski collapse of the top element. Throws SpecError on invalid codes.
int collapse(HfPool& pool, const PointedCode& c);

/// Canonical code of a set: breadth-first labels over the transitive closure,
/// children visited in Ackermann order, domain |TC(a)| + 1.
PointedCode encode(HfPool& pool, int id);

/// Restriction to field(R) + {0} with order-preserving relabeling (junk nodes
/// dropped). The result of trimming a raw m-node relation is what the
/// junk-tolerant predicates of the code structure validate and collapse.
PointedCode trim(const PointedCode& c);

/// Pointed digraph isomorphism (top goes to top); works on arbitrary codes.
bool pointed_iso(const PointedCode& a, const PointedCode& b);

/// Subcode rooted at alpha: nodes reaching alpha plus alpha itself, relabeled
/// with alpha as the new top 0.
PointedCode subcode_at(const PointedCode& c, int alpha);

/// collapse(c1) == collapse(c2); polynomial canonical-collapse comparison.
bool graphs_equal(HfPool& pool, const PointedCode& c1, const PointedCode& c2);
/// Cross-validation path: pointed isomorphism search.
bool graphs_equal_iso(const PointedCode& c1, const PointedCode& c2);

/// collapse(c1) in collapse(c2), canonical path.
bool graph_mem(HfPool& pool, const PointedCode& c1, const PointedCode& c2);
/// Cross-validation path: c1 pointed-isomorphic to the subcode at some
/// predecessor of c2's top.
bool graph_mem_iso(const PointedCode& c1, const PointedCode& c2);

/// All valid codes with domain exactly d, in bitmask order (bit u*d+v = edge
/// (u,v)).
std::vector<PointedCode> enumerate_valid_codes(int d);

std::uint64_t code_bits(const PointedCode& c);
PointedCode code_from_bits(int domain, std::uint64_t bits);

} // namespace modelth

#endif
