#ifndef MODELTH_HF_HPP
#define MODELTH_HF_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "modelth/formula.hpp"

namespace modelth {

/// Interning pool of canonical hereditarily finite sets. A set is an id; its
/// children are stored sorted ascending in Ackermann order and duplicate-free,
/// so ids are unique per set. Id 0 is the empty set.
class HfPool {
public:
    HfPool();

    int empty() const { return 0; }
    /// Canonicalizes (sorts, dedups) and interns.
    int make(std::vector<int> children);
    const std::vector<int>& children(int id) const;
    bool member(int elem, int id) const;

    /// Ackermann order: less(a, b) iff ack(a) < ack(b). No big integers are
    /// materialized; the comparison is structural.
    bool less(int a, int b);

    /// ack(a) = sum over children 2^ack(child). Throws GuardError on overflow
    /// past 64 bits.
    std::uint64_t ackermann(int id);
    int ackermann_decode(std::uint64_t n);

    /// |TC(a)|, the set itself not counted.
    int tc_size(int id);
    /// Transitive closure as a sorted id list (the set itself not included).
    const std::vector<int>& tc(int id);

    /// k-fold iterated powerset of the empty collection, Ackermann-sorted.
    /// k = 0 gives the empty list; k <= 5 (|HF(5)| = 65536).
    std::vector<int> universe(int k);

    std::string literal(int id);
    /// Parses "{}", "{{},{{}}}", ... into an id.
    int parse_literal(const std::string& text);

    int size() const { return static_cast<int>(children_.size()); }

private:
    std::vector<std::vector<int>> children_;
    std::map<std::vector<int>, int> index_;
    std::map<std::pair<int, int>, bool> less_memo_;
    std::vector<std::vector<int>> tc_memo_;
    std::vector<char> tc_done_;
};

/// Tarski evaluation over the universe HF(k); membership is true membership,
/// bounded quantifiers range over the children of their bound.
bool hf_eval(HfPool& pool, const Formula& f, int k,
             const std::vector<std::pair<std::string, int>>& assignment);

/// Same but with quantifiers restricted to an explicit universe id list.
bool hf_eval_over(HfPool& pool, const Formula& f, const std::vector<int>& universe,
                  const std::vector<std::pair<std::string, int>>& assignment);

} // namespace modelth

#endif
