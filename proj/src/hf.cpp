#include "modelth/hf.hpp"

#include <algorithm>

#include "modelth/errors.hpp"

namespace modelth {

HfPool::HfPool() {
    children_.push_back({});
    index_[{}] = 0;
    tc_memo_.push_back({});
    tc_done_.push_back(1);
}

int HfPool::make(std::vector<int> children) {
    std::sort(children.begin(), children.end(), [&](int a, int b) { return less(a, b); });
    children.erase(std::unique(children.begin(), children.end()), children.end());
    auto it = index_.find(children);
    if (it != index_.end()) return it->second;
    for (int c : children)
        if (c < 0 || c >= size()) throw SpecError("bad child id");
    int id = size();
    index_[children] = id;
    children_.push_back(std::move(children));
    tc_memo_.push_back({});
    tc_done_.push_back(0);
    return id;
}

const std::vector<int>& HfPool::children(int id) const { return children_.at(id); }

bool HfPool::member(int elem, int id) const {
    const auto& ch = children_.at(id);
    return std::find(ch.begin(), ch.end(), elem) != ch.end();
}

bool HfPool::less(int a, int b) {
    if (a == b) return false;
    auto key = std::make_pair(a, b);
    auto it = less_memo_.find(key);
    if (it != less_memo_.end()) return it->second;
    // ack values are binary numbers whose exponent sets are the children's ack
    // values: compare the descending exponent sequences lexicographically
    const auto& ca = children_.at(a);
    const auto& cb = children_.at(b);
    bool result = false;
    std::size_t ia = ca.size(), ib = cb.size();
    while (true) {
        if (ia == 0 || ib == 0) {
            // equal top exponents consumed; extra remaining bits mean a larger number
            result = (ia == 0 && ib != 0);
            break;
        }
        int xa = ca[ia - 1], xb = cb[ib - 1]; // children sorted ascending: walk from top
        if (xa != xb) {
            result = less(xa, xb);
            break;
        }
        ia--;
        ib--;
    }
    less_memo_[key] = result;
    less_memo_[{b, a}] = !result;
    return result;
}

std::uint64_t HfPool::ackermann(int id) {
    std::uint64_t acc = 0;
    for (int c : children_.at(id)) {
        std::uint64_t e = ackermann(c);
        if (e >= 64) throw GuardError("ackermann overflow past 64 bits");
        std::uint64_t bit = 1ULL << e;
        if (acc & bit) throw SpecError("duplicate child in canonical set");
        acc |= bit;
    }
    return acc;
}

int HfPool::ackermann_decode(std::uint64_t n) {
    std::vector<int> kids;
    for (int bit = 0; bit < 64; bit++)
        if (n & (1ULL << bit)) kids.push_back(ackermann_decode(static_cast<std::uint64_t>(bit)));
    return make(std::move(kids));
}

const std::vector<int>& HfPool::tc(int id) {
    if (tc_done_.at(id)) return tc_memo_[id];
    std::vector<int> acc;
    for (int c : children_.at(id)) {
        acc.push_back(c);
        const auto& sub = tc(c);
        acc.insert(acc.end(), sub.begin(), sub.end());
    }
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    tc_memo_[id] = std::move(acc);
    tc_done_[id] = 1;
    return tc_memo_[id];
}

int HfPool::tc_size(int id) { return static_cast<int>(tc(id).size()); }

std::vector<int> HfPool::universe(int k) {
    if (k < 0) throw SpecError("negative universe depth");
    if (k > 5) throw GuardError("hf_universe guard: k <= 5 (|HF(5)| = 65536)");
    std::vector<int> cur; // HF(0) is empty
    for (int step = 0; step < k; step++) {
        std::vector<int> next;
        std::size_t subsets = static_cast<std::size_t>(1) << cur.size();
        next.reserve(subsets);
        for (std::size_t mask = 0; mask < subsets; mask++) {
            std::vector<int> kids;
            for (std::size_t i = 0; i < cur.size(); i++)
                if (mask & (static_cast<std::size_t>(1) << i)) kids.push_back(cur[i]);
            next.push_back(make(std::move(kids)));
        }
        cur = std::move(next);
    }
    std::sort(cur.begin(), cur.end(), [&](int a, int b) { return less(a, b); });
    return cur;
}

std::string HfPool::literal(int id) {
    std::string out = "{";
    const auto& ch = children_.at(id);
    for (std::size_t i = 0; i < ch.size(); i++) {
        if (i) out += ",";
        out += literal(ch[i]);
    }
    out += "}";
    return out;
}

int HfPool::parse_literal(const std::string& text) {
    std::size_t pos = 0;
    auto skip = [&]() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) pos++;
    };
    auto rec = [&](auto&& self) -> int {
        skip();
        if (pos >= text.size() || text[pos] != '{') throw ParseError("expected '{'", pos);
        pos++;
        std::vector<int> kids;
        skip();
        if (pos < text.size() && text[pos] == '}') {
            pos++;
            return make({});
        }
        while (true) {
            kids.push_back(self(self));
            skip();
            if (pos < text.size() && text[pos] == ',') {
                pos++;
                continue;
            }
            if (pos < text.size() && text[pos] == '}') {
                pos++;
                return make(std::move(kids));
            }
            throw ParseError("expected ',' or '}'", pos);
        }
    };
    int id = rec(rec);
    skip();
    if (pos != text.size()) throw ParseError("trailing input after set literal", pos);
    return id;
}

bool hf_eval_over(HfPool& pool, const Formula& f, const std::vector<int>& universe,
                  const std::vector<std::pair<std::string, int>>& assignment) {
    auto env = assignment;
    auto get = [&](const Term& t) -> int {
        if (t.kind != TermKind::Variable)
            throw SpecError("hf_eval supports variable terms only");
        for (auto it = env.rbegin(); it != env.rend(); ++it)
            if (it->first == t.name) return it->second;
        throw SpecError("unassigned free variable '" + t.name + "'");
    };
    auto rec = [&](auto&& self, const Formula& g) -> bool {
        switch (g.kind) {
        case FKind::Atom:
            throw SpecError("hf_eval: relation symbols other than membership present");
        case FKind::Equal:
            return get(g.terms[0]) == get(g.terms[1]);
        case FKind::Member:
            return pool.member(get(g.terms[0]), get(g.terms[1]));
        case FKind::Not:
            return !self(self, g.sub[0]);
        case FKind::And:
            return self(self, g.sub[0]) && self(self, g.sub[1]);
        case FKind::Or:
            return self(self, g.sub[0]) || self(self, g.sub[1]);
        case FKind::Implies:
            return !self(self, g.sub[0]) || self(self, g.sub[1]);
        case FKind::Iff:
            return self(self, g.sub[0]) == self(self, g.sub[1]);
        case FKind::Forall:
        case FKind::Exists: {
            bool want = g.kind == FKind::Exists;
            env.push_back({g.sym, 0});
            for (int e : universe) {
                env.back().second = e;
                if (self(self, g.sub[0]) == want) {
                    env.pop_back();
                    return want;
                }
            }
            env.pop_back();
            return !want;
        }
        case FKind::BoundedForall:
        case FKind::BoundedExists: {
            bool want = g.kind == FKind::BoundedExists;
            int bound = get(g.terms[0]);
            env.push_back({g.sym, 0});
            for (int e : pool.children(bound)) {
                env.back().second = e;
                if (self(self, g.sub[0]) == want) {
                    env.pop_back();
                    return want;
                }
            }
            env.pop_back();
            return !want;
        }
        }
        throw SpecError("unreachable");
    };
    return rec(rec, f);
}

bool hf_eval(HfPool& pool, const Formula& f, int k,
             const std::vector<std::pair<std::string, int>>& assignment) {
    return hf_eval_over(pool, f, pool.universe(k), assignment);
}

} // namespace modelth
