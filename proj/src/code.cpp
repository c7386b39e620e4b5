#include "modelth/code.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "modelth/errors.hpp"

namespace modelth {

void PointedCode::normalize() {
    std::sort(rel.begin(), rel.end());
    rel.erase(std::unique(rel.begin(), rel.end()), rel.end());
}

bool PointedCode::has_edge(int u, int v) const {
    return std::binary_search(rel.begin(), rel.end(), std::make_pair(u, v));
}

namespace {

std::vector<char> field_of(const PointedCode& c) {
    std::vector<char> in(c.domain, 0);
    for (auto [u, v] : c.rel) {
        in[u] = 1;
        in[v] = 1;
    }
    return in;
}

// nodes that reach `target` along edges (u below v steps upward v from u)
std::vector<char> reaches(const PointedCode& c, int target) {
    std::vector<std::vector<int>> preds(c.domain);
    for (auto [u, v] : c.rel) preds[v].push_back(u);
    std::vector<char> seen(c.domain, 0);
    std::vector<int> stack = {target};
    seen[target] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : preds[v])
            if (!seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    return seen;
}

bool has_cycle(const PointedCode& c) {
    std::vector<std::vector<int>> succ(c.domain);
    std::vector<int> indeg(c.domain, 0);
    for (auto [u, v] : c.rel) {
        succ[u].push_back(v);
        indeg[v]++;
    }
    std::vector<int> queue;
    for (int i = 0; i < c.domain; i++)
        if (indeg[i] == 0) queue.push_back(i);
    int removed = 0;
    while (!queue.empty()) {
        int u = queue.back();
        queue.pop_back();
        removed++;
        for (int v : succ[u])
            if (--indeg[v] == 0) queue.push_back(v);
    }
    return removed != c.domain;
}

} // namespace

WfeCheck is_wfe(const PointedCode& c) {
    if (c.domain < 1) return {false, "empty domain"};
    for (auto [u, v] : c.rel)
        if (u < 0 || v < 0 || u >= c.domain || v >= c.domain)
            return {false, "edge out of range"};
    if (has_cycle(c)) return {false, "cycle"};
    for (auto [u, v] : c.rel)
        if (u == 0) return {false, "top element 0 has an R-successor"};
    std::vector<char> in_field = field_of(c);
    for (int i = 1; i < c.domain; i++)
        if (!in_field[i])
            return {false, "unused domain element " + std::to_string(i)};
    std::vector<char> reach0 = reaches(c, 0);
    for (int i = 0; i < c.domain; i++)
        if (in_field[i] && !reach0[i])
            return {false, "node " + std::to_string(i) + " does not reach the top element"};
    // extensionality over the field (plus the top)
    std::vector<std::set<int>> preds(c.domain);
    for (auto [u, v] : c.rel) preds[v].insert(u);
    for (int i = 0; i < c.domain; i++)
        for (int j = i + 1; j < c.domain; j++) {
            bool live_i = in_field[i] || i == 0;
            bool live_j = in_field[j] || j == 0;
            if (live_i && live_j && preds[i] == preds[j])
                return {false, "extensionality: nodes " + std::to_string(i) + "," +
                                   std::to_string(j) + " share predecessor set"};
        }
    return {true, ""};
}

int collapse(HfPool& pool, const PointedCode& c) {
    WfeCheck w = is_wfe(c);
    if (!w.ok) throw SpecError("collapse on invalid code: " + w.reason);
    std::vector<std::vector<int>> preds(c.domain);
    for (auto [u, v] : c.rel) preds[v].push_back(u);
    std::vector<int> value(c.domain, -1);
    auto rec = [&](auto&& self, int v) -> int {
        if (value[v] >= 0) return value[v];
        std::vector<int> kids;
        for (int u : preds[v]) kids.push_back(self(self, u));
        return value[v] = pool.make(std::move(kids));
    };
    return rec(rec, 0);
}

PointedCode encode(HfPool& pool, int id) {
    std::vector<int> label_of; // BFS order: node i carries set label_of[i]
    auto node_for = [&](int set_id) -> int {
        for (std::size_t i = 0; i < label_of.size(); i++)
            if (label_of[i] == set_id) return static_cast<int>(i);
        return -1;
    };
    label_of.push_back(id);
    PointedCode c;
    c.rel.clear();
    std::size_t head = 0;
    while (head < label_of.size()) {
        int cur_set = label_of[head];
        int cur_node = static_cast<int>(head);
        head++;
        for (int child : pool.children(cur_set)) { // already in Ackermann order
            int n = node_for(child);
            if (n < 0) {
                n = static_cast<int>(label_of.size());
                label_of.push_back(child);
            }
            c.rel.push_back({n, cur_node});
        }
    }
    c.domain = static_cast<int>(label_of.size());
    c.normalize();
    return c;
}

PointedCode trim(const PointedCode& c) {
    std::vector<char> keep = field_of(c);
    keep[0] = 1;
    std::vector<int> relabel(c.domain, -1);
    int next = 0;
    for (int i = 0; i < c.domain; i++)
        if (keep[i]) relabel[i] = next++;
    PointedCode out;
    out.domain = next;
    for (auto [u, v] : c.rel) out.rel.push_back({relabel[u], relabel[v]});
    out.normalize();
    return out;
}

bool pointed_iso(const PointedCode& a, const PointedCode& b) {
    if (a.domain != b.domain || a.rel.size() != b.rel.size()) return false;
    const int n = a.domain;
    // degree invariants prune the permutation search
    std::vector<int> ain(n, 0), aout(n, 0), bin(n, 0), bout(n, 0);
    for (auto [u, v] : a.rel) {
        aout[u]++;
        ain[v]++;
    }
    for (auto [u, v] : b.rel) {
        bout[u]++;
        bin[v]++;
    }
    std::vector<int> map(n, -1);
    std::vector<char> used(n, 0);
    map[0] = 0;
    used[0] = 1;
    if (ain[0] != bin[0] || aout[0] != bout[0]) return false;
    // forward preservation of every edge plus equal edge counts gives
    // reflection for free once the map is total
    auto ok_sofar = [&](int i) {
        for (auto [u, v] : a.rel) {
            if (map[u] < 0 || map[v] < 0) continue;
            if (u != i && v != i) continue;
            if (!b.has_edge(map[u], map[v])) return false;
        }
        return true;
    };
    auto rec = [&](auto&& self, int i) -> bool {
        if (i == n) return true;
        if (map[i] >= 0) return self(self, i + 1); // node 0 pre-mapped
        for (int t = 0; t < n; t++) {
            if (used[t] || ain[i] != bin[t] || aout[i] != bout[t]) continue;
            map[i] = t;
            used[t] = 1;
            if (ok_sofar(i) && self(self, i + 1)) return true;
            used[t] = 0;
            map[i] = -1;
        }
        return false;
    };
    return rec(rec, 0);
}

PointedCode subcode_at(const PointedCode& c, int alpha) {
    std::vector<char> keep = reaches(c, alpha);
    std::vector<int> order;
    order.push_back(alpha); // alpha becomes the new top 0
    for (int i = 0; i < c.domain; i++)
        if (keep[i] && i != alpha) order.push_back(i);
    std::vector<int> relabel(c.domain, -1);
    for (std::size_t i = 0; i < order.size(); i++) relabel[order[i]] = static_cast<int>(i);
    PointedCode out;
    out.domain = static_cast<int>(order.size());
    for (auto [u, v] : c.rel)
        if (keep[u] && keep[v]) out.rel.push_back({relabel[u], relabel[v]});
    out.normalize();
    return out;
}

bool graphs_equal(HfPool& pool, const PointedCode& c1, const PointedCode& c2) {
    return collapse(pool, c1) == collapse(pool, c2);
}

bool graphs_equal_iso(const PointedCode& c1, const PointedCode& c2) {
    return pointed_iso(c1, c2);
}

bool graph_mem(HfPool& pool, const PointedCode& c1, const PointedCode& c2) {
    return pool.member(collapse(pool, c1), collapse(pool, c2));
}

bool graph_mem_iso(const PointedCode& c1, const PointedCode& c2) {
    for (auto [u, v] : c2.rel)
        if (v == 0 && pointed_iso(c1, subcode_at(c2, u))) return true;
    return false;
}

std::uint64_t code_bits(const PointedCode& c) {
    std::uint64_t bits = 0;
    for (auto [u, v] : c.rel) bits |= 1ULL << (u * c.domain + v);
    return bits;
}

PointedCode code_from_bits(int domain, std::uint64_t bits) {
    PointedCode c;
    c.domain = domain;
    for (int u = 0; u < domain; u++)
        for (int v = 0; v < domain; v++)
            if (bits & (1ULL << (u * domain + v))) c.rel.push_back({u, v});
    c.normalize();
    return c;
}

std::vector<PointedCode> enumerate_valid_codes(int d) {
    if (d < 1 || d > 5) throw GuardError("code enumeration supports domains 1..5");
    std::vector<PointedCode> out;
    std::uint64_t cap = 1ULL << (d * d);
    for (std::uint64_t bits = 0; bits < cap; bits++) {
        PointedCode c = code_from_bits(d, bits);
        if (is_wfe(c).ok) out.push_back(std::move(c));
    }
    return out;
}

} // namespace modelth
