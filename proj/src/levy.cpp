#include "modelth/levy.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "modelth/errors.hpp"

namespace modelth {

std::string LevyClass::str() const {
    switch (tag) {
    case LevyTag::Delta0: return "Delta0";
    case LevyTag::Sigma: return "Sigma(" + std::to_string(n) + ")";
    case LevyTag::Pi: return "Pi(" + std::to_string(n) + ")";
    }
    return "?";
}

bool is_delta0(const Formula& f) {
    if (f.is_quantifier()) return false;
    for (const auto& s : f.sub)
        if (!is_delta0(s)) return false;
    return true;
}

Formula desugar_bounded(const Formula& f) {
    Formula out = f;
    for (auto& s : out.sub) s = desugar_bounded(s);
    if (f.kind == FKind::BoundedForall) {
        Formula guard = Formula::member(Term::var(f.sym), f.terms[0]);
        Formula body = Formula::implies(std::move(guard), std::move(out.sub[0]));
        return Formula::forall(f.sym, std::move(body));
    }
    if (f.kind == FKind::BoundedExists) {
        Formula guard = Formula::member(Term::var(f.sym), f.terms[0]);
        Formula body = Formula::land(std::move(guard), std::move(out.sub[0]));
        return Formula::exists(f.sym, std::move(body));
    }
    return out;
}

namespace {

struct QItem {
    bool universal;
    std::string var;
};

struct Pre {
    std::vector<QItem> prefix;
    Formula matrix;
};

int block_count(const std::vector<QItem>& p) {
    if (p.empty()) return 0;
    int b = 1;
    for (std::size_t i = 1; i < p.size(); i++)
        if (p[i].universal != p[i - 1].universal) b++;
    return b;
}

// Interleaves two prefixes (keeping each one's internal order) with as few
// alternation blocks as possible. `want_universal` breaks ties on the leading kind.
std::vector<QItem> merge_prefixes(const std::vector<QItem>& a, const std::vector<QItem>& b,
                                  bool want_universal) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const int na = static_cast<int>(a.size()), nb = static_cast<int>(b.size());
    // cost[i][j][last]: min blocks still to open for suffixes a[i:], b[j:], given the
    // kind of the previously emitted quantifier (0=existential,1=universal,2=none).
    static constexpr int INF = std::numeric_limits<int>::max() / 4;
    std::vector<int> cost((na + 1) * (nb + 1) * 3, INF);
    auto at = [&](int i, int j, int last) -> int& { return cost[(i * (nb + 1) + j) * 3 + last]; };
    for (int last = 0; last < 3; last++) at(na, nb, last) = 0;
    for (int i = na; i >= 0; i--)
        for (int j = nb; j >= 0; j--)
            for (int last = 0; last < 3; last++) {
                if (i == na && j == nb) continue;
                int best = INF;
                if (i < na) {
                    int k = a[i].universal ? 1 : 0;
                    best = std::min(best, (last == k ? 0 : 1) + at(i + 1, j, k));
                }
                if (j < nb) {
                    int k = b[j].universal ? 1 : 0;
                    best = std::min(best, (last == k ? 0 : 1) + at(i, j + 1, k));
                }
                at(i, j, last) = best;
            }
    std::vector<QItem> out;
    out.reserve(a.size() + b.size());
    int i = 0, j = 0, last = 2;
    while (i < na || j < nb) {
        int ca = INF, cb = INF;
        if (i < na) {
            int k = a[i].universal ? 1 : 0;
            ca = (last == k ? 0 : 1) + at(i + 1, j, k);
        }
        if (j < nb) {
            int k = b[j].universal ? 1 : 0;
            cb = (last == k ? 0 : 1) + at(i, j + 1, k);
        }
        bool take_a;
        if (ca != cb) {
            take_a = ca < cb;
        } else if (i < na && j < nb && a[i].universal != b[j].universal) {
            // tie with different head kinds: honor the requested leading kind,
            // afterwards continue the current block
            bool prefer_universal = (last == 2) ? want_universal : (last == 1);
            take_a = (a[i].universal == prefer_universal);
        } else {
            take_a = i < na;
        }
        if (take_a) {
            last = a[i].universal ? 1 : 0;
            out.push_back(a[i++]);
        } else {
            last = b[j].universal ? 1 : 0;
            out.push_back(b[j++]);
        }
    }
    return out;
}

struct Variants {
    Pre sig; // preferred existential lead
    Pre pi;  // preferred universal lead
};

Pre flip_negate(const Pre& p) {
    Pre out;
    out.prefix = p.prefix;
    for (auto& q : out.prefix) q.universal = !q.universal;
    out.matrix = Formula::lnot(p.matrix);
    return out;
}

bool contains_unbounded(const Formula& f) { return !is_delta0(f); }

Variants build(const Formula& f);

Variants combine(FKind kind, const Formula& lhs, const Formula& rhs) {
    Variants a = build(lhs);
    Variants b = build(rhs);
    auto glue = [&](const Pre& x, const Pre& y, bool want_universal) {
        Pre out;
        out.prefix = merge_prefixes(x.prefix, y.prefix, want_universal);
        Formula m;
        m.kind = kind;
        m.sub = {x.matrix, y.matrix};
        out.matrix = std::move(m);
        return out;
    };
    auto better = [&](const Pre& x, const Pre& y, bool want_universal) {
        int bx = block_count(x.prefix), by = block_count(y.prefix);
        if (bx != by) return bx < by ? x : y;
        bool xu = !x.prefix.empty() && x.prefix[0].universal;
        bool yu = !y.prefix.empty() && y.prefix[0].universal;
        if (xu != yu) return xu == want_universal ? x : y;
        return x;
    };
    Variants out;
    bool first = true;
    for (const Pre* px : {&a.sig, &a.pi})
        for (const Pre* py : {&b.sig, &b.pi}) {
            Pre cs = glue(*px, *py, false);
            Pre cp = glue(*px, *py, true);
            if (first) {
                out.sig = cs;
                out.pi = cp;
                first = false;
            } else {
                out.sig = better(out.sig, cs, false);
                out.pi = better(out.pi, cp, true);
            }
        }
    return out;
}

Variants build(const Formula& f) {
    switch (f.kind) {
    case FKind::Atom:
    case FKind::Equal:
    case FKind::Member: {
        Pre p{{}, f};
        return {p, p};
    }
    case FKind::Not: {
        Variants v = build(f.sub[0]);
        Variants out;
        out.sig = flip_negate(v.pi);
        out.pi = flip_negate(v.sig);
        // when the child has a one-sided prefix both flips coincide; that is fine
        return out;
    }
    case FKind::And:
    case FKind::Or:
        return combine(f.kind, f.sub[0], f.sub[1]);
    case FKind::Implies:
        if (!contains_unbounded(f.sub[0]) && !contains_unbounded(f.sub[1])) {
            Pre p{{}, f};
            return {p, p};
        }
        return combine(FKind::Or, Formula::lnot(f.sub[0]), f.sub[1]);
    case FKind::Iff: {
        // quantified biconditionals are expanded (and re-renamed) before build
        Pre p{{}, f};
        return {p, p};
    }
    case FKind::Forall:
    case FKind::Exists: {
        Variants v = build(f.sub[0]);
        bool uni = f.kind == FKind::Forall;
        auto attach = [&](const Pre& p) {
            Pre out;
            out.prefix.push_back({uni, f.sym});
            out.prefix.insert(out.prefix.end(), p.prefix.begin(), p.prefix.end());
            out.matrix = p.matrix;
            return out;
        };
        Pre c1 = attach(v.sig), c2 = attach(v.pi);
        Pre best = block_count(c1.prefix) <= block_count(c2.prefix) ? c1 : c2;
        return {best, best};
    }
    case FKind::BoundedForall:
    case FKind::BoundedExists: {
        if (is_delta0(f.sub[0])) {
            Variants v = build(f.sub[0]); // matrix-only by is_delta0
            Formula node = f;
            node.sub[0] = v.sig.matrix;
            Pre p{{}, node};
            return {p, p};
        }
        Formula guard = Formula::member(Term::var(f.sym), f.terms[0]);
        if (f.kind == FKind::BoundedForall) {
            Formula g = Formula::forall(f.sym, Formula::implies(guard, f.sub[0]));
            return build(g);
        }
        Formula g = Formula::exists(f.sym, Formula::land(guard, f.sub[0]));
        return build(g);
    }
    }
    throw SpecError("unreachable");
}

Formula assemble(const Pre& p) {
    Formula out = p.matrix;
    for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
        out = it->universal ? Formula::forall(it->var, std::move(out))
                            : Formula::exists(it->var, std::move(out));
    return out;
}

bool needs_renaming(const Formula& f) {
    std::set<std::string> binders;
    std::vector<std::string> fv = free_vars(f);
    bool clash = false;
    auto walk = [&](auto&& self, const Formula& g) -> void {
        if (clash) return;
        if (g.is_quantifier() || g.is_bounded_quantifier()) {
            if (!binders.insert(g.sym).second ||
                std::find(fv.begin(), fv.end(), g.sym) != fv.end()) {
                clash = true;
                return;
            }
        }
        for (const auto& s : g.sub) self(self, s);
    };
    walk(walk, f);
    return clash;
}

// rewrites every biconditional whose sides contain unbounded quantifiers into
// the conjunction of the two implications (prefix merging would otherwise
// duplicate binders)
Formula expand_quantified_iffs(const Formula& f) {
    Formula out = f;
    for (auto& s : out.sub) s = expand_quantified_iffs(s);
    if (out.kind == FKind::Iff &&
        (contains_unbounded(out.sub[0]) || contains_unbounded(out.sub[1]))) {
        Formula fwd = Formula::implies(out.sub[0], out.sub[1]);
        Formula bwd = Formula::implies(out.sub[1], out.sub[0]);
        return Formula::land(std::move(fwd), std::move(bwd));
    }
    return out;
}

Pre best_prenex(const Formula& f) {
    Formula g = expand_quantified_iffs(f);
    if (needs_renaming(g)) g = normalize_bound(g);
    Variants v = build(g);
    int bs = block_count(v.sig.prefix), bp = block_count(v.pi.prefix);
    if (bs < bp) return v.sig;
    if (bp < bs) return v.pi;
    // tie: prefer the universal-leading form
    bool piu = !v.pi.prefix.empty() && v.pi.prefix[0].universal;
    return piu ? v.pi : v.sig;
}

} // namespace

Formula to_prenex(const Formula& f) { return assemble(best_prenex(f)); }

LevyClass levy_classify(const Formula& f) {
    Pre p = best_prenex(f);
    int blocks = block_count(p.prefix);
    if (blocks == 0) return LevyClass::delta0();
    return p.prefix[0].universal ? LevyClass::pi(blocks) : LevyClass::sigma(blocks);
}

} // namespace modelth
