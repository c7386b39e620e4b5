#include "modelth/quotient.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "modelth/errors.hpp"

namespace modelth {

QuotientReport quotient_check(HfPool& pool, int m, int k) {
    if (m < 1 || m > 5) throw GuardError("quotient_check supports 1 <= m <= 5");
    if (k < m)
        throw SpecError("bound mismatch: k >= m is required so HF(k) covers TC-size < m");
    if (k > 5) throw GuardError("hf universe guard: k <= 5");

    QuotientReport rep;
    std::vector<PointedCode> codes;
    for (int d = 1; d <= m; d++)
        for (auto& c : enumerate_valid_codes(d)) codes.push_back(std::move(c));
    rep.total_codes = static_cast<int>(codes.size());
    const int n = rep.total_codes;

    std::vector<int> coll(n);
    for (int i = 0; i < n; i++) coll[i] = collapse(pool, codes[i]);

    // dual-path agreement makes the quotient well-defined
    std::vector<std::vector<char>> eq(n, std::vector<char>(n, 0)), mem(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            bool e_canon = coll[i] == coll[j];
            bool e_iso = graphs_equal_iso(codes[i], codes[j]);
            if (e_canon != e_iso) {
                rep.dual_path_equal_ok = false;
                rep.detail = "equality paths disagree on codes " + std::to_string(i) + "," +
                             std::to_string(j);
            }
            bool m_canon = pool.member(coll[i], coll[j]);
            bool m_iso = graph_mem_iso(codes[i], codes[j]);
            if (m_canon != m_iso) {
                rep.dual_path_mem_ok = false;
                rep.detail = "membership paths disagree on codes " + std::to_string(i) + "," +
                             std::to_string(j);
            }
            eq[i][j] = e_iso ? 1 : 0;
            mem[i][j] = m_iso ? 1 : 0;
        }

    // equivalence axioms for the isomorphism relation
    for (int i = 0; i < n && rep.equivalence_ok; i++) {
        if (!eq[i][i]) rep.equivalence_ok = false;
        for (int j = 0; j < n && rep.equivalence_ok; j++) {
            if (eq[i][j] != eq[j][i]) rep.equivalence_ok = false;
            if (!eq[i][j]) continue;
            for (int l = 0; l < n; l++)
                if (eq[j][l] && !eq[i][l]) {
                    rep.equivalence_ok = false;
                    break;
                }
        }
    }

    // membership is a congruence for equality
    for (int i = 0; i < n && rep.congruence_ok; i++)
        for (int i2 = 0; i2 < n && rep.congruence_ok; i2++) {
            if (!eq[i][i2]) continue;
            for (int j = 0; j < n && rep.congruence_ok; j++)
                for (int j2 = 0; j2 < n; j2++) {
                    if (!eq[j][j2]) continue;
                    if (mem[i][j] != mem[i2][j2]) {
                        rep.congruence_ok = false;
                        rep.detail = "congruence failure";
                        break;
                    }
                }
        }

    // the quotient must be exactly the sets of TC-size < m with true membership
    std::set<int> class_ids(coll.begin(), coll.end());
    std::set<int> reference;
    for (int id : pool.universe(k))
        if (pool.tc_size(id) < m) reference.insert(id);
    if (class_ids != reference) {
        rep.matches_reference_ok = false;
        rep.detail = "collapse image differs from the TC-size < " + std::to_string(m) + " reference";
    }
    for (int i = 0; i < n && rep.matches_reference_ok; i++)
        for (int j = 0; j < n; j++)
            if ((mem[i][j] != 0) != pool.member(coll[i], coll[j])) {
                rep.matches_reference_ok = false;
                rep.detail = "induced membership differs from true membership";
                break;
            }

    rep.class_sets.assign(class_ids.begin(), class_ids.end());
    std::sort(rep.class_sets.begin(), rep.class_sets.end(),
              [&](int a, int b) { return pool.less(a, b); });
    rep.classes = static_cast<int>(rep.class_sets.size());
    rep.pass = rep.dual_path_equal_ok && rep.dual_path_mem_ok && rep.equivalence_ok &&
               rep.congruence_ok && rep.matches_reference_ok;
    return rep;
}

} // namespace modelth
