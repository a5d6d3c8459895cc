#include "fliplab/perm3.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fliplab {

GammaClass::GammaClass(std::vector<int> entries) : e_(std::move(entries)) {
    if (e_.empty()) throw std::invalid_argument("empty gamma class");
    std::set<int> distinct(e_.begin(), e_.end());
    if (distinct.size() != e_.size()) throw std::invalid_argument("repeated entry in gamma class");
    size_t at = std::min_element(e_.begin(), e_.end()) - e_.begin();
    std::rotate(e_.begin(), e_.begin() + at, e_.end());
}

GammaClass GammaClass::negated() const {
    std::vector<int> rev(e_.rbegin(), e_.rend());
    return GammaClass(std::move(rev));
}

bool GammaClass::contains(int x) const {
    return std::find(e_.begin(), e_.end(), x) != e_.end();
}

std::string GammaClass::str() const {
    std::ostringstream os;
    os << '(';
    for (int v : e_) os << v + 1;
    os << ')';
    return os.str();
}

namespace perm3 {

const std::vector<GammaClass>& gamma43() {
    static const std::vector<GammaClass> all = [] {
        std::set<GammaClass> found;
        std::vector<int> perm = {0, 1, 2, 3};
        do {
            found.insert(GammaClass({perm[0], perm[1], perm[2]}));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return std::vector<GammaClass>(found.begin(), found.end());
    }();
    return all;
}

int gamma43_index(const GammaClass& g) {
    const auto& all = gamma43();
    auto it = std::lower_bound(all.begin(), all.end(), g);
    if (it == all.end() || !(*it == g)) throw std::invalid_argument("not in Gamma_4^3");
    return static_cast<int>(it - all.begin());
}

GammaClass o_map(const GammaClass& gamma, std::array<int, 3> s) {
    if (gamma.size() != 3) throw std::invalid_argument("o_map needs a 3-class");
    std::sort(s.begin(), s.end());
    const std::vector<int>& g = gamma.entries();
    std::set<int> sup(g.begin(), g.end());
    std::set<int> sset(s.begin(), s.end());
    if (sset.size() != 3) throw std::invalid_argument("S must have 3 distinct elements");
    if (sset == sup) return gamma;
    // S = {a, b, l} with {a,b} in the support and l the missing element.
    int l = -1;
    std::vector<int> ab;
    for (int x : s)
        if (sup.count(x))
            ab.push_back(x);
        else
            l = x;
    if (l < 0 || ab.size() != 2) throw std::invalid_argument("S not adjacent to gamma");
    // Order (a,b) as the cyclic step of gamma.
    for (int k = 0; k < 3; ++k) {
        int a = g[k], b = g[(k + 1) % 3];
        if ((a == ab[0] && b == ab[1]) || (a == ab[1] && b == ab[0])) return GammaClass({a, b, l});
    }
    throw std::logic_error("pair not consecutive in a 3-cycle");
}

std::vector<GammaClass> gamma43_with_orientation(const GammaClass& ijk) {
    std::array<int, 3> s = {ijk.entries()[0], ijk.entries()[1], ijk.entries()[2]};
    std::vector<GammaClass> out;
    for (const GammaClass& g : gamma43())
        if (o_map(g, s) == ijk) out.push_back(g);
    return out;
}

GammaClass pi_apply(int a, int b, const GammaClass& gamma) {
    if (gamma.size() != 3) throw std::invalid_argument("pi acts on 3-classes");
    const std::vector<int>& g = gamma.entries();
    int l = 0 + 1 + 2 + 3;
    for (int x : g) l -= x;
    if (a == l || b == l) {
        // pi_{(xl)}: replace x by l in place.
        int x = (a == l) ? b : a;
        std::vector<int> out = g;
        bool found = false;
        for (int& v : out)
            if (v == x) {
                v = l;
                found = true;
            }
        if (!found) throw std::invalid_argument("pi pair misses the class support");
        return GammaClass(std::move(out));
    }
    // pi_{(ab)} with both entries in the support: (a b c) -> (b a l).
    for (int k = 0; k < 3; ++k) {
        int u = g[k], v = g[(k + 1) % 3];
        if ((u == a && v == b) || (u == b && v == a)) return GammaClass({v, u, l});
    }
    throw std::logic_error("pair not consecutive in a 3-cycle");
}

GroupElement identity_element() {
    GroupElement e;
    for (int i = 0; i < 8; ++i) e.img[i] = static_cast<int8_t>(i);
    return e;
}

GroupElement pi_element(int a, int b) {
    GroupElement e;
    for (int i = 0; i < 8; ++i)
        e.img[i] = static_cast<int8_t>(gamma43_index(pi_apply(a, b, gamma43()[i])));
    return e;
}

GroupElement compose(const GroupElement& f, const GroupElement& g) {
    GroupElement out;
    for (int i = 0; i < 8; ++i) out.img[i] = f.img[g.img[i]];
    return out;
}

const std::vector<GroupElement>& group_closure() {
    static const std::vector<GroupElement> closure = [] {
        std::vector<GroupElement> gens;
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) gens.push_back(pi_element(a, b));
        std::set<GroupElement> seen = {identity_element()};
        std::vector<GroupElement> frontier(seen.begin(), seen.end());
        for (size_t head = 0; head < frontier.size(); ++head) {
            GroupElement cur = frontier[head];
            for (const GroupElement& g : gens) {
                GroupElement nxt = compose(g, cur);
                if (seen.insert(nxt).second) frontier.push_back(nxt);
            }
        }
        return std::vector<GroupElement>(seen.begin(), seen.end());
    }();
    return closure;
}

GroupActionReport check_groupaction() {
    GroupActionReport rep;
    const auto& closure = group_closure();
    rep.order = closure.size();
    if (rep.order != 8 && rep.order != 16)
        rep.notes.push_back("unexpected group order " + std::to_string(rep.order));

    rep.involutions = true;
    for (const GroupElement& g : closure)
        if (!(compose(g, g) == identity_element())) rep.involutions = false;

    std::vector<GroupElement> gens;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) gens.push_back(pi_element(a, b));

    rep.abelian = true;
    for (const GroupElement& f : gens)
        for (const GroupElement& g : gens)
            if (!(compose(f, g) == compose(g, f))) rep.abelian = false;

    rep.transitive = true;
    for (int i = 0; i < 8; ++i) {
        std::set<int> orbit;
        for (const GroupElement& g : closure) orbit.insert(g.img[i]);
        if (orbit.size() != 8) rep.transitive = false;
    }

    // Sign table: pi_{(ab)} negates o(S) exactly for the S containing both.
    rep.sign_table = true;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            for (const GammaClass& g : gamma43())
                for (int skip = 0; skip < 4; ++skip) {
                    std::array<int, 3> s{};
                    int t = 0;
                    for (int x = 0; x < 4; ++x)
                        if (x != skip) s[t++] = x;
                    GammaClass lhs = o_map(pi_apply(a, b, g), s);
                    GammaClass rhs = o_map(g, s);
                    bool both = (a != skip) && (b != skip);
                    bool match = both ? (lhs == rhs.negated()) : (lhs == rhs);
                    if (!match) rep.sign_table = false;
                }

    // H_l-orbits: Gamma_4^3(ijk) is one orbit of the subgroup generated by
    // the pi_{(il)}, i != l, where {i,j,k} avoids l.
    rep.hl_orbits = true;
    for (int l = 0; l < 4; ++l) {
        std::vector<GroupElement> hgens;
        for (int i = 0; i < 4; ++i)
            if (i != l) hgens.push_back(pi_element(std::min(i, l), std::max(i, l)));
        std::set<GroupElement> hl = {identity_element()};
        std::vector<GroupElement> frontier(hl.begin(), hl.end());
        for (size_t head = 0; head < frontier.size(); ++head)
            for (const GroupElement& g : hgens) {
                GroupElement nxt = compose(g, frontier[head]);
                if (hl.insert(nxt).second) frontier.push_back(nxt);
            }
        std::vector<int> others;
        for (int x = 0; x < 4; ++x)
            if (x != l) others.push_back(x);
        // All orientations (ijk) of the complement 3-set.
        std::vector<GammaClass> orients = {GammaClass({others[0], others[1], others[2]}),
                                           GammaClass({others[0], others[2], others[1]})};
        for (const GammaClass& ijk : orients) {
            std::vector<GammaClass> cls = gamma43_with_orientation(ijk);
            if (cls.size() != 4) {
                rep.hl_orbits = false;
                continue;
            }
            std::set<int> orbit;
            int start = gamma43_index(cls[0]);
            for (const GroupElement& g : hl) orbit.insert(g.img[start]);
            std::set<int> expect;
            for (const GammaClass& c : cls) expect.insert(gamma43_index(c));
            if (orbit != expect) rep.hl_orbits = false;
        }
    }
    return rep;
}

Configuration build_permutohedron(int m) {
    if (m < 2) throw std::invalid_argument("permutohedron needs m >= 2");
    std::vector<Column> cols;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            Column c;
            c.row_mask = static_cast<uint8_t>((1 << i) | (1 << j));
            c.label = ZLabel{i, j, 0};
            cols.push_back(c);
        }
    return Configuration(m, std::move(cols));
}

SignedCircuit circuit_X(const Configuration& cfg, const GammaClass& gamma) {
    const std::vector<int>& g = gamma.entries();
    size_t k = g.size();
    Cell support, plus;
    for (size_t t = 0; t < k; ++t) {
        int a = g[t], b = g[(t + 1) % k];
        int col = cfg.column_by_label(std::min(a, b), std::max(a, b), 0);
        if (col < 0) throw std::invalid_argument("configuration lacks column " +
                                                 std::to_string(a) + "," + std::to_string(b));
        support.push_back(make_vertex(a, col));
        support.push_back(make_vertex(b, col));
        plus.push_back(make_vertex(a, col));
    }
    support = canon_cell(support);
    plus = canon_cell(plus);
    SignedCircuit x = orient_circuit_with_plus(support, plus.front());
    if (x.plus != plus) throw std::logic_error("orientation does not alternate as written");
    return x;
}

Triangulation triangulation_T_gamma(std::shared_ptr<const Configuration> cfg,
                                    const GammaClass& gamma) {
    if (gamma.size() != 3 || cfg->m() != 4)
        throw std::invalid_argument("T_gamma lives on the 3-permutohedron");
    SignedCircuit x = circuit_X(*cfg, gamma);
    HeightFunction w;
    for (VertexId v : cfg->vertices()) w.set(v, cell_contains_vertex(x.plus, v) ? 1 : 0);
    std::vector<Cell> cells = regular_subdivision(cfg->vertices(), w, 17);
    for (const Cell& c : cells)
        if (!is_simplex(c)) throw std::logic_error("T_gamma subdivision is not a triangulation");
    return Triangulation(cfg, cfg->vertices(), std::move(cells));
}

}  // namespace perm3
}  // namespace fliplab
