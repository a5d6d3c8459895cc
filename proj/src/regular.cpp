#include "fliplab/regular.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <json.hpp>
#include <set>
#include <sstream>

#include "fliplab/lp.hpp"
#include "fliplab/prng.hpp"

namespace fliplab {

using nlohmann::json;

std::string HeightFunction::to_json() const {
    json j;
    for (const auto& [v, q] : values) {
        std::string key = "[" + std::to_string(vrow(v) + 1) + "," + std::to_string(vcol(v)) + "]";
        j[key] = rat_str(q);
    }
    return j.dump(2);
}

HeightFunction HeightFunction::from_json(const std::string& text) {
    json j = json::parse(text);
    HeightFunction h;
    for (auto it = j.begin(); it != j.end(); ++it) {
        json key = json::parse(it.key());
        int row = key.at(0).get<int>() - 1, col = key.at(1).get<int>();
        h.values[make_vertex(row, col)] = rat_parse(it.value().get<std::string>());
    }
    return h;
}

namespace {

// Two-component lexicographic value.
struct Lex {
    Rat a, b;
    int sign() const {
        int s = sgn(a);
        return s != 0 ? s : sgn(b);
    }
    Lex operator-(const Lex& o) const { return {a - o.a, b - o.b}; }
    Lex operator+(const Lex& o) const { return {a + o.a, b + o.b}; }
    Lex scaled(const Rat& q) const { return {a * q, b * q}; }
};

bool lex_less(const Lex& x, const Lex& y) { return (x - y).sign() < 0; }

// Intrinsic rational coordinates for the domain: r independent coordinates
// of the affine embedding, so full simplices give invertible r x r systems.
struct Chart {
    int rank = 0;
    std::vector<std::vector<Rat>> coords;  // per domain vertex, length rank
    std::vector<int> vertex_index;         // position in domain
};

Chart make_chart(const Cell& domain) {
    std::set<int> rowset, colset;
    for (VertexId v : domain) rowset.insert(vrow(v)), colset.insert(vcol(v));
    std::vector<int> rows(rowset.begin(), rowset.end()), cols(colset.begin(), colset.end());
    size_t w = rows.size() + cols.size() + 1;  // affine coordinate appended

    std::vector<std::vector<Rat>> full(domain.size(), std::vector<Rat>(w, Rat(0)));
    for (size_t i = 0; i < domain.size(); ++i) {
        VertexId v = domain[i];
        full[i][std::lower_bound(rows.begin(), rows.end(), vrow(v)) - rows.begin()] = 1;
        full[i][rows.size() +
                (std::lower_bound(cols.begin(), cols.end(), vcol(v)) - cols.begin())] = 1;
        full[i][w - 1] = 1;
    }
    // Select independent columns by eliminating on the transpose.
    QMat t(w, domain.size());
    for (size_t i = 0; i < domain.size(); ++i)
        for (size_t j = 0; j < w; ++j) t.at(j, i) = full[i][j];
    // Gaussian elimination over rows of t marks independent coordinate rows.
    std::vector<size_t> chosen;
    std::vector<char> used_col(domain.size(), 0);
    QMat work = t;
    for (size_t j = 0; j < w; ++j) {
        size_t piv = SIZE_MAX;
        for (size_t c = 0; c < domain.size(); ++c)
            if (!used_col[c] && work.at(j, c) != 0) {
                piv = c;
                break;
            }
        if (piv == SIZE_MAX) continue;
        chosen.push_back(j);
        used_col[piv] = 1;
        Rat inv = 1 / work.at(j, piv);
        for (size_t jj = 0; jj < w; ++jj) {
            if (jj == j || work.at(jj, piv) == 0) continue;
            Rat f = work.at(jj, piv) * inv;
            for (size_t c = 0; c < domain.size(); ++c) work.at(jj, c) -= f * work.at(j, c);
        }
    }
    Chart ch;
    ch.rank = static_cast<int>(chosen.size());
    ch.coords.resize(domain.size());
    for (size_t i = 0; i < domain.size(); ++i) {
        ch.coords[i].resize(chosen.size());
        for (size_t k = 0; k < chosen.size(); ++k) ch.coords[i][k] = full[i][chosen[k]];
    }
    return ch;
}

struct Engine {
    const Cell& domain;
    Chart chart;
    std::vector<Lex> h;  // per domain index
    int r;               // rank = simplex size

    explicit Engine(const Cell& dom) : domain(dom), chart(make_chart(dom)), r(chart.rank) {}

    // Affine functional through the lifted simplex: solve M^T y = h(simplex),
    // where rows of M are the r coordinates of the simplex vertices. Returns
    // per-domain-vertex deficits d(w) = h(w) - l(w) and barycentric rows.
    struct SimplexData {
        std::vector<int> idx;            // indices into domain, size r
        QMat inv;                        // inverse of the coordinate matrix
        std::vector<Lex> deficit;        // per domain vertex
        std::vector<std::vector<Rat>> bary;  // per domain vertex, r coords
    };

    SimplexData analyze(const std::vector<int>& simplex_idx) const {
        SimplexData sd;
        sd.idx = simplex_idx;
        QMat m(r, r);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) m.at(i, j) = chart.coords[simplex_idx[i]][j];
        std::optional<QMat> inv = m.inverse();
        if (!inv) throw GenericityFailure("degenerate simplex candidate");
        sd.inv = std::move(*inv);
        size_t n = domain.size();
        sd.deficit.resize(n);
        sd.bary.resize(n);
        for (size_t wi = 0; wi < n; ++wi) {
            // bary = coords(w) * inv  (row vector times matrix)
            std::vector<Rat> bary(r, Rat(0));
            for (int j = 0; j < r; ++j) {
                if (chart.coords[wi][j] == 0) continue;
                for (int k = 0; k < r; ++k) bary[k] += chart.coords[wi][j] * sd.inv.at(j, k);
            }
            Lex l{0, 0};
            for (int k = 0; k < r; ++k) {
                if (bary[k] == 0) continue;
                l = l + h[simplex_idx[k]].scaled(bary[k]);
            }
            sd.deficit[wi] = h[wi] - l;
            sd.bary[wi] = std::move(bary);
        }
        return sd;
    }

    // Lower-cell certificate: deficits vanish exactly on the simplex.
    void certify(const SimplexData& sd) const {
        std::vector<char> inside(domain.size(), 0);
        for (int i : sd.idx) inside[i] = 1;
        for (size_t wi = 0; wi < domain.size(); ++wi) {
            int s = sd.deficit[wi].sign();
            if (inside[wi] ? s != 0 : s <= 0)
                throw GenericityFailure("lower-face certificate failed (ties in heights)");
        }
    }
};

}  // namespace

LowerHull lower_hull_triangulation(const Cell& domain, const HeightFunction& primary,
                                   const HeightFunction* tiebreak, uint64_t point_salt) {
    if (domain.empty()) throw std::invalid_argument("empty domain");
    Engine eng(domain);
    size_t n = domain.size();
    eng.h.resize(n);
    for (size_t i = 0; i < n; ++i) {
        eng.h[i].a = primary.at(domain[i]);
        eng.h[i].b = tiebreak ? tiebreak->at(domain[i]) : Rat(0);
    }
    int r = eng.r;

    LowerHull out;
    if (r == static_cast<int>(n)) {  // the domain is itself a simplex
        out.simplices.push_back(domain);
        return out;
    }

    // Initial simplex: the lower cell vertically above a generic interior
    // point, found by a lexicographic LP over convex combinations.
    std::vector<Rat> weights(n);
    {
        Rat total = 0;
        for (size_t i = 0; i < n; ++i) {
            // Deterministic generic-ish weights; the certificate catches any
            // unlucky wall hit and the salt re-rolls them.
            uint64_t mix = (i + 1) * 2654435761u + point_salt * 0x9e3779b97f4a7c15ull;
            weights[i] = Rat(static_cast<long>(2 + (mix % 997)), 1);
            total += weights[i];
        }
        for (Rat& q : weights) q /= total;
    }
    size_t dim = eng.chart.coords[0].size();
    QMat a_eq(dim, n);
    std::vector<Rat> b_eq(dim, Rat(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < dim; ++j) {
            a_eq.at(j, i) = eng.chart.coords[i][j];
            b_eq[j] += weights[i] * eng.chart.coords[i][j];
        }
    QMat a_le(n, n);
    std::vector<Rat> b_le(n, Rat(0));
    for (size_t i = 0; i < n; ++i) a_le.at(i, i) = -1;

    std::vector<Rat> c1(n);
    for (size_t i = 0; i < n; ++i) c1[i] = -eng.h[i].a;
    LpResult r1 = solve_lp(a_eq, b_eq, a_le, b_le, c1);
    if (r1.status != LpResult::Status::Optimal) throw std::logic_error("initial LP not optimal");
    // Tiebreak stage: minimize the secondary component on the optimal face.
    QMat a_eq2(dim + 1, n);
    std::vector<Rat> b_eq2(dim + 1);
    for (size_t j = 0; j < dim; ++j) {
        for (size_t i = 0; i < n; ++i) a_eq2.at(j, i) = a_eq.at(j, i);
        b_eq2[j] = b_eq[j];
    }
    for (size_t i = 0; i < n; ++i) a_eq2.at(dim, i) = eng.h[i].a;
    b_eq2[dim] = -r1.value;
    std::vector<Rat> c2(n);
    for (size_t i = 0; i < n; ++i) c2[i] = -eng.h[i].b;
    LpResult r2 = solve_lp(a_eq2, b_eq2, a_le, b_le, c2);
    if (r2.status != LpResult::Status::Optimal) throw std::logic_error("tiebreak LP not optimal");

    std::vector<int> start;
    for (size_t i = 0; i < n; ++i)
        if (r2.x[i] > 0) start.push_back(static_cast<int>(i));
    if (static_cast<int>(start.size()) != r)
        throw GenericityFailure("initial point does not sit over a full simplex");

    // BFS over facet pivots, certifying every simplex.
    std::map<std::vector<int>, int> id_of;
    std::vector<Engine::SimplexData> data;
    std::vector<std::vector<int>> frontier;

    auto add = [&](std::vector<int> simplex) -> int {
        std::sort(simplex.begin(), simplex.end());
        auto it = id_of.find(simplex);
        if (it != id_of.end()) return it->second;
        Engine::SimplexData sd = eng.analyze(simplex);
        eng.certify(sd);
        int id = static_cast<int>(data.size());
        id_of[simplex] = id;
        data.push_back(std::move(sd));
        frontier.push_back(simplex);
        return id;
    };
    add(start);

    std::set<std::pair<int, int>> seen_edges;
    for (size_t head = 0; head < frontier.size(); ++head) {
        std::vector<int> simplex = frontier[head];
        int sid = id_of[simplex];
        const Engine::SimplexData sd = data[sid];  // copy: data may reallocate
        for (int exit_pos = 0; exit_pos < r; ++exit_pos) {
            // Pivot across the facet opposite simplex[exit_pos].
            int best = -1;
            Lex best_num{0, 0};
            Rat best_den;
            bool tie = false;
            for (size_t wi = 0; wi < n; ++wi) {
                const Rat& beta = sd.bary[wi][exit_pos];
                if (beta >= 0) continue;  // not beyond the facet
                Lex num = sd.deficit[wi];
                Rat den = -beta;
                if (best < 0) {
                    best = static_cast<int>(wi);
                    best_num = num;
                    best_den = den;
                    continue;
                }
                // Compare num/den vs best_num/best_den.
                Lex lhs = num.scaled(best_den), rhs = best_num.scaled(den);
                int cmp = (lhs - rhs).sign();
                if (cmp < 0) {
                    best = static_cast<int>(wi);
                    best_num = num;
                    best_den = den;
                    tie = false;
                } else if (cmp == 0) {
                    tie = true;
                }
            }
            if (best < 0) continue;  // boundary facet of the lower hull
            if (tie) throw GenericityFailure("pivot tie (heights not generic)");
            std::vector<int> next = sd.idx;
            next[exit_pos] = best;
            int nid = add(next);
            int a = std::min(sid, nid), b = std::max(sid, nid);
            if (seen_edges.insert({a, b}).second) {
                // Primary-flat iff the entering vertex has zero primary deficit.
                bool flat = sgn(sd.deficit[best].a) == 0;
                out.adjacency.push_back({a, b, flat});
            }
        }
    }

    out.simplices.resize(data.size());
    for (const auto& [simplex, id] : id_of) {
        Cell c;
        for (int i : simplex) c.push_back(domain[i]);
        out.simplices[id] = canon_cell(c);
    }
    return out;
}

std::vector<Cell> regular_subdivision(const Cell& domain, const HeightFunction& w, uint64_t seed) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        HeightFunction tie;
        Prng rng(seed + attempt * 1000003);
        for (VertexId v : domain)
            tie.set(v, Rat(static_cast<long>(rng.next_below(1u << 30)), 1));
        try {
            LowerHull hull =
                lower_hull_triangulation(domain, w, &tie, seed + attempt * 1000003);
            // Merge simplices across primary-flat facets.
            std::vector<int> parent(hull.simplices.size());
            for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
            std::function<int(int)> find = [&](int a) {
                while (parent[a] != a) a = parent[a] = parent[parent[a]];
                return a;
            };
            for (auto [i, j, flat] : hull.adjacency)
                if (flat) parent[find(i)] = find(j);
            std::map<int, Cell> cells;
            for (size_t i = 0; i < hull.simplices.size(); ++i) {
                Cell& c = cells[find(static_cast<int>(i))];
                c = cell_union(c, hull.simplices[i]);
            }
            std::vector<Cell> out;
            for (auto& [k, c] : cells) out.push_back(std::move(c));
            std::sort(out.begin(), out.end());
            return out;
        } catch (const GenericityFailure&) {
            continue;
        }
    }
    throw GenericityFailure("regular_subdivision: no generic tiebreak found");
}

Triangulation generic_triangulation(std::shared_ptr<const Configuration> cfg, const Cell& domain,
                                    uint64_t seed) {
    for (int attempt = 0; attempt < 32; ++attempt) {
        HeightFunction h;
        Prng rng(seed + attempt * 7919);
        for (VertexId v : domain)
            h.set(v, Rat(static_cast<long>(rng.next_below(1u << 30)), 1));
        try {
            LowerHull hull = lower_hull_triangulation(domain, h, nullptr, seed + attempt * 7919);
            return Triangulation(cfg, domain, std::move(hull.simplices));
        } catch (const GenericityFailure&) {
            continue;
        }
    }
    throw GenericityFailure("generic_triangulation: no generic heights found");
}

Cell tropical_type(const Cell& domain, const std::vector<Rat>& x, const HeightFunction& w) {
    std::map<int, std::vector<VertexId>> by_col;
    for (VertexId v : domain) by_col[vcol(v)].push_back(v);
    Cell out;
    for (const auto& [c, vs] : by_col) {
        std::optional<Rat> best;
        for (VertexId v : vs) {
            Rat val = x.at(vrow(v)) - w.at(v);
            if (!best || val > *best) best = val;
        }
        for (VertexId v : vs)
            if (x.at(vrow(v)) - w.at(v) == *best) out.push_back(v);
    }
    return canon_cell(out);
}

bool is_lower_cell(const Cell& domain, const HeightFunction& w, const Cell& cell) {
    if (cell.empty() || !cell_subset(cell, domain)) return false;
    // Functional a_row + b_col + t*height, t = 1 after normalization; ask for
    // equality on the cell and slack s > 0 elsewhere; maximize s.
    std::set<int> rowset, colset;
    for (VertexId v : domain) rowset.insert(vrow(v)), colset.insert(vcol(v));
    std::vector<int> rows(rowset.begin(), rowset.end()), cols(colset.begin(), colset.end());
    size_t nv = rows.size() + cols.size() + 1;  // + slack variable, constant absorbed in b
    auto ridx = [&](VertexId v) {
        return static_cast<size_t>(std::lower_bound(rows.begin(), rows.end(), vrow(v)) -
                                   rows.begin());
    };
    auto cidx = [&](VertexId v) {
        return rows.size() + static_cast<size_t>(std::lower_bound(cols.begin(), cols.end(),
                                                                  vcol(v)) -
                                                 cols.begin());
    };
    size_t slack = nv - 1;
    Cell outside = cell_minus(domain, cell);
    QMat a_eq(cell.size(), nv);
    std::vector<Rat> b_eq;
    for (size_t i = 0; i < cell.size(); ++i) {
        a_eq.at(i, ridx(cell[i])) = 1;
        a_eq.at(i, cidx(cell[i])) = 1;
        b_eq.push_back(-w.at(cell[i]));
    }
    // For outside w: a + b + height >= s, i.e. -(a+b) + s <= height; cap s.
    QMat a_le(outside.size() + 1, nv);
    std::vector<Rat> b_le;
    for (size_t i = 0; i < outside.size(); ++i) {
        a_le.at(i, ridx(outside[i])) = -1;
        a_le.at(i, cidx(outside[i])) = -1;
        a_le.at(i, slack) = 1;
        b_le.push_back(w.at(outside[i]));
    }
    a_le.at(outside.size(), slack) = 1;
    b_le.push_back(1);
    std::vector<Rat> c(nv, 0);
    c[slack] = 1;
    LpResult res = solve_lp(a_eq, b_eq, a_le, b_le, c);
    return res.status == LpResult::Status::Optimal && res.value > 0;
}

CircuitSide circuit_regular(const SignedCircuit& x, const HeightFunction& w) {
    Rat s = 0;
    for (VertexId v : x.plus) s += w.at(v);
    for (VertexId v : x.minus) s -= w.at(v);
    int sign = sgn(s);
    if (sign > 0) return CircuitSide::Plus;
    if (sign < 0) return CircuitSide::Minus;
    return CircuitSide::Trivial;
}

}  // namespace fliplab
