#include <doctest.h>

#include <map>
#include <set>

#include "fliplab/config.hpp"
#include "fliplab/lp.hpp"
#include "fliplab/prng.hpp"

using namespace fliplab;

namespace {

Cell verts(std::initializer_list<std::pair<int, int>> rc) {
    Cell c;
    for (auto [r, col] : rc) c.push_back(make_vertex(r, col));
    return canon_cell(c);
}

// Hexagon support of a size-6 circuit on rows {0,1,2}: columns (01),(12),(20).
Configuration tri_hexagon() {
    std::vector<Column> cols(3);
    cols[0].row_mask = 0b011;
    cols[1].row_mask = 0b110;
    cols[2].row_mask = 0b101;
    return Configuration(3, std::move(cols));
}

// LP route for is_in_proper_face: a functional a_row + b_col vanishing on the
// cell, nonnegative on the domain, positive somewhere.
bool in_proper_face_lp(const Cell& domain, const Cell& cell) {
    std::set<int> rowset, colset;
    for (VertexId v : domain) rowset.insert(vrow(v)), colset.insert(vcol(v));
    std::vector<int> rows(rowset.begin(), rowset.end()), cols(colset.begin(), colset.end());
    auto ridx = [&](int r) {
        return std::lower_bound(rows.begin(), rows.end(), r) - rows.begin();
    };
    auto cidx = [&](int c) {
        return rows.size() +
               static_cast<size_t>(std::lower_bound(cols.begin(), cols.end(), c) - cols.begin());
    };
    size_t nv = rows.size() + cols.size();
    QMat a_eq(cell.size(), nv);
    std::vector<Rat> b_eq(cell.size(), 0);
    for (size_t i = 0; i < cell.size(); ++i) {
        a_eq.at(i, ridx(vrow(cell[i]))) = 1;
        a_eq.at(i, cidx(vcol(cell[i]))) = 1;
    }
    // -phi(w) <= 0 and phi(w) <= 1 for domain vertices.
    QMat a_le(2 * domain.size(), nv);
    std::vector<Rat> b_le(2 * domain.size());
    for (size_t i = 0; i < domain.size(); ++i) {
        a_le.at(2 * i, ridx(vrow(domain[i]))) = -1;
        a_le.at(2 * i, cidx(vcol(domain[i]))) = -1;
        b_le[2 * i] = 0;
        a_le.at(2 * i + 1, ridx(vrow(domain[i]))) = 1;
        a_le.at(2 * i + 1, cidx(vcol(domain[i]))) = 1;
        b_le[2 * i + 1] = 1;
    }
    std::vector<Rat> c(nv, 0);
    for (VertexId w : domain) {
        c[ridx(vrow(w))] += 1;
        c[cidx(vcol(w))] += 1;
    }
    LpResult res = solve_lp(a_eq, b_eq, a_le, b_le, c);
    REQUIRE(res.status == LpResult::Status::Optimal);
    return res.value > 0;
}

}  // namespace

TEST_CASE("bipartite graph shapes") {
    CellGraph g0 = bipartite_graph({});
    CHECK(g0.rows.empty());
    CHECK(g0.cols.empty());
    CHECK(g0.components() == 0);

    Cell tree = verts({{0, 0}, {0, 1}, {1, 0}});
    CellGraph gt = bipartite_graph(tree);
    CHECK(gt.rows.size() == 2);
    CHECK(gt.cols.size() == 2);
    CHECK(gt.acyclic());

    Cell square = product_configuration(2, 2).vertices();
    CellGraph gs = bipartite_graph(square);
    CHECK(gs.rows.size() == 2);
    CHECK(gs.cols.size() == 2);
    CHECK_FALSE(gs.acyclic());
    CHECK(gs.components() == 1);
}

TEST_CASE("simplex detection") {
    CHECK(is_simplex({}));
    CHECK_FALSE(is_simplex(product_configuration(2, 2).vertices()));
    CHECK_FALSE(is_simplex(tri_hexagon().vertices()));
    CHECK(is_simplex(verts({{0, 0}, {0, 1}, {1, 0}})));
}

TEST_CASE("circuit orientation") {
    // Size-4 circuit: (e0,f0) - (e1,f0) + (e1,f1) - (e0,f1).
    Cell square = product_configuration(2, 2).vertices();
    SignedCircuit x = orient_circuit(square);
    CHECK(x.plus == verts({{0, 0}, {1, 1}}));
    CHECK(x.minus == verts({{1, 0}, {0, 1}}));
    // Determinism: same support always yields the identical orientation.
    CHECK(orient_circuit(square) == x);

    // Hexagon with the written relation (e_i,f_{(ij)}) - ... anchored at (e0,f_{(01)}).
    Cell hex = tri_hexagon().vertices();
    SignedCircuit h = orient_circuit_with_plus(hex, make_vertex(0, 0));
    CHECK(h.plus == verts({{0, 0}, {1, 1}, {2, 2}}));
    CHECK(h.minus == verts({{1, 0}, {2, 1}, {0, 2}}));

    Cell path = verts({{0, 0}, {1, 0}, {1, 1}});
    CHECK_THROWS_AS(orient_circuit(path), NotACircuit);
}

TEST_CASE("circuit enumeration") {
    CHECK(enumerate_circuits(verts({{0, 0}, {0, 1}, {1, 0}}), 8).empty());

    auto sq = enumerate_circuits(product_configuration(2, 2).vertices(), 8);
    REQUIRE(sq.size() == 1);
    CHECK(sq[0].support.size() == 4);

    // Delta^2 x Delta^1: brute-force oracle over all 4-subsets.
    Configuration p32 = product_configuration(3, 2);
    auto found = enumerate_circuits(p32.vertices(), 8);
    int oracle = 0;
    const Cell& all = p32.vertices();
    for (size_t a = 0; a < all.size(); ++a)
        for (size_t b = a + 1; b < all.size(); ++b)
            for (size_t c = b + 1; c < all.size(); ++c)
                for (size_t d = c + 1; d < all.size(); ++d) {
                    Cell cand = canon_cell({all[a], all[b], all[c], all[d]});
                    try {
                        orient_circuit(cand);
                        ++oracle;
                    } catch (const NotACircuit&) {
                    }
                }
    CHECK(oracle == 3);
    CHECK(found.size() == 3);
    for (const auto& x : found) CHECK(x.support.size() == 4);
}

TEST_CASE("circuit incidence balance is exact") {
    Configuration p33 = product_configuration(3, 3);
    for (const SignedCircuit& x : enumerate_circuits(p33.vertices(), 6)) {
        std::map<int, int> rb, cb;
        for (VertexId v : x.plus) ++rb[vrow(v)], ++cb[vcol(v)];
        for (VertexId v : x.minus) --rb[vrow(v)], --cb[vcol(v)];
        for (auto& [k, s] : rb) CHECK(s == 0);
        for (auto& [k, s] : cb) CHECK(s == 0);
        CHECK(x.plus.size() == x.minus.size());
    }
}

TEST_CASE("forest rank bound") {
    Configuration p33 = product_configuration(3, 3);
    Prng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Cell c;
        for (VertexId v : p33.vertices())
            if (rng.next_bit()) c.push_back(v);
        c = canon_cell(c);
        if (c.empty()) continue;
        CHECK(static_cast<int>(c.size()) >= cell_rank(c));
        CHECK((static_cast<int>(c.size()) == cell_rank(c)) == is_simplex(c));
    }
}

TEST_CASE("face from weak order") {
    Configuration p22 = product_configuration(2, 2);
    WeakOrdering trivial{{{0, 1}}};
    std::vector<int> all_cols{0, 1};
    CHECK(face_from_weak_order(p22, p22.vertices(), trivial, all_cols) == p22.vertices());
    CHECK_THROWS_AS(face_from_weak_order(p22, p22.vertices(), trivial, {}), EmptyFace);

    WeakOrdering w{{{0}, {1}}};
    Cell f = face_from_weak_order(p22, p22.vertices(), w, all_cols);
    CHECK(f == verts({{0, 0}, {0, 1}}));

    // Distinct weak orderings of the hexagon give distinct faces.
    Configuration hexc = tri_hexagon();
    std::set<Cell> faces;
    std::vector<WeakOrdering> ws = {{{{0}, {1}, {2}}}, {{{1}, {0}, {2}}}, {{{2}, {0, 1}}},
                                    {{{0, 1}, {2}}},   {{{1, 2}, {0}}},   {{{0}, {1, 2}}}};
    for (const auto& wo : ws) faces.insert(face_from_weak_order(hexc, hexc.vertices(), wo, {0, 1, 2}));
    CHECK(faces.size() == ws.size());
}

TEST_CASE("proper face membership") {
    Cell square = product_configuration(2, 2).vertices();
    CHECK_FALSE(is_in_proper_face(square, square));
    CHECK(is_in_proper_face(square, verts({{0, 0}})));
    // The diagonal is interior.
    CHECK_FALSE(is_in_proper_face(square, verts({{1, 0}, {0, 1}})));
    CHECK_FALSE(is_in_proper_face(square, verts({{0, 0}, {1, 1}})));
    // An edge of the square is a proper face.
    CHECK(is_in_proper_face(square, verts({{0, 0}, {1, 0}})));

    // Cross-check the combinatorial route against the LP route.
    Configuration p23 = product_configuration(2, 3);
    Prng rng(11);
    for (int trial = 0; trial < 150; ++trial) {
        Cell c;
        for (VertexId v : p23.vertices())
            if (rng.next_bit()) c.push_back(v);
        c = canon_cell(c);
        if (c.empty()) continue;
        CHECK(is_in_proper_face(p23.vertices(), c) == in_proper_face_lp(p23.vertices(), c));
    }
}

TEST_CASE("weak order faces are faces") {
    Configuration hexc = tri_hexagon();
    Prng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
        // Random weak ordering of 3 rows.
        std::vector<std::vector<int>> lv;
        for (int r = 0; r < 3; ++r) {
            if (lv.empty() || rng.next_bit())
                lv.push_back({r});
            else
                lv[rng.next_below(lv.size())].push_back(r);
        }
        Cell f = face_from_weak_order(hexc, hexc.vertices(), WeakOrdering{lv}, {0, 1, 2});
        CHECK(is_face_of(hexc.vertices(), f));
        if (f != hexc.vertices()) CHECK(is_in_proper_face(hexc.vertices(), f));
    }
}

TEST_CASE("facets of a circuit") {
    // A size-6 circuit has 9 facets: one per column drop, one per one-vs-rest
    // and rest-vs-one row split.
    Cell hex = tri_hexagon().vertices();
    auto fs = facets_of(hex);
    CHECK(fs.size() == 9);
    SignedCircuit x = orient_circuit(hex);
    for (const Cell& f : fs) {
        CHECK(f.size() == 4);
        CHECK_FALSE(cell_subset(x.plus, f));
        CHECK_FALSE(cell_subset(x.minus, f));
        CHECK(is_face_of(hex, f));
    }
    // The square: 4 facets (its edges).
    auto sqf = facets_of(product_configuration(2, 2).vertices());
    CHECK(sqf.size() == 4);
}

TEST_CASE("normalized volume") {
    Configuration p23 = product_configuration(2, 3);
    const Cell& dom = p23.vertices();
    // Spanning-tree simplices have volume 1.
    Cell tree = verts({{0, 0}, {0, 1}, {0, 2}, {1, 2}});
    CHECK(normalized_volume(dom, tree) == 1);
    // Non-full simplex: 0.
    CHECK(normalized_volume(dom, verts({{0, 0}, {0, 1}})) == 0);
    // Half-square triangle in the square.
    Cell sq = product_configuration(2, 2).vertices();
    CHECK(normalized_volume(sq, verts({{0, 0}, {1, 0}, {1, 1}})) == 1);

    // Every spanning-tree simplex of Delta^1 x Delta^2 has volume 1.
    auto all = dom;
    int count = 0;
    for (int mask = 0; mask < (1 << 6); ++mask) {
        Cell c;
        for (int t = 0; t < 6; ++t)
            if (mask & (1 << t)) c.push_back(all[t]);
        if (static_cast<int>(c.size()) != cell_rank(dom)) continue;
        if (!is_simplex(c)) continue;
        ++count;
        CHECK(normalized_volume(dom, c) == 1);
    }
    CHECK(count > 0);
}

TEST_CASE("config json round trip") {
    std::vector<Column> cols(2);
    cols[0].row_mask = 0b11;
    cols[0].label = ZLabel{0, 1, -3};
    cols[1].row_mask = 0b01;
    Configuration cfg(2, std::move(cols));
    Configuration back = Configuration::from_json(cfg.to_json());
    CHECK(back.m() == 2);
    CHECK(back.ncols() == 2);
    CHECK(back.column(0).label.has_value());
    CHECK(back.column(0).label->r == -3);
    CHECK(back.column_by_label(0, 1, -3) == 0);
    CHECK(back.column(1).row_mask == 0b01);
    CHECK_THROWS(Configuration::from_json("{\"m\": 2, \"columns\": [{\"rows\": []}]}"));
}

TEST_CASE("spanning tree count") {
    // K4: 16 spanning trees; with every edge tripled: 16 * 27.
    std::vector<std::vector<long>> k4(4, std::vector<long>(4, 1));
    for (int i = 0; i < 4; ++i) k4[i][i] = 0;
    CHECK(spanning_tree_count(k4) == 16);
    std::vector<std::vector<long>> k4t(4, std::vector<long>(4, 3));
    for (int i = 0; i < 4; ++i) k4t[i][i] = 0;
    CHECK(spanning_tree_count(k4t) == 16 * 27);
}
