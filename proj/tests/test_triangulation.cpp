#include <doctest.h>

#include <map>
#include <memory>
#include <set>

#include "fliplab/prng.hpp"
#include "fliplab/triangulation.hpp"

using namespace fliplab;

namespace {

Cell verts(std::initializer_list<std::pair<int, int>> rc) {
    Cell c;
    for (auto [r, col] : rc) c.push_back(make_vertex(r, col));
    return canon_cell(c);
}

std::shared_ptr<const Configuration> square_cfg() {
    return std::make_shared<Configuration>(product_configuration(2, 2));
}

// The two triangulations of the square.
Triangulation square_plus() {
    auto cfg = square_cfg();
    // Diagonal {(0,0),(1,1)} is cut: triangles avoid it as a full cell.
    return Triangulation(cfg, cfg->vertices(),
                         {verts({{0, 0}, {1, 0}, {0, 1}}), verts({{1, 0}, {0, 1}, {1, 1}})});
}

Triangulation square_minus() {
    auto cfg = square_cfg();
    return Triangulation(cfg, cfg->vertices(),
                         {verts({{0, 0}, {1, 0}, {1, 1}}), verts({{0, 0}, {0, 1}, {1, 1}})});
}

}  // namespace

TEST_CASE("validate accepts the square triangulations") {
    CHECK(square_plus().report().ok());
    CHECK(square_minus().report().ok());
}

TEST_CASE("validate rejects both diagonals together") {
    auto cfg = square_cfg();
    std::vector<Cell> bad = {verts({{0, 0}, {1, 0}, {0, 1}}), verts({{1, 0}, {0, 1}, {1, 1}}),
                             verts({{0, 0}, {1, 0}, {1, 1}}), verts({{0, 0}, {0, 1}, {1, 1}})};
    ValidationReport rep = validate(cfg->vertices(), bad);
    CHECK_FALSE(rep.ok());
    CHECK_FALSE(rep.cond1_ok);
}

TEST_CASE("opposing circuit pair detection") {
    Cell t1 = verts({{0, 0}, {1, 0}, {0, 1}});
    Cell t2 = verts({{1, 0}, {0, 1}, {1, 1}});
    Cell u1 = verts({{0, 0}, {1, 1}, {1, 0}});
    CHECK_FALSE(opposing_circuit_pair(t1, t2));  // share the cut diagonal
    CHECK(opposing_circuit_pair(t1, u1));        // opposite diagonals overlap
}

TEST_CASE("link") {
    Triangulation t = square_plus();
    // Link of a maximal simplex is the empty cell only.
    auto l = link(t, t.maximal()[0]);
    REQUIRE(l.size() == 1);
    CHECK(l[0].empty());

    // Link of the shared edge: the two opposite vertices.
    Cell edge = verts({{1, 0}, {0, 1}});
    auto le = link(t, edge);
    std::set<Cell> expect = {{}, verts({{0, 0}}), verts({{1, 1}})};
    CHECK(std::set<Cell>(le.begin(), le.end()) == expect);

    CHECK_THROWS_AS(link(t, verts({{0, 0}, {1, 1}})), CellNotInTriangulation);
}

TEST_CASE("restriction") {
    Triangulation t = square_plus();
    // Full domain: the triangulation itself.
    Triangulation r = restrict_to_face(t, t.domain());
    CHECK(r.canonical_key() == t.canonical_key());
    // An edge of the square.
    Cell edge = verts({{0, 0}, {1, 0}});
    Triangulation re = restrict_to_face(t, edge);
    REQUIRE(re.maximal().size() == 1);
    CHECK(re.maximal()[0] == edge);
    // A single vertex.
    Triangulation rv = restrict_to_face(t, verts({{0, 0}}));
    REQUIRE(rv.maximal().size() == 1);
    // Not a face.
    CHECK_THROWS_AS(restrict_to_face(t, verts({{0, 0}, {1, 1}})), NotAFace);
}

TEST_CASE("circuit triangulations") {
    auto cfg = square_cfg();
    SignedCircuit x = orient_circuit(cfg->vertices());
    auto [tp, tm] = circuit_triangulations(cfg, x);
    CHECK(tp.maximal().size() == x.plus.size());
    CHECK(tm.maximal().size() == x.minus.size());
    // The two sides are the two diagonal triangulations of the square.
    std::set<std::string> keys = {tp.canonical_key(), tm.canonical_key()};
    CHECK(keys.count(square_plus().canonical_key()) +
              keys.count(square_minus().canonical_key()) ==
          2);
}

TEST_CASE("flip on the square") {
    auto cfg = square_cfg();
    Triangulation t = square_plus();
    SignedCircuit x = orient_circuit(cfg->vertices());

    // Exactly one of the two directions applies.
    bool plus_in = t.contains(x.plus), minus_in = t.contains(x.minus);
    CHECK(plus_in != minus_in);
    bool from_plus = minus_in;  // the contained cell is the complement part

    CHECK(has_flip_on(t, x, from_plus));
    auto fd = detect_flip_by_links(t, x, from_plus);
    REQUIRE(fd.has_value());
    REQUIRE(fd->common_link.size() == 1);
    CHECK(fd->common_link[0].empty());

    Triangulation t2 = apply_flip(t, *fd);
    CHECK(t2.canonical_key() == square_minus().canonical_key());

    // Involution.
    auto back = detect_flip_by_links(t2, x, !from_plus);
    REQUIRE(back.has_value());
    CHECK(apply_flip(t2, *back).canonical_key() == t.canonical_key());

    // Wrong-direction precondition.
    CHECK_THROWS_AS(has_flip_on(t, x, !from_plus), PreconditionFailed);
}

TEST_CASE("all flips counts") {
    CHECK(all_flips(square_plus()).size() == 1);

    // Staircase triangulation of Delta^1 x Delta^2 (the prism) has 2 flips.
    auto cfg = std::make_shared<Configuration>(product_configuration(2, 3));
    std::vector<Cell> stairs = {verts({{0, 0}, {0, 1}, {0, 2}, {1, 2}}),
                                verts({{0, 0}, {0, 1}, {1, 1}, {1, 2}}),
                                verts({{0, 0}, {1, 0}, {1, 1}, {1, 2}})};
    Triangulation prism(cfg, cfg->vertices(), stairs);
    CHECK(all_flips(prism).size() == 2);

    // Cross-check candidate generation: exhaustive vs adjacent-union route.
    AllFlipsOptions adj_only;
    adj_only.exhaustive_vertex_limit = 0;
    auto a = all_flips(prism), b = all_flips(prism, adj_only);
    auto key = [](const FlipDescriptor& f) {
        return std::make_pair(f.circuit.support, f.from_plus ? f.circuit.plus : f.circuit.minus);
    };
    std::set<std::pair<Cell, Cell>> ka, kb;
    for (auto& f : a) ka.insert(key(f));
    for (auto& f : b) kb.insert(key(f));
    CHECK(ka == kb);
}

TEST_CASE("flip graph of small products") {
    FlipGraph g = flip_graph(square_plus(), 100);
    CHECK(g.exhausted);
    CHECK(g.keys.size() == 2);
    CHECK(g.edges.size() == 1);

    // Budget cutoff sets the flag.
    FlipGraph gb = flip_graph(square_plus(), 0);
    CHECK_FALSE(gb.exhausted);

    std::string dot = flip_graph_dot(g);
    CHECK(dot.find("n0 -- n1") != std::string::npos);
}

TEST_CASE("criterion agreement and involution on random flips") {
    // Delta^1 x Delta^2: walk the flip graph, cross-check both flip routes.
    auto cfg = std::make_shared<Configuration>(product_configuration(2, 3));
    std::vector<Cell> stairs = {verts({{0, 0}, {0, 1}, {0, 2}, {1, 2}}),
                                verts({{0, 0}, {0, 1}, {1, 1}, {1, 2}}),
                                verts({{0, 0}, {1, 0}, {1, 1}, {1, 2}})};
    Triangulation t(cfg, cfg->vertices(), stairs);
    Prng rng(5);
    for (int step = 0; step < 60; ++step) {
        for (const SignedCircuit& x : enumerate_circuits(cfg->vertices(), 8)) {
            for (bool from_plus : {true, false}) {
                const Cell& other = from_plus ? x.minus : x.plus;
                if (!t.contains(other)) continue;
                bool crit = has_flip_on(t, x, from_plus);
                bool link_route = detect_flip_by_links(t, x, from_plus).has_value();
                CHECK(crit == link_route);
            }
        }
        auto flips = all_flips(t);
        REQUIRE(!flips.empty());
        const FlipDescriptor& fd = flips[rng.next_below(flips.size())];
        Triangulation t2 = apply_flip(t, fd);
        // Involution and volume conservation.
        auto back = detect_flip_by_links(t2, fd.circuit, !fd.from_plus);
        REQUIRE(back.has_value());
        CHECK(apply_flip(t2, *back).canonical_key() == t.canonical_key());
        CHECK(t2.maximal().size() == t.maximal().size());

        // genshift over every removed connected cell.
        std::set<Cell> after_max(t2.maximal().begin(), t2.maximal().end());
        for (const Cell& m : t.maximal()) {
            if (after_max.count(m)) continue;
            for (uint32_t mask = 1; mask < (1u << m.size()); ++mask) {
                Cell sigma;
                for (size_t k = 0; k < m.size(); ++k)
                    if (mask & (1u << k)) sigma.push_back(m[k]);
                if (bipartite_graph(sigma).components() != 1) continue;
                if (t2.contains(sigma)) continue;
                CHECK(property_genshift(t, t2, fd, sigma));
            }
        }
        t = std::move(t2);
    }
}

TEST_CASE("property grow") {
    Triangulation t = square_plus();
    // Maximal simplex: tau = sigma.
    GrowWitness w = property_grow(t, t.maximal()[0]);
    CHECK(w.satisfied);
    CHECK(w.tau == t.maximal()[0]);
    // A vertex: some coface must pick up both adjacent columns.
    GrowWitness wv = property_grow(t, verts({{0, 0}}));
    CHECK(wv.satisfied);
    GrowWitness wr = property_grow(t, verts({{0, 0}}), true);
    CHECK(wr.satisfied);
}

TEST_CASE("property circuitparts") {
    CHECK(property_circuitparts(square_plus()));
}

TEST_CASE("jsonl round trip") {
    Triangulation t = square_plus();
    std::string s = triangulation_jsonl(t, "inline");
    auto cells = parse_triangulation_jsonl(s);
    CHECK(cells == t.maximal());
}
