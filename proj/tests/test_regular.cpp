#include <doctest.h>

#include <map>
#include <memory>
#include <set>

#include "fliplab/prng.hpp"
#include "fliplab/regular.hpp"

using namespace fliplab;

namespace {

Cell verts(std::initializer_list<std::pair<int, int>> rc) {
    Cell c;
    for (auto [r, col] : rc) c.push_back(make_vertex(r, col));
    return canon_cell(c);
}

// Staircase triangulation of Delta^{m-1} x Delta^{n-1}: one simplex per
// monotone lattice path. An independent construction used as a volume and
// validity oracle.
std::vector<Cell> staircase(int m, int n) {
    std::vector<Cell> out;
    // Paths from (0,0) to (m-1,n-1) stepping +1 in one coordinate.
    std::function<void(int, int, Cell&)> rec = [&](int r, int c, Cell& acc) {
        acc.push_back(make_vertex(r, c));
        if (r == m - 1 && c == n - 1) {
            out.push_back(canon_cell(acc));
        } else {
            if (r + 1 < m) rec(r + 1, c, acc);
            if (c + 1 < n) rec(r, c + 1, acc);
        }
        acc.pop_back();
    };
    Cell acc;
    rec(0, 0, acc);
    return out;
}

}  // namespace

TEST_CASE("staircase oracle is valid") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
        auto cfg = std::make_shared<Configuration>(product_configuration(m, n));
        Triangulation t(cfg, cfg->vertices(), staircase(m, n));
        CHECK(t.report().ok());
    }
}

TEST_CASE("generic triangulation of the square") {
    auto cfg = std::make_shared<Configuration>(product_configuration(2, 2));
    Triangulation t = generic_triangulation(cfg, cfg->vertices(), 42);
    CHECK(t.maximal().size() == 2);
    // Determinism.
    Triangulation t2 = generic_triangulation(cfg, cfg->vertices(), 42);
    CHECK(t.canonical_key() == t2.canonical_key());
}

TEST_CASE("generic triangulation counts match the staircase volume") {
    for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 3}, {2, 4}, {3, 3}}) {
        auto cfg = std::make_shared<Configuration>(product_configuration(m, n));
        size_t expect = staircase(m, n).size();
        for (uint64_t seed : {1u, 2u, 3u}) {
            Triangulation t = generic_triangulation(cfg, cfg->vertices(), seed);
            CHECK(t.maximal().size() == expect);
        }
    }
}

TEST_CASE("trivial regular subdivision") {
    auto cfg = product_configuration(2, 3);
    HeightFunction w;
    for (VertexId v : cfg.vertices()) w.set(v, 0);
    auto cells = regular_subdivision(cfg.vertices(), w, 5);
    REQUIRE(cells.size() == 1);
    CHECK(cells[0] == cfg.vertices());
}

TEST_CASE("circuit height rule on the square") {
    auto cfg = product_configuration(2, 2);
    SignedCircuit x = orient_circuit(cfg.vertices());
    // Raise one diagonal: the subdivision cuts along the other.
    HeightFunction w;
    for (VertexId v : cfg.vertices()) w.set(v, cell_contains_vertex(x.plus, v) ? 1 : 0);
    CHECK(circuit_regular(x, w) == CircuitSide::Plus);
    auto cells = regular_subdivision(cfg.vertices(), w, 9);
    std::set<Cell> got(cells.begin(), cells.end());
    std::set<Cell> expect;
    for (const Cell& c : circuit_side_maximal(x, true)) expect.insert(c);
    CHECK(got == expect);

    HeightFunction flat;
    for (VertexId v : cfg.vertices()) flat.set(v, 7);
    CHECK(circuit_regular(x, flat) == CircuitSide::Trivial);
}

TEST_CASE("circuit regular agrees with the lower-face computation") {
    // Random heights on 4- and 6-circuits; 200 trials split between sizes.
    Prng rng(2024);
    auto cfg4 = std::make_shared<Configuration>(product_configuration(2, 2));
    std::vector<Column> hexcols(3);
    hexcols[0].row_mask = 0b011;
    hexcols[1].row_mask = 0b110;
    hexcols[2].row_mask = 0b101;
    auto cfg6 = std::make_shared<Configuration>(Configuration(3, std::move(hexcols)));
    for (int trial = 0; trial < 200; ++trial) {
        bool big = trial % 2;
        const Configuration& cfg = big ? *cfg6 : *cfg4;
        SignedCircuit x = orient_circuit(cfg.vertices());
        HeightFunction w;
        for (VertexId v : cfg.vertices())
            w.set(v, Rat(rng.next_in(-20, 20), 1 + static_cast<long>(rng.next_below(5))));
        CircuitSide side = circuit_regular(x, w);
        auto cells = regular_subdivision(cfg.vertices(), w, 1000 + trial);
        std::set<Cell> got(cells.begin(), cells.end());
        if (side == CircuitSide::Trivial) {
            CHECK(got == std::set<Cell>{cfg.vertices()});
        } else {
            std::set<Cell> expect;
            for (const Cell& c : circuit_side_maximal(x, side == CircuitSide::Plus))
                expect.insert(c);
            CHECK(got == expect);
        }
    }
}

TEST_CASE("regular subdivision cells certify as lower cells") {
    auto cfg = product_configuration(3, 3);
    Prng rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        HeightFunction w;
        for (VertexId v : cfg.vertices()) w.set(v, Rat(rng.next_in(0, 3), 1));
        auto cells = regular_subdivision(cfg.vertices(), w, 50 + trial);
        for (const Cell& c : cells) CHECK(is_lower_cell(cfg.vertices(), w, c));
        // Volume: cells triangulate the product; refine each cell generically
        // and compare against the staircase count.
        size_t total = 0;
        auto cfgp = std::make_shared<Configuration>(product_configuration(3, 3));
        for (const Cell& c : cells)
            total += generic_triangulation(cfgp, c, 7).maximal().size();
        CHECK(total == staircase(3, 3).size());
    }
}

TEST_CASE("tropical types") {
    auto cfg = product_configuration(3, 3);
    HeightFunction zero;
    for (VertexId v : cfg.vertices()) zero.set(v, 0);
    // Strictly ordered x: one argmax row per column.
    Cell t = tropical_type(cfg.vertices(), {Rat(3), Rat(1), Rat(0)}, zero);
    CHECK(t == verts({{0, 0}, {0, 1}, {0, 2}}));

    // Every tropical type lies inside some cell of the regular subdivision,
    // and generic integral x with all-distinct coordinates gives simplices.
    Prng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        HeightFunction w;
        for (VertexId v : cfg.vertices()) w.set(v, Rat(rng.next_in(0, 4), 1));
        auto cells = regular_subdivision(cfg.vertices(), w, 300 + trial);
        for (int probe = 0; probe < 25; ++probe) {
            std::vector<Rat> x = {Rat(rng.next_in(-6, 6), 2), Rat(rng.next_in(-6, 6), 3),
                                  Rat(rng.next_in(-6, 6), 5)};
            Cell ty = tropical_type(cfg.vertices(), x, w);
            bool inside = false;
            for (const Cell& c : cells)
                if (cell_subset(ty, c)) inside = true;
            CHECK(inside);
        }
    }
}

TEST_CASE("heights json round trip") {
    HeightFunction w;
    w.set(make_vertex(0, 0), Rat(3, 4));
    w.set(make_vertex(2, 5), Rat(-7, 2));
    HeightFunction back = HeightFunction::from_json(w.to_json());
    CHECK(back.values == w.values);
}
