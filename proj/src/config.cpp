#include "fliplab/config.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <json.hpp>
#include <map>
#include <set>
#include <stdexcept>

namespace fliplab {

using nlohmann::json;

// ---- cells -------------------------------------------------------------------

Cell canon_cell(Cell c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

bool cell_subset(const Cell& small, const Cell& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

Cell cell_union(const Cell& a, const Cell& b) {
    Cell out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Cell cell_minus(const Cell& a, const Cell& b) {
    Cell out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

Cell cell_intersect(const Cell& a, const Cell& b) {
    Cell out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

bool cell_contains_vertex(const Cell& c, VertexId v) {
    return std::binary_search(c.begin(), c.end(), v);
}

// ---- Configuration -----------------------------------------------------------

Configuration::Configuration(int m, std::vector<Column> cols) : m_(m), cols_(std::move(cols)) {
    if (m < 1 || m > (1 << kRowBits)) throw std::invalid_argument("bad m");
    for (size_t c = 0; c < cols_.size(); ++c) {
        const Column& col = cols_[c];
        if (col.row_mask == 0) throw std::invalid_argument("empty column");
        if (col.row_mask >> m) throw std::invalid_argument("row out of range");
        if (col.label) {
            if (!(col.label->i < col.label->j)) throw std::invalid_argument("label not canonical");
            if (col.label->i < 0 || col.label->j >= m) throw std::invalid_argument("label row range");
        }
        for (int r = 0; r < m; ++r)
            if (col.row_mask & (1 << r)) verts_.push_back(make_vertex(r, static_cast<int>(c)));
    }
    std::sort(verts_.begin(), verts_.end());
    // Labels must be unique per column.
    std::set<std::tuple<int, int, long>> seen;
    for (const Column& col : cols_)
        if (col.label && !seen.insert({col.label->i, col.label->j, col.label->r}).second)
            throw std::invalid_argument("duplicate zonotopal label");
}

bool Configuration::has_vertex(VertexId v) const {
    int c = vcol(v), r = vrow(v);
    if (c < 0 || c >= ncols() || r < 0 || r >= m_) return false;
    return (cols_[c].row_mask >> r) & 1;
}

std::vector<int> Configuration::rows_at(int c) const {
    std::vector<int> out;
    for (int r = 0; r < m_; ++r)
        if (cols_[c].row_mask & (1 << r)) out.push_back(r);
    return out;
}

int Configuration::column_by_label(int i, int j, long r) const {
    for (int c = 0; c < ncols(); ++c) {
        const auto& l = cols_[c].label;
        if (l && l->i == i && l->j == j && l->r == r) return c;
    }
    return -1;
}

std::string Configuration::to_json() const {
    json j;
    j["m"] = m_;
    j["columns"] = json::array();
    for (const Column& col : cols_) {
        json jc;
        if (col.label)
            jc["label"] = {{"i", col.label->i + 1}, {"j", col.label->j + 1}, {"r", col.label->r}};
        else
            jc["label"] = nullptr;
        json rows = json::array();
        for (int r = 0; r < m_; ++r)
            if (col.row_mask & (1 << r)) rows.push_back(r + 1);
        jc["rows"] = rows;
        j["columns"].push_back(jc);
    }
    return j.dump(2);
}

Configuration Configuration::from_json(const std::string& text) {
    json j = json::parse(text);
    int m = j.at("m").get<int>();
    std::vector<Column> cols;
    for (const json& jc : j.at("columns")) {
        Column col;
        for (int r : jc.at("rows").get<std::vector<int>>()) {
            if (r < 1 || r > m) throw std::invalid_argument("row out of range in config json");
            col.row_mask |= (1 << (r - 1));
        }
        if (jc.contains("label") && !jc.at("label").is_null()) {
            ZLabel l;
            l.i = jc.at("label").at("i").get<int>() - 1;
            l.j = jc.at("label").at("j").get<int>() - 1;
            l.r = jc.at("label").at("r").get<long>();
            col.label = l;
        }
        cols.push_back(col);
    }
    return Configuration(m, std::move(cols));
}

Configuration product_configuration(int m, int n) {
    std::vector<Column> cols(n);
    for (Column& c : cols) c.row_mask = static_cast<uint8_t>((1 << m) - 1);
    return Configuration(m, std::move(cols));
}

// ---- graphs ------------------------------------------------------------------

CellGraph bipartite_graph(const Cell& cell) {
    CellGraph g;
    for (VertexId v : cell) {
        g.rows.push_back(vrow(v));
        g.cols.push_back(vcol(v));
    }
    std::sort(g.rows.begin(), g.rows.end());
    g.rows.erase(std::unique(g.rows.begin(), g.rows.end()), g.rows.end());
    std::sort(g.cols.begin(), g.cols.end());
    g.cols.erase(std::unique(g.cols.begin(), g.cols.end()), g.cols.end());
    g.adj_rows.resize(g.rows.size());
    g.adj_cols.resize(g.cols.size());
    for (VertexId v : cell) {
        int ri = static_cast<int>(std::lower_bound(g.rows.begin(), g.rows.end(), vrow(v)) -
                                  g.rows.begin());
        int ci = static_cast<int>(std::lower_bound(g.cols.begin(), g.cols.end(), vcol(v)) -
                                  g.cols.begin());
        g.adj_rows[ri].push_back({ci, v});
        g.adj_cols[ci].push_back({ri, v});
    }
    return g;
}

int CellGraph::components() const {
    size_t n = rows.size() + cols.size();
    if (n == 0) return 0;
    std::vector<int> comp(n, -1);
    int ncomp = 0;
    std::vector<size_t> stack;
    for (size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        stack.push_back(s);
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            if (u < rows.size()) {
                for (auto [ci, e] : adj_rows[u]) {
                    size_t w = rows.size() + ci;
                    if (comp[w] < 0) comp[w] = ncomp, stack.push_back(w);
                }
            } else {
                for (auto [ri, e] : adj_cols[u - rows.size()]) {
                    if (comp[ri] < 0) comp[ri] = ncomp, stack.push_back(static_cast<size_t>(ri));
                }
            }
        }
        ++ncomp;
    }
    return ncomp;
}

bool CellGraph::acyclic() const {
    size_t edges = 0;
    for (const auto& a : adj_rows) edges += a.size();
    return edges + components() == rows.size() + cols.size();
}

int cell_rank(const Cell& cell) {
    if (cell.empty()) return 0;
    CellGraph g = bipartite_graph(cell);
    return static_cast<int>(g.rows.size() + g.cols.size()) - g.components();
}

bool is_simplex(const Cell& cell) {
    return static_cast<int>(cell.size()) == cell_rank(cell);
}

// ---- circuits ----------------------------------------------------------------

SignedCircuit orient_circuit(const Cell& cycle) {
    if (cycle.empty()) throw NotACircuit("empty cell");
    return orient_circuit_with_plus(cycle, cycle.front());
}

SignedCircuit orient_circuit_with_plus(const Cell& cycle, VertexId plus_member) {
    CellGraph g = bipartite_graph(cycle);
    size_t nodes = g.rows.size() + g.cols.size();
    if (cycle.size() != nodes || g.components() != 1) throw NotACircuit("graph is not one cycle");
    for (const auto& a : g.adj_rows)
        if (a.size() != 2) throw NotACircuit("row degree != 2");
    for (const auto& a : g.adj_cols)
        if (a.size() != 2) throw NotACircuit("column degree != 2");
    if (!cell_contains_vertex(cycle, plus_member)) throw NotACircuit("plus anchor not in support");

    // Walk the cycle starting from the anchor edge, alternating classes.
    Cell cls[2];
    VertexId e = plus_member;
    bool at_row_next = true;  // next pivot node: the row of e
    int parity = 0;
    for (size_t step = 0; step < cycle.size(); ++step) {
        cls[parity].push_back(e);
        // Move through the next pivot node to the other incident edge.
        VertexId next = e;
        if (at_row_next) {
            int ri = static_cast<int>(std::lower_bound(g.rows.begin(), g.rows.end(), vrow(e)) -
                                      g.rows.begin());
            for (auto [ci, e2] : g.adj_rows[ri])
                if (e2 != e) next = e2;
        } else {
            int ci = static_cast<int>(std::lower_bound(g.cols.begin(), g.cols.end(), vcol(e)) -
                                      g.cols.begin());
            for (auto [ri, e2] : g.adj_cols[ci])
                if (e2 != e) next = e2;
        }
        e = next;
        at_row_next = !at_row_next;
        parity ^= 1;
    }
    if (e != plus_member) throw NotACircuit("walk did not close");
    SignedCircuit x{cycle, canon_cell(cls[0]), canon_cell(cls[1])};
    // The +/-1 vector on (plus, minus) must be an affine dependence: each row
    // and each column is balanced.
    std::map<int, int> rbal, cbal;
    for (VertexId v : x.plus) ++rbal[vrow(v)], ++cbal[vcol(v)];
    for (VertexId v : x.minus) --rbal[vrow(v)], --cbal[vcol(v)];
    for (auto& [k, v] : rbal)
        if (v != 0) throw NotACircuit("row balance failed");
    for (auto& [k, v] : cbal)
        if (v != 0) throw NotACircuit("column balance failed");
    return x;
}

std::vector<SignedCircuit> enumerate_circuits(const Cell& cell, int max_size) {
    if (max_size < 4 || max_size % 2 != 0) throw std::invalid_argument("max_size must be even >= 4");
    CellGraph g = bipartite_graph(cell);
    size_t nr = g.rows.size(), nodes = nr + g.cols.size();
    // Unified adjacency over node ids 0..nodes-1 (rows first).
    std::vector<std::vector<std::pair<size_t, VertexId>>> adj(nodes);
    for (size_t ri = 0; ri < nr; ++ri)
        for (auto [ci, e] : g.adj_rows[ri]) {
            adj[ri].push_back({nr + ci, e});
            adj[nr + ci].push_back({ri, e});
        }

    std::vector<SignedCircuit> out;
    std::vector<char> on_path(nodes, 0);
    std::vector<size_t> path;
    Cell edges;

    // Simple cycles with minimal node = start; each found once by requiring
    // the closing neighbor order path[1] < last node.
    auto dfs = [&](auto&& self, size_t start, size_t u) -> void {
        for (auto [w, e] : adj[u]) {
            if (w == start && edges.size() >= 3) {
                if (path.size() >= 2 && path[1] < u) continue;  // direction dedup
                edges.push_back(e);
                out.push_back(orient_circuit(canon_cell(edges)));
                edges.pop_back();
                continue;
            }
            if (w <= start || on_path[w]) continue;
            if (edges.size() + 1 >= static_cast<size_t>(max_size)) continue;
            on_path[w] = 1;
            path.push_back(w);
            edges.push_back(e);
            self(self, start, w);
            edges.pop_back();
            path.pop_back();
            on_path[w] = 0;
        }
    };
    for (size_t s = 0; s < nodes; ++s) {
        on_path[s] = 1;
        path.assign(1, s);
        edges.clear();
        dfs(dfs, s, s);
        on_path[s] = 0;
    }
    std::sort(out.begin(), out.end(),
              [](const SignedCircuit& a, const SignedCircuit& b) { return a.support < b.support; });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const SignedCircuit& a, const SignedCircuit& b) {
                              return a.support == b.support;
                          }),
              out.end());
    return out;
}

// ---- faces -------------------------------------------------------------------

Cell face_from_weak_order(const Configuration& cfg, const Cell& domain, const WeakOrdering& w,
                          const std::vector<int>& active_cols) {
    if (active_cols.empty()) throw EmptyFace("no active columns");
    std::vector<int> level(cfg.m(), -1);
    for (size_t l = 0; l < w.levels.size(); ++l)
        for (int r : w.levels[l]) {
            if (r < 0 || r >= cfg.m() || level[r] >= 0)
                throw std::invalid_argument("weak ordering is not a partition of the rows");
            level[r] = static_cast<int>(l);
        }
    for (int r = 0; r < cfg.m(); ++r)
        if (level[r] < 0) throw std::invalid_argument("weak ordering misses a row");

    // Rows of `domain` per column.
    std::map<int, std::vector<int>> rows_at;
    for (VertexId v : domain) rows_at[vcol(v)].push_back(vrow(v));

    Cell out;
    for (int c : active_cols) {
        auto it = rows_at.find(c);
        if (it == rows_at.end()) continue;
        int best = INT32_MAX;
        for (int r : it->second) best = std::min(best, level[r]);
        for (int r : it->second)
            if (level[r] == best) out.push_back(make_vertex(r, c));
    }
    return canon_cell(out);
}

namespace {

// Row-comparability closure induced by requiring the cell's rows to be
// minimal in every column of its support: arc i -> j means a_i <= a_j is
// forced. Returns reach as bitmasks over rows 0..m-1.
struct RowOrder {
    std::array<uint16_t, 16> reach{};  // reach[i] bit j: a_i <= a_j forced

    void add_arc(int i, int j) { reach[i] |= (1u << j); }

    void close(int m) {
        for (int i = 0; i < m; ++i) reach[i] |= (1u << i);
        for (int k = 0; k < m; ++k)
            for (int i = 0; i < m; ++i)
                if (reach[i] & (1u << k)) reach[i] |= reach[k];
    }
    bool same_scc(int i, int j) const {
        return (reach[i] & (1u << j)) && (reach[j] & (1u << i));
    }
};

struct ColRows {
    std::map<int, std::pair<uint16_t, uint16_t>> per_col;  // col -> (domain rows, cell rows)
};

ColRows split_rows(const Cell& domain, const Cell& cell) {
    ColRows cr;
    for (VertexId v : domain) cr.per_col[vcol(v)].first |= (1u << vrow(v));
    for (VertexId v : cell) cr.per_col[vcol(v)].second |= (1u << vrow(v));
    return cr;
}

RowOrder forced_order(const ColRows& cr, int m) {
    RowOrder ro;
    for (const auto& [c, masks] : cr.per_col) {
        auto [dom, cel] = masks;
        if (!cel) continue;
        for (int i = 0; i < m; ++i)
            if (cel & (1u << i))
                for (int j = 0; j < m; ++j)
                    if ((dom & (1u << j)) && j != i) ro.add_arc(i, j);
    }
    ro.close(m);
    return ro;
}

}  // namespace

bool is_in_proper_face(const Cell& domain, const Cell& cell) {
    if (cell.empty()) return !domain.empty();
    if (!cell_subset(cell, domain)) throw std::invalid_argument("cell not inside domain");
    ColRows cr = split_rows(domain, cell);
    for (const auto& [c, masks] : cr.per_col)
        if (masks.second == 0) return true;  // a column can be deactivated
    int m = 0;
    for (VertexId v : domain) m = std::max(m, vrow(v) + 1);
    RowOrder ro = forced_order(cr, m);
    for (const auto& [c, masks] : cr.per_col) {
        auto [dom, cel] = masks;
        int anchor = __builtin_ctz(cel);
        for (int j = 0; j < m; ++j)
            if ((dom & (1u << j)) && !ro.same_scc(anchor, j)) return true;
    }
    return false;
}

bool is_face_of(const Cell& domain, const Cell& cell) {
    if (cell.empty()) return true;
    if (!cell_subset(cell, domain)) return false;
    ColRows cr = split_rows(domain, cell);
    int m = 0;
    for (VertexId v : domain) m = std::max(m, vrow(v) + 1);
    RowOrder ro = forced_order(cr, m);
    for (const auto& [c, masks] : cr.per_col) {
        auto [dom, cel] = masks;
        if (!cel) continue;  // column deactivated
        int anchor = __builtin_ctz(cel);
        for (int j = 0; j < m; ++j)
            if ((dom & (1u << j)) && !(cel & (1u << j)) && ro.same_scc(anchor, j)) return false;
    }
    return true;
}

std::vector<Cell> facets_of(const Cell& domain) {
    int rank = cell_rank(domain);
    std::set<int> rowset, colset;
    for (VertexId v : domain) rowset.insert(vrow(v)), colset.insert(vcol(v));
    std::vector<int> rows(rowset.begin(), rowset.end());

    std::set<Cell> found;
    std::map<int, uint16_t> dom_rows;
    for (VertexId v : domain) dom_rows[vcol(v)] |= (1u << vrow(v));
    // Two-block row splits: lower block B; column keeps A_c cap B when nonempty.
    int nr = static_cast<int>(rows.size());
    for (int mask = 1; mask + 1 < (1 << nr); ++mask) {
        uint16_t lower = 0;
        for (int t = 0; t < nr; ++t)
            if (mask & (1 << t)) lower |= (1u << rows[t]);
        Cell f;
        for (VertexId v : domain) {
            uint16_t d = dom_rows[vcol(v)];
            uint16_t lo = d & lower;
            if (lo == 0 || (lo & (1u << vrow(v)))) f.push_back(v);
        }
        f = canon_cell(f);
        if (f != domain && cell_rank(f) == rank - 1) found.insert(f);
    }
    // Single-column drops.
    for (int c : colset) {
        Cell f;
        for (VertexId v : domain)
            if (vcol(v) != c) f.push_back(v);
        if (!f.empty() && cell_rank(f) == rank - 1) found.insert(f);
    }
    return {found.begin(), found.end()};
}

// ---- volume ------------------------------------------------------------------

namespace {

// Integer row echelon over Z (lattice-preserving row ops); returns basis rows.
std::vector<std::vector<mpz_class>> lattice_basis(std::vector<std::vector<mpz_class>> rows) {
    if (rows.empty()) return rows;
    size_t w = rows[0].size();
    size_t r = 0;
    for (size_t col = 0; col < w && r < rows.size(); ++col) {
        while (true) {
            size_t best = SIZE_MAX;
            for (size_t i = r; i < rows.size(); ++i)
                if (rows[i][col] != 0 &&
                    (best == SIZE_MAX || abs(rows[i][col]) < abs(rows[best][col])))
                    best = i;
            if (best == SIZE_MAX) break;
            std::swap(rows[r], rows[best]);
            bool clean = true;
            for (size_t i = r + 1; i < rows.size(); ++i) {
                if (rows[i][col] == 0) continue;
                mpz_class q = rows[i][col] / rows[r][col];  // truncated; euclid loop handles rest
                for (size_t j = 0; j < w; ++j) rows[i][j] -= q * rows[r][j];
                if (rows[i][col] != 0) clean = false;
            }
            if (clean) break;
        }
        if (rows[r][col] != 0) ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace

mpz_class normalized_volume(const Cell& domain, const Cell& simplex) {
    if (!is_simplex(simplex)) throw std::invalid_argument("normalized_volume of a non-simplex");
    if (simplex.empty()) return domain.size() <= 1 ? mpz_class(1) : mpz_class(0);
    int d = cell_rank(domain) - 1;
    if (static_cast<int>(simplex.size()) - 1 < d) return 0;

    // Compact coordinates over the rows/columns the domain uses.
    std::set<int> rowset, colset;
    for (VertexId v : domain) rowset.insert(vrow(v)), colset.insert(vcol(v));
    std::vector<int> rows(rowset.begin(), rowset.end()), cols(colset.begin(), colset.end());
    size_t w = rows.size() + cols.size();
    auto coord = [&](VertexId v) {
        std::vector<mpz_class> x(w, 0);
        x[std::lower_bound(rows.begin(), rows.end(), vrow(v)) - rows.begin()] = 1;
        x[rows.size() +
          (std::lower_bound(cols.begin(), cols.end(), vcol(v)) - cols.begin())] = 1;
        return x;
    };

    std::vector<std::vector<mpz_class>> diffs;
    std::vector<mpz_class> base = coord(domain.front());
    for (size_t i = 1; i < domain.size(); ++i) {
        std::vector<mpz_class> x = coord(domain[i]);
        for (size_t j = 0; j < w; ++j) x[j] -= base[j];
        diffs.push_back(std::move(x));
    }
    std::vector<std::vector<mpz_class>> basis = lattice_basis(std::move(diffs));
    if (static_cast<int>(basis.size()) != d) throw std::logic_error("lattice basis rank mismatch");

    // Express simplex differences in the lattice basis; must be integral.
    QMat a(w, basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < w; ++i) a.at(i, j) = Rat(basis[j][i]);
    QMat b(w, simplex.size() - 1);
    std::vector<mpz_class> sbase = coord(simplex.front());
    for (size_t k = 1; k < simplex.size(); ++k) {
        std::vector<mpz_class> x = coord(simplex[k]);
        for (size_t i = 0; i < w; ++i) b.at(i, k - 1) = Rat(x[i] - sbase[i]);
    }
    std::optional<QMat> sol = a.solve(b);
    if (!sol) throw std::logic_error("simplex not inside domain lattice span");
    QMat sq(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Rat& q = sol->at(i, j);
            if (q.get_den() != 1) throw std::logic_error("non-integral lattice coordinates");
            sq.at(i, j) = q;
        }
    Rat dv = sq.det();
    mpz_class out = dv.get_num();
    return out >= 0 ? out : mpz_class(-out);
}

}  // namespace fliplab
