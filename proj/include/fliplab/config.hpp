#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fliplab/linalg.hpp"

namespace fliplab {

// A vertex of Delta^{m-1} x Delta^{n-1} is a (row, column) pair packed into
// one id. Rows are 0-based internally (JSON uses 1-based rows).
using VertexId = int32_t;

inline constexpr int kRowBits = 3;  // m <= 8 everywhere in this library

inline int vrow(VertexId v) { return v & ((1 << kRowBits) - 1); }
inline int vcol(VertexId v) { return v >> kRowBits; }
inline VertexId make_vertex(int row, int col) {
    return (static_cast<VertexId>(col) << kRowBits) | row;
}

// A cell is a sorted duplicate-free vertex list. Sortedness is the canonical
// form; every function here expects and preserves it.
using Cell = std::vector<VertexId>;

Cell canon_cell(Cell c);
bool cell_subset(const Cell& small, const Cell& big);
Cell cell_union(const Cell& a, const Cell& b);
Cell cell_minus(const Cell& a, const Cell& b);
Cell cell_intersect(const Cell& a, const Cell& b);
bool cell_contains_vertex(const Cell& c, VertexId v);

// Zonotopal column label: direction pair i<j (rows) and copy index r, with
// f^r_{ij} = f^{-r}_{ji} stored only in the canonical i<j form.
struct ZLabel {
    int i = 0, j = 0;
    long r = 0;
    bool operator==(const ZLabel& o) const { return i == o.i && j == o.j && r == o.r; }
};

struct Column {
    uint8_t row_mask = 0;  // bit k set = row k present
    std::optional<ZLabel> label;
};

// An immutable point configuration inside Delta^{m-1} x Delta^{n-1}: a list
// of columns, each with the subset of rows that are present. Frozen on
// construction.
class Configuration {
  public:
    Configuration(int m, std::vector<Column> cols);

    int m() const { return m_; }
    int ncols() const { return static_cast<int>(cols_.size()); }
    const Column& column(int c) const { return cols_[c]; }
    const std::vector<Column>& columns() const { return cols_; }

    bool has_vertex(VertexId v) const;
    const Cell& vertices() const { return verts_; }
    std::vector<int> rows_at(int c) const;

    // Column lookup by zonotopal label (canonical i<j form); -1 if absent.
    int column_by_label(int i, int j, long r) const;

    std::string to_json() const;
    static Configuration from_json(const std::string& text);

  private:
    int m_;
    std::vector<Column> cols_;
    Cell verts_;
};

// Product configuration Delta^{m-1} x Delta^{n-1} itself (all rows present
// in every column, no labels).
Configuration product_configuration(int m, int n);

// ---- The bipartite graph G(C) ----------------------------------------------

// G(C): minimal subgraph of K_{m,n} with edge set C. Row/column vertex lists
// carry global indices; adjacency is by local index into those lists.
struct CellGraph {
    std::vector<int> rows;  // sorted distinct row indices
    std::vector<int> cols;  // sorted distinct column indices
    // adj_rows[a] = list of (local col index, edge = VertexId); same for cols.
    std::vector<std::vector<std::pair<int, VertexId>>> adj_rows, adj_cols;

    int components() const;
    bool acyclic() const;
};

CellGraph bipartite_graph(const Cell& cell);

// rank(C) = #rows + #cols - #components of G(C). A cell is a simplex iff
// |C| = rank(C); conv(C) has affine dimension rank(C) - 1 for simplices.
int cell_rank(const Cell& cell);
bool is_simplex(const Cell& cell);

// ---- Circuits ---------------------------------------------------------------

// A circuit: support whose graph is a single cycle, split into the two
// alternating classes of the +/-1 affine dependence.
struct SignedCircuit {
    Cell support;
    Cell plus, minus;

    SignedCircuit reversed() const { return {support, minus, plus}; }
    bool operator==(const SignedCircuit& o) const {
        return support == o.support && plus == o.plus;
    }
};

struct NotACircuit : std::runtime_error {
    explicit NotACircuit(const std::string& w) : std::runtime_error(w) {}
};

// Default orientation: the alternation class containing the smallest vertex
// is labeled plus. Throws NotACircuit unless G(cycle) is one cycle covering
// the whole support.
SignedCircuit orient_circuit(const Cell& cycle);

// Same support, but the class containing `plus_member` is labeled plus.
SignedCircuit orient_circuit_with_plus(const Cell& cycle, VertexId plus_member);

// All circuits supported inside `cell` with at most max_size elements
// (max_size even, >= 4), each default-oriented, sorted by support.
std::vector<SignedCircuit> enumerate_circuits(const Cell& cell, int max_size);

// ---- Faces ------------------------------------------------------------------

// Weak ordering of the rows: ordered partition, earlier block = smaller.
struct WeakOrdering {
    std::vector<std::vector<int>> levels;
};

struct EmptyFace : std::runtime_error {
    explicit EmptyFace(const std::string& w) : std::runtime_error(w) {}
};

// The face of `domain` induced by `w` on the active columns: column c
// contributes min(<=_w, A_c) if active, nothing otherwise.
Cell face_from_weak_order(const Configuration& cfg, const Cell& domain, const WeakOrdering& w,
                          const std::vector<int>& active_cols);

// True iff `cell` lies in a proper face of conv(domain). Combinatorial
// criterion over weak orderings (every configuration here is a basic sum);
// cross-checked against the rational-LP route in the tests.
bool is_in_proper_face(const Cell& domain, const Cell& cell);

// True iff `cell` is exactly a face of conv(domain) (possibly improper).
bool is_face_of(const Cell& domain, const Cell& cell);

// All facets (maximal proper faces) of conv(domain). Candidates are
// two-block row splits and single-column drops; filtered to rank-1.
std::vector<Cell> facets_of(const Cell& domain);

// ---- Volume -----------------------------------------------------------------

// Normalized volume of a simplex relative to the difference lattice of
// `domain`: 1 for unimodular full-dimensional simplices, 0 if not
// full-dimensional. Exact integer computation via a lattice basis.
mpz_class normalized_volume(const Cell& domain, const Cell& simplex);

}  // namespace fliplab
