#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fliplab/config.hpp"

namespace fliplab {

struct CellNotInTriangulation : std::runtime_error {
    explicit CellNotInTriangulation(const std::string& w) : std::runtime_error(w) {}
};
struct NotAFace : std::runtime_error {
    explicit NotAFace(const std::string& w) : std::runtime_error(w) {}
};
struct PreconditionFailed : std::runtime_error {
    explicit PreconditionFailed(const std::string& w) : std::runtime_error(w) {}
};
struct InvalidFlip : std::runtime_error {
    explicit InvalidFlip(const std::string& w) : std::runtime_error(w) {}
};

// Validity per the two combinatorial conditions: (1) no circuit with its two
// parts split across two maximal simplices, (2) every facet of a maximal
// simplex is either on the boundary or shared by exactly one other. Above
// the full-check threshold condition 1 is sampled; the tier is recorded.
struct ValidationReport {
    enum class Tier { Full, Sampled };
    Tier tier = Tier::Full;
    bool simplices_ok = true;
    bool cond1_ok = true;
    bool cond2_ok = true;
    bool volume_ok = true;  // only meaningful when an expected volume was given
    size_t cond1_pairs_checked = 0;
    std::vector<std::string> violations;  // capped

    bool ok() const { return simplices_ok && cond1_ok && cond2_ok && volume_ok; }
};

struct ValidateOptions {
    // Full pairwise condition-1 up to this many maximal simplices.
    size_t full_tier_limit = 5000;
    size_t sample_pairs = 200000;
    uint64_t sample_seed = 1;
    std::optional<mpz_class> expected_volume;
};

// Condition-1 test for one pair: is there a circuit with one part in tau and
// the other in tau2? Exact and linear-time (directed cycle detection after
// contracting the shared forest).
bool opposing_circuit_pair(const Cell& tau, const Cell& tau2);

ValidationReport validate(const Cell& domain, const std::vector<Cell>& maximal,
                          const ValidateOptions& opt = {});

// A set of maximal simplices over a domain, with a vertex-star membership
// index. Immutable once built.
class Triangulation {
  public:
    // Validates unless check = false; throws std::runtime_error on failure.
    Triangulation(std::shared_ptr<const Configuration> cfg, Cell domain,
                  std::vector<Cell> maximal, bool check = true,
                  const ValidateOptions& opt = {});

    const Configuration& config() const { return *cfg_; }
    std::shared_ptr<const Configuration> config_ptr() const { return cfg_; }
    const Cell& domain() const { return domain_; }
    const std::vector<Cell>& maximal() const { return maximal_; }

    // Is sigma a face of some maximal simplex?
    bool contains(const Cell& sigma) const;
    std::vector<int> maximal_containing(const Cell& sigma) const;

    // Lexicographically sorted list of sorted maximal simplices.
    std::string canonical_key() const;

    const ValidationReport& report() const { return report_; }

  private:
    std::shared_ptr<const Configuration> cfg_;
    Cell domain_;
    std::vector<Cell> maximal_;
    std::unordered_map<VertexId, std::vector<int>> star_;
    ValidationReport report_;
};

// link_T(cell) = { C' : C' cap cell = empty, C' cup cell in T }, as the full
// set of cells. Throws CellNotInTriangulation.
std::vector<Cell> link(const Triangulation& t, const Cell& cell);

// Maximal elements of the link; enough to compare links and drive flips.
std::vector<Cell> link_maximal(const Triangulation& t, const Cell& cell);

// T[F] = { C in T : C subset of F } as a triangulation of F.
Triangulation restrict_to_face(const Triangulation& t, const Cell& face);

// Both triangulations of a circuit's support: first = cells not containing
// plus, second = cells not containing minus.
std::pair<Triangulation, Triangulation> circuit_triangulations(
    std::shared_ptr<const Configuration> cfg, const SignedCircuit& x);

// Maximal simplices of the "avoid this part" triangulation of a circuit.
std::vector<Cell> circuit_side_maximal(const SignedCircuit& x, bool avoid_plus);

// A flip replaces the side of `circuit` given by `from_plus` (true: the
// cells avoiding nothing... see below) joined with the common link.
// Convention: from_plus = true means the triangulation currently contains
// T_X^+ (all cells avoiding X^+) and the flip swaps it for T_X^-.
struct FlipDescriptor {
    SignedCircuit circuit;
    bool from_plus = true;
    std::vector<Cell> common_link;  // maximal elements, canonical order
};

// Criterion route: requires the avoided part's complement cell in T.
// from_plus = true requires X^- in T; flip exists iff no maximal simplex
// tau with X^- inside tau and |X cap tau| <= |X| - 2.
bool has_flip_on(const Triangulation& t, const SignedCircuit& x, bool from_plus);

// Link route: T_X^side fully contained and all its maximal simplices share
// one link.
std::optional<FlipDescriptor> detect_flip_by_links(const Triangulation& t,
                                                   const SignedCircuit& x, bool from_plus);

// revalidate = false skips the validity re-check of the result (used by bulk
// audits; the flip formula itself guarantees validity).
Triangulation apply_flip(const Triangulation& t, const FlipDescriptor& flip,
                         bool revalidate = true);

struct AllFlipsOptions {
    int exhaustive_vertex_limit = 40;  // exhaustive circuit enumeration below this
    int circuit_max_size = 16;
};

std::vector<FlipDescriptor> all_flips(const Triangulation& t, const AllFlipsOptions& opt = {});

// ---- ordered gluing ----------------------------------------------------------

struct OverlapViolation : std::runtime_error {
    explicit OverlapViolation(const std::string& w) : std::runtime_error(w) {}
};

// Ordered gluing of triangulations of cells that pairwise intersect, as
// graphs, in exactly one doubled column rho = {(e_i,f),(e_j,f)}. Produces a
// triangulation of the union containing every input.
Triangulation pseudoproduct(const std::vector<Triangulation>& parts, const Cell& rho);

// ---- flip graph -------------------------------------------------------------

struct FlipGraph {
    std::vector<std::string> keys;                 // node id -> canonical key
    std::vector<std::vector<Cell>> nodes;          // node id -> maximal simplices
    std::vector<std::pair<int, int>> edges;        // i < j
    bool exhausted = true;                         // false if the budget cut BFS short
};

FlipGraph flip_graph(const Triangulation& seed, size_t node_budget);

std::string flip_graph_dot(const FlipGraph& g);
std::string flip_graph_json(const FlipGraph& g);

// ---- property checkers ------------------------------------------------------

// Witness search: a cell tau in T containing sigma such that every column
// adjacent to G(sigma) in G(domain) is adjacent to G(sigma) in G(tau)
// (row_variant swaps the roles of rows and columns).
struct GrowWitness {
    Cell tau;
    bool satisfied = false;
};
GrowWitness property_grow(const Triangulation& t, const Cell& sigma, bool row_variant = false);

// No circuit (up to max_size) has both parts as cells of T.
bool property_circuitparts(const Triangulation& t, int max_size = 16);

// After a flip removing sigma (connected G(sigma)), sigma must contain a
// maximal simplex of the replaced side.
bool property_genshift(const Triangulation& before, const Triangulation& after,
                       const FlipDescriptor& flip, const Cell& sigma);

// ---- serialization ----------------------------------------------------------

std::string triangulation_jsonl(const Triangulation& t, const std::string& config_ref);
std::vector<Cell> parse_triangulation_jsonl(const std::string& text);

}  // namespace fliplab
