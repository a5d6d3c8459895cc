#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fliplab/triangulation.hpp"

namespace fliplab {

// Exact-rational height function, total on the domain it is used with.
struct HeightFunction {
    std::map<VertexId, Rat> values;

    const Rat& at(VertexId v) const {
        auto it = values.find(v);
        if (it == values.end()) throw std::out_of_range("height missing for a vertex");
        return it->second;
    }
    void set(VertexId v, Rat q) { values[v] = std::move(q); }

    std::string to_json() const;
    static HeightFunction from_json(const std::string& text);
};

struct GenericityFailure : std::runtime_error {
    explicit GenericityFailure(const std::string& w) : std::runtime_error(w) {}
};

// Lower hull of the lifted domain under lexicographic heights (primary,
// tiebreak). Every pivot step re-certifies the lower-face property exactly,
// so a successful run is self-validating.
struct LowerHull {
    std::vector<Cell> simplices;
    // (i, j, primary_flat): simplices i and j share a facet; flat means the
    // primary height components lie on one affine functional across it.
    std::vector<std::tuple<int, int, bool>> adjacency;
};

LowerHull lower_hull_triangulation(const Cell& domain, const HeightFunction& primary,
                                   const HeightFunction* tiebreak, uint64_t point_salt = 0);

// Maximal cells of the regular subdivision S^w of the domain: lexicographic
// refinement merged across primary-flat facets. Retries fresh tiebreaks on
// genericity failures.
std::vector<Cell> regular_subdivision(const Cell& domain, const HeightFunction& w,
                                      uint64_t seed = 1);

// Regular triangulation from generic heights drawn from the seed; retries
// until the lower hull is simplicial. Deterministic for a fixed seed.
Triangulation generic_triangulation(std::shared_ptr<const Configuration> cfg, const Cell& domain,
                                    uint64_t seed);

// type(x, w) on the Cayley side: per column, the argmax rows of x_r - w(r,c)
// over the rows present in the domain.
Cell tropical_type(const Cell& domain, const std::vector<Rat>& x, const HeightFunction& w);

// Slack-maximization LP: is `cell` exactly the minimizer set of some lower
// functional on the lifted domain? The certifying route for lower cells.
bool is_lower_cell(const Cell& domain, const HeightFunction& w, const Cell& cell);

// Which triangulation of a circuit a height function induces.
enum class CircuitSide { Plus, Minus, Trivial };
CircuitSide circuit_regular(const SignedCircuit& x, const HeightFunction& w);

}  // namespace fliplab
