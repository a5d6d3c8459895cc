#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "fliplab/regular.hpp"
#include "fliplab/triangulation.hpp"

namespace fliplab {

// Cyclic equivalence class (i1 ... ik) of distinct elements, stored rotated
// so the smallest entry comes first. Negation reverses the tuple.
class GammaClass {
  public:
    explicit GammaClass(std::vector<int> entries);

    const std::vector<int>& entries() const { return e_; }
    size_t size() const { return e_.size(); }
    GammaClass negated() const;
    bool contains(int x) const;

    bool operator==(const GammaClass& o) const { return e_ == o.e_; }
    bool operator!=(const GammaClass& o) const { return e_ != o.e_; }
    bool operator<(const GammaClass& o) const { return e_ < o.e_; }

    std::string str() const;  // "(123)", 1-based

  private:
    std::vector<int> e_;
};

namespace perm3 {

// The 8 elements of Gamma_4^3 in a fixed order.
const std::vector<GammaClass>& gamma43();
int gamma43_index(const GammaClass& g);

// o_gamma(S): the orientation gamma induces on the 3-subset S of {0..3}.
GammaClass o_map(const GammaClass& gamma, std::array<int, 3> s);

// Gamma_4^3(ijk): the four classes with o_gamma({i,j,k}) = (ijk).
std::vector<GammaClass> gamma43_with_orientation(const GammaClass& ijk);

// Generator pi_{(ab)} applied to one class.
GammaClass pi_apply(int a, int b, const GammaClass& gamma);

// Permutations of Gamma_4^3 by image table over gamma43() indices.
struct GroupElement {
    std::array<int8_t, 8> img;

    bool operator==(const GroupElement& o) const { return img == o.img; }
    bool operator<(const GroupElement& o) const { return img < o.img; }
    GammaClass apply(const GammaClass& g) const { return gamma43()[img[gamma43_index(g)]]; }
};

GroupElement identity_element();
GroupElement pi_element(int a, int b);
GroupElement compose(const GroupElement& f, const GroupElement& g);  // f after g

// The full group generated by the six pi_{(ab)}; computed once.
const std::vector<GroupElement>& group_closure();

struct GroupActionReport {
    bool involutions = false;
    bool abelian = false;
    bool transitive = false;
    bool sign_table = false;
    bool hl_orbits = false;
    size_t order = 0;
    std::vector<std::string> notes;

    bool ok() const { return involutions && abelian && transitive && sign_table && hl_orbits; }
};

GroupActionReport check_groupaction();

// Cayley-embedded permutohedron Pi^{m-1}: one column per pair (i<j), rows
// {i,j}, labeled with copy index 0.
Configuration build_permutohedron(int m);

// The circuit X_gamma of a 3-class in a permutohedron-labeled configuration
// with the written orientation: plus = {(e_i,f_(ij)), (e_j,f_(jk)), (e_k,f_(ki))}.
SignedCircuit circuit_X(const Configuration& cfg, const GammaClass& gamma);

// The regular triangulation T^gamma of Pi^3 from the 0/1 height that lifts
// the plus part of X_gamma.
Triangulation triangulation_T_gamma(std::shared_ptr<const Configuration> cfg,
                                    const GammaClass& gamma);

}  // namespace perm3
}  // namespace fliplab
