#pragma once

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fliplab/perm3.hpp"
#include "fliplab/prng.hpp"
#include "fliplab/triangulation.hpp"

namespace fliplab {
namespace bigzono {

struct RangeError : std::runtime_error {
    explicit RangeError(const std::string& w) : std::runtime_error(w) {}
};
struct XNotInDomain : std::runtime_error {
    explicit XNotInDomain(const std::string& w) : std::runtime_error(w) {}
};
struct GuardExceeded : std::runtime_error {
    explicit GuardExceeded(const std::string& w) : std::runtime_error(w) {}
};

// The 3-permutohedron with 2N+1 copies of each generating vector, as a
// labeled Cayley configuration: column (i<j, r), rows {i, j}.
struct ZonotopeInstance {
    long N = 0;
    std::shared_ptr<const Configuration> cfg;

    int column(int i, int j, long r) const;  // canonicalizes (j,i,-r)
    VertexId vert(int row, int i, int j, long r) const;
};

ZonotopeInstance make_instance(long N);

// One bit per direction copy: false = identity, true = pi_{(ij)}, with
// g^r_{ij} = g^{-r}_{ji} held in canonical i<j form.
struct GAssignment {
    long N = 0;
    std::string prng_id;
    std::string seed;
    std::vector<uint8_t> bits;  // dir_index(i<j) * (2N+1) + (r+N)

    bool bit(int i, int j, long r) const;
    void set_bit(int i, int j, long r, bool value);
};

GAssignment sample_g(uint64_t seed, long N);
GAssignment identity_g(long N);

// Lattice point of the cell complex, stored as offsets with minimum 0; only
// coordinate differences matter.
struct XPoint {
    std::array<long, 4> d{};

    long diff(int i, int j) const { return d[i] - d[j]; }
    bool operator<(const XPoint& o) const { return d < o.d; }
    bool operator==(const XPoint& o) const { return d == o.d; }
};

bool in_X(const XPoint& x, long N);
bool in_Xstar(const XPoint& x, long N);
std::vector<XPoint> enumerate_X(long N);

GammaClass gamma_of_x(const GAssignment& g, const XPoint& x);

// X^{rst}_{ijk}: the written relation starting (e_i, f^r_{ij}) - (e_j, ...).
SignedCircuit circuit_Xrst(const ZonotopeInstance& inst, int i, int j, int k, long r, long s,
                           long t);

Cell cell_C(const ZonotopeInstance& inst, const XPoint& x);
Cell pi_of_x(const ZonotopeInstance& inst, const XPoint& x);

// Membership of T^{rst}_{ijk} in the derived collection.
bool membership_C(const GAssignment& g, int i, int j, int k, long r, long s, long t);

// One oriented triangulation descriptor per circuit support, canonical
// rotation (smallest index first).
struct Member {
    std::array<int, 3> ijk{};
    std::array<long, 3> rst{};

    bool operator<(const Member& o) const { return std::tie(ijk, rst) < std::tie(o.ijk, o.rst); }
    bool operator==(const Member& o) const { return ijk == o.ijk && rst == o.rst; }
    std::string str() const;
};

Member canon_member(int i, int j, int k, long r, long s, long t);

struct CollectionC {
    long N = 0;
    std::vector<Member> members;  // sorted

    bool contains(int i, int j, int k, long r, long s, long t) const;
    bool contains(const Member& m) const;
};

CollectionC build_collection(const GAssignment& g);

struct CheckReport {
    bool pass = false;
    size_t checked = 0;
    size_t failed = 0;
    std::vector<std::string> failures;  // capped
};

// (A): every oriented triple and every r has some (s,t) with membership.
CheckReport check_condition_A(const CollectionC& c);

// (B): every member and every gamma in Gamma_4^3(ijk) is realized by some
// x in X* whose local class is gamma. Witness (u,v,w) triples for the
// gamma = (ijk) case are recorded.
struct ConditionBReport : CheckReport {
    std::map<Member, std::array<long, 3>> particular_witnesses;
};
ConditionBReport check_condition_B(const GAssignment& g, const CollectionC& c);

enum class RangeMode { Positive, Full };

// Members whose one level of linked witnesses already sits in the collection;
// a flip on such a member's circuit is impossible in any triangulation
// containing the collection.
CollectionC blocked_members(const CollectionC& c, RangeMode mode);

// Restriction of an assignment to the copies with |r| <= k: the window
// sub-instance spanned by the cells around x = 0.
GAssignment restrict_bits(const GAssignment& g, long k);

// Ensemble hypotheses: each member has linked witnesses (u = r+v, w = v-s)
// within the range. Also computes the largest self-supporting subcollection
// (members keep only witnesses inside the subcollection).
struct EnsembleReport : CheckReport {
    RangeMode mode = RangeMode::Full;
    CollectionC self_supporting;
};
EnsembleReport check_ensemble_hypotheses(const CollectionC& c, RangeMode mode);

// The assembled triangulation at small N: permutohedral cells triangulated
// by the class of gamma(x), boundary cells glued through their circuits.
Triangulation build_T_small(const ZonotopeInstance& inst, const GAssignment& g, long guard = 4);

// Is the oriented member triangulation contained in T?
bool member_in(const Triangulation& t, const ZonotopeInstance& inst, const Member& m);

struct ClosureAuditReport {
    bool precheck_ok = false;       // every protected member contained in T
    size_t protected_members = 0;   // members of the self-supporting subcollection
    size_t flips = 0;
    bool no_flip_on_protected = true;
    bool members_survive_flips = true;
    std::vector<std::string> failures;

    bool ok() const { return precheck_ok && no_flip_on_protected && members_survive_flips; }
};

// Audits flip closure of the set of triangulations containing the protected
// members: no flip reverses a protected member, and every one-flip neighbor
// still contains all of them.
ClosureAuditReport flip_closure_audit(const Triangulation& t, const ZonotopeInstance& inst,
                                      const CollectionC& protected_members);

// ---- certificates -------------------------------------------------------------

struct Certificate {
    GAssignment g;
    CollectionC collection;
    CheckReport cond_a;
    ConditionBReport cond_b;
    EnsembleReport ensemble_full;
    EnsembleReport ensemble_positive;

    bool pass() const { return cond_a.pass && cond_b.pass && ensemble_full.pass; }
    std::string to_json() const;
};

Certificate certify(const GAssignment& g);
std::optional<Certificate> certify_search(uint64_t seed0, long N, int retry_budget,
                                          int* retries_used = nullptr);

struct VerifyResult {
    bool schema_ok = false;
    bool consistent = false;  // stored collection/reports match recomputation
    bool pass = false;
    std::string detail;
};
VerifyResult verify_certificate_json(const std::string& text);

// Exhaustive search over all bit assignments at N = 1 for one whose full
// collection is self-supporting in the given range mode; used to pin a
// deterministic small-scale closed instance if one exists.
std::optional<GAssignment> search_small_scheme(RangeMode mode);

}  // namespace bigzono
}  // namespace fliplab
