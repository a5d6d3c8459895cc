#include "fliplab/bigzono.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <json.hpp>
#include <sstream>

namespace fliplab {
namespace bigzono {

using nlohmann::json;
using perm3::GroupElement;

namespace {

int dir_index(int i, int j) {
    static const int tbl[4][4] = {{-1, 0, 1, 2}, {0, -1, 3, 4}, {1, 3, -1, 5}, {2, 4, 5, -1}};
    int v = tbl[i][j];
    if (v < 0) throw std::invalid_argument("bad direction pair");
    return v;
}

const GroupElement& pi_table(int i, int j) {
    static const std::array<GroupElement, 6> tbl = [] {
        std::array<GroupElement, 6> out{};
        for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b) out[dir_index(a, b)] = perm3::pi_element(a, b);
        return out;
    }();
    return tbl[dir_index(std::min(i, j), std::max(i, j))];
}

const GammaClass& base_class() {
    static const GammaClass g({0, 1, 2});
    return g;
}

}  // namespace

// ---- instance -------------------------------------------------------------------

ZonotopeInstance make_instance(long N) {
    if (N < 0) throw std::invalid_argument("N must be nonnegative");
    std::vector<Column> cols;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (long r = -N; r <= N; ++r) {
                Column c;
                c.row_mask = static_cast<uint8_t>((1 << i) | (1 << j));
                c.label = ZLabel{i, j, r};
                cols.push_back(c);
            }
    ZonotopeInstance inst;
    inst.N = N;
    inst.cfg = std::make_shared<Configuration>(4, std::move(cols));
    return inst;
}

int ZonotopeInstance::column(int i, int j, long r) const {
    if (i > j) {
        std::swap(i, j);
        r = -r;
    }
    if (r < -N || r > N) throw RangeError("copy index out of range");
    return dir_index(i, j) * static_cast<int>(2 * N + 1) + static_cast<int>(r + N);
}

VertexId ZonotopeInstance::vert(int row, int i, int j, long r) const {
    return make_vertex(row, column(i, j, r));
}

// ---- assignments ------------------------------------------------------------------

bool GAssignment::bit(int i, int j, long r) const {
    if (i > j) {
        std::swap(i, j);
        r = -r;
    }
    if (r < -N || r > N) throw RangeError("g bit out of range");
    return bits[dir_index(i, j) * (2 * N + 1) + (r + N)] != 0;
}

void GAssignment::set_bit(int i, int j, long r, bool value) {
    if (i > j) {
        std::swap(i, j);
        r = -r;
    }
    bits[dir_index(i, j) * (2 * N + 1) + (r + N)] = value ? 1 : 0;
}

GAssignment sample_g(uint64_t seed, long N) {
    GAssignment g;
    g.N = N;
    g.prng_id = Prng::kId;
    g.seed = std::to_string(seed);
    g.bits.assign(6 * (2 * N + 1), 0);
    Prng rng(seed);
    for (uint8_t& b : g.bits) b = rng.next_bit() ? 1 : 0;
    return g;
}

GAssignment identity_g(long N) {
    GAssignment g;
    g.N = N;
    g.prng_id = "constant";
    g.seed = "0";
    g.bits.assign(6 * (2 * N + 1), 0);
    return g;
}

// ---- lattice points ----------------------------------------------------------------

bool in_X(const XPoint& x, long N) {
    std::array<long, 4> s = x.d;
    std::sort(s.begin(), s.end());
    return s[0] == 0 && s[1] - s[0] <= N && s[2] - s[1] <= N && s[3] - s[2] <= N;
}

bool in_Xstar(const XPoint& x, long N) {
    if (!in_X(x, N)) return false;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (x.diff(i, j) > N) return false;
    return true;
}

std::vector<XPoint> enumerate_X(long N) {
    std::vector<XPoint> out;
    long top = 3 * N;
    XPoint x;
    for (x.d[0] = 0; x.d[0] <= top; ++x.d[0])
        for (x.d[1] = 0; x.d[1] <= top; ++x.d[1])
            for (x.d[2] = 0; x.d[2] <= top; ++x.d[2])
                for (x.d[3] = 0; x.d[3] <= top; ++x.d[3])
                    if (in_X(x, N)) out.push_back(x);
    return out;
}

GammaClass gamma_of_x(const GAssignment& g, const XPoint& x) {
    if (!in_Xstar(x, g.N)) throw XNotInDomain("x outside X*");
    GroupElement e = perm3::identity_element();
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (g.bit(i, j, x.diff(i, j))) e = perm3::compose(pi_table(i, j), e);
    return e.apply(base_class());
}

// ---- circuits ----------------------------------------------------------------------

SignedCircuit circuit_Xrst(const ZonotopeInstance& inst, int i, int j, int k, long r, long s,
                           long t) {
    if (i == j || j == k || i == k) throw std::invalid_argument("indices must be distinct");
    Cell support, plus;
    support.push_back(inst.vert(i, i, j, r));
    support.push_back(inst.vert(j, i, j, r));
    support.push_back(inst.vert(j, j, k, s));
    support.push_back(inst.vert(k, j, k, s));
    support.push_back(inst.vert(k, k, i, t));
    support.push_back(inst.vert(i, k, i, t));
    plus.push_back(inst.vert(i, i, j, r));
    plus.push_back(inst.vert(j, j, k, s));
    plus.push_back(inst.vert(k, k, i, t));
    support = canon_cell(support);
    plus = canon_cell(plus);
    SignedCircuit x = orient_circuit_with_plus(support, plus.front());
    if (x.plus != plus) throw std::logic_error("circuit orientation mismatch");
    return x;
}

Cell cell_C(const ZonotopeInstance& inst, const XPoint& x) {
    if (!in_X(x, inst.N)) throw XNotInDomain("x outside X");
    Cell out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            long hi = std::min(inst.N, x.diff(i, j));
            for (long r = -inst.N; r <= hi; ++r) out.push_back(inst.vert(i, i, j, r));
        }
    return canon_cell(out);
}

Cell pi_of_x(const ZonotopeInstance& inst, const XPoint& x) {
    if (!in_Xstar(x, inst.N)) throw XNotInDomain("x outside X*");
    Cell out;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            out.push_back(inst.vert(i, i, j, x.diff(i, j)));
            out.push_back(inst.vert(j, i, j, x.diff(i, j)));
        }
    return canon_cell(out);
}

// ---- membership and collections ------------------------------------------------------

bool membership_C(const GAssignment& g, int i, int j, int k, long r, long s, long t) {
    if (r + s + t != 0) throw RangeError("membership needs r+s+t = 0");
    long n = g.N;
    if (std::abs(r) > n || std::abs(s) > n || std::abs(t) > n) return false;
    GroupElement e = perm3::identity_element();
    if (g.bit(i, j, r)) e = perm3::compose(pi_table(i, j), e);
    if (g.bit(j, k, s)) e = perm3::compose(pi_table(j, k), e);
    if (g.bit(k, i, t)) e = perm3::compose(pi_table(k, i), e);
    GammaClass gamma = e.apply(base_class());
    return perm3::o_map(gamma, {i, j, k}) == GammaClass({i, j, k});
}

Member canon_member(int i, int j, int k, long r, long s, long t) {
    Member m{{i, j, k}, {r, s, t}};
    int rot = 0;
    if (m.ijk[1] < m.ijk[0] && m.ijk[1] < m.ijk[2]) rot = 1;
    if (m.ijk[2] < m.ijk[0] && m.ijk[2] < m.ijk[1]) rot = 2;
    std::rotate(m.ijk.begin(), m.ijk.begin() + rot, m.ijk.end());
    std::rotate(m.rst.begin(), m.rst.begin() + rot, m.rst.end());
    return m;
}

std::string Member::str() const {
    std::ostringstream os;
    os << '(' << ijk[0] + 1 << ijk[1] + 1 << ijk[2] + 1 << ")[" << rst[0] << ',' << rst[1] << ','
       << rst[2] << ']';
    return os.str();
}

bool CollectionC::contains(int i, int j, int k, long r, long s, long t) const {
    return contains(canon_member(i, j, k, r, s, t));
}

bool CollectionC::contains(const Member& m) const {
    return std::binary_search(members.begin(), members.end(), m);
}

CollectionC build_collection(const GAssignment& g) {
    CollectionC c;
    c.N = g.N;
    for (const GammaClass& cls : perm3::gamma43()) {
        int i = cls.entries()[0], j = cls.entries()[1], k = cls.entries()[2];
        for (long r = -g.N; r <= g.N; ++r)
            for (long s = -g.N; s <= g.N; ++s) {
                long t = -r - s;
                if (t < -g.N || t > g.N) continue;
                if (membership_C(g, i, j, k, r, s, t))
                    c.members.push_back(canon_member(i, j, k, r, s, t));
            }
    }
    std::sort(c.members.begin(), c.members.end());
    return c;
}

// ---- condition checks -----------------------------------------------------------------

namespace {

void fail_note(CheckReport& rep, const std::string& msg) {
    ++rep.failed;
    if (rep.failures.size() < 24) rep.failures.push_back(msg);
}

}  // namespace

CheckReport check_condition_A(const CollectionC& c) {
    CheckReport rep;
    long n = c.N;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                if (i == j || j == k || i == k) continue;
                for (long r = -n; r <= n; ++r) {
                    ++rep.checked;
                    bool found = false;
                    for (long s = -n; s <= n && !found; ++s) {
                        long t = -r - s;
                        if (t < -n || t > n) continue;
                        if (c.contains(i, j, k, r, s, t)) found = true;
                    }
                    if (!found)
                        fail_note(rep, "no (s,t) for (" + std::to_string(i + 1) +
                                           std::to_string(j + 1) + std::to_string(k + 1) +
                                           "), r=" + std::to_string(r));
                }
            }
    rep.pass = rep.failed == 0;
    return rep;
}

ConditionBReport check_condition_B(const GAssignment& g, const CollectionC& c) {
    ConditionBReport rep;
    long n = g.N;
    for (const Member& m : c.members) {
        int i = m.ijk[0], j = m.ijk[1], k = m.ijk[2];
        int l = 6 - i - j - k;
        long r = m.rst[0], s = m.rst[1];
        GammaClass ijk({i, j, k});
        for (const GammaClass& gamma : perm3::gamma43_with_orientation(ijk)) {
            ++rep.checked;
            long lo = std::max({-n, r - n, r + s - n});
            long hi = std::min({n, r + n, r + s + n});
            bool found = false;
            for (long cval = lo; cval <= hi && !found; ++cval) {
                XPoint x;
                x.d[i] = cval;
                x.d[j] = cval - r;
                x.d[k] = cval - r - s;
                x.d[l] = 0;
                long mn = *std::min_element(x.d.begin(), x.d.end());
                for (long& v : x.d) v -= mn;
                if (!in_Xstar(x, n)) continue;
                if (gamma_of_x(g, x) == gamma) {
                    found = true;
                    if (gamma == ijk)
                        rep.particular_witnesses[m] = {cval, cval - r, cval - r - s};
                }
            }
            if (!found) fail_note(rep, "no x for member " + m.str() + " gamma " + gamma.str());
        }
    }
    rep.pass = rep.failed == 0;
    return rep;
}

namespace {

// Does the member have a full linked witness triple inside the pool?
// u = r+v and w = v-s are forced by the sum-zero constraint on members.
bool member_has_witness(const Member& m, const std::set<Member>& pool, long n, RangeMode mode) {
    long lo = mode == RangeMode::Positive ? 1 : -n;
    long hi = n;
    int i = m.ijk[0], j = m.ijk[1], k = m.ijk[2];
    int l = 6 - i - j - k;
    long r = m.rst[0], s = m.rst[1], t = m.rst[2];
    for (long v = lo; v <= hi; ++v) {
        long u = r + v, w = v - s;
        if (u < lo || u > hi || w < lo || w > hi) continue;
        if (pool.count(canon_member(i, j, l, r, v, -u)) &&
            pool.count(canon_member(j, k, l, s, w, -v)) &&
            pool.count(canon_member(k, i, l, t, u, -w)))
            return true;
    }
    return false;
}

}  // namespace

EnsembleReport check_ensemble_hypotheses(const CollectionC& c, RangeMode mode) {
    EnsembleReport rep;
    rep.mode = mode;
    long n = c.N;
    std::set<Member> alive(c.members.begin(), c.members.end());

    for (const Member& m : c.members) {
        ++rep.checked;
        if (!member_has_witness(m, alive, n, mode))
            fail_note(rep, "no (u,v,w) for member " + m.str());
    }
    rep.pass = rep.failed == 0;

    // Greatest self-supporting subcollection.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Member> drop;
        for (const Member& m : alive)
            if (!member_has_witness(m, alive, n, mode)) drop.push_back(m);
        for (const Member& m : drop) {
            alive.erase(m);
            changed = true;
        }
    }
    rep.self_supporting.N = n;
    rep.self_supporting.members.assign(alive.begin(), alive.end());
    return rep;
}

CollectionC blocked_members(const CollectionC& c, RangeMode mode) {
    std::set<Member> pool(c.members.begin(), c.members.end());
    CollectionC out;
    out.N = c.N;
    for (const Member& m : c.members)
        if (member_has_witness(m, pool, c.N, mode)) out.members.push_back(m);
    return out;
}

GAssignment restrict_bits(const GAssignment& g, long k) {
    if (k > g.N) throw std::invalid_argument("window larger than instance");
    GAssignment out = identity_g(k);
    out.prng_id = g.prng_id;
    out.seed = g.seed + "#window" + std::to_string(k);
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            for (long r = -k; r <= k; ++r) out.set_bit(i, j, r, g.bit(i, j, r));
    return out;
}

// ---- assembly --------------------------------------------------------------------------

namespace {

// The eight permutohedral triangulations as combinatorial tables over the
// pair-labeled 3-permutohedron.
const std::vector<std::vector<Cell>>& t_gamma_tables() {
    static const std::vector<std::vector<Cell>> tables = [] {
        auto cfg = std::make_shared<Configuration>(perm3::build_permutohedron(4));
        std::vector<std::vector<Cell>> out;
        for (const GammaClass& g : perm3::gamma43())
            out.push_back(perm3::triangulation_T_gamma(cfg, g).maximal());
        return out;
    }();
    return tables;
}

// Maps a cell of the unit permutohedron into the instance at offset x.
Cell map_pi3_cell(const ZonotopeInstance& inst, const Configuration& pi3, const XPoint& x,
                  const Cell& cell) {
    Cell out;
    for (VertexId v : cell) {
        const ZLabel& l = *pi3.column(vcol(v)).label;
        out.push_back(inst.vert(vrow(v), l.i, l.j, x.diff(l.i, l.j)));
    }
    return canon_cell(out);
}

}  // namespace

Triangulation build_T_small(const ZonotopeInstance& inst, const GAssignment& g, long guard) {
    if (inst.N > guard) throw GuardExceeded("instance too large to materialize");
    if (g.N != inst.N) throw std::invalid_argument("assignment/instance size mismatch");
    static const Configuration pi3 = perm3::build_permutohedron(4);

    std::vector<Cell> all;
    for (const XPoint& x : enumerate_X(inst.N)) {
        Cell c = cell_C(inst, x);
        std::vector<Cell> complex_max;  // triangulation of the circuit part
        Cell circuit_part;

        if (in_Xstar(x, inst.N)) {
            circuit_part = pi_of_x(inst, x);
            int gi = perm3::gamma43_index(gamma_of_x(g, x));
            for (const Cell& m : t_gamma_tables()[gi])
                complex_max.push_back(map_pi3_cell(inst, pi3, x, m));
        } else {
            // Doubled directions form at most two triangles; triangulate
            // their circuits by collection membership and glue.
            std::vector<std::array<int, 3>> triangles;
            auto doubled = [&](int a, int b) { return std::abs(x.diff(a, b)) <= inst.N; };
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b)
                    for (int d = b + 1; d < 4; ++d)
                        if (doubled(a, b) && doubled(b, d) && doubled(a, d))
                            triangles.push_back({a, b, d});
            if (triangles.size() > 2) throw std::logic_error("unexpected cell structure");

            std::vector<Triangulation> parts;
            for (const auto& tri : triangles) {
                int i = tri[0], j = tri[1], k = tri[2];
                long r = x.diff(i, j), s = x.diff(j, k), t = x.diff(k, i);
                SignedCircuit cx = circuit_Xrst(inst, i, j, k, r, s, t);
                bool plus_side = membership_C(g, i, j, k, r, s, t);
                parts.emplace_back(inst.cfg, cx.support, circuit_side_maximal(cx, plus_side));
                circuit_part = cell_union(circuit_part, cx.support);
            }
            if (parts.empty()) {
                if (!is_simplex(c)) throw std::logic_error("acyclic cell is not a simplex");
                all.push_back(c);
                continue;
            }
            if (parts.size() == 1) {
                complex_max = parts[0].maximal();
            } else {
                Cell rho = cell_intersect(parts[0].domain(), parts[1].domain());
                Triangulation glued = pseudoproduct(parts, rho);
                complex_max = glued.maximal();
                circuit_part = glued.domain();
            }
        }

        Cell rest = cell_minus(c, circuit_part);
        if (cell_rank(c) != cell_rank(circuit_part) + static_cast<int>(rest.size()))
            throw std::logic_error("independent part fails the rank check");
        for (const Cell& m : complex_max) all.push_back(cell_union(m, rest));
    }

    ValidateOptions opt;
    opt.expected_volume = mpz_class(16) * mpz_class(2 * inst.N + 1) * mpz_class(2 * inst.N + 1) *
                          mpz_class(2 * inst.N + 1);
    return Triangulation(inst.cfg, inst.cfg->vertices(), std::move(all), true, opt);
}

bool member_in(const Triangulation& t, const ZonotopeInstance& inst, const Member& m) {
    SignedCircuit x =
        circuit_Xrst(inst, m.ijk[0], m.ijk[1], m.ijk[2], m.rst[0], m.rst[1], m.rst[2]);
    for (const Cell& top : circuit_side_maximal(x, true))
        if (!t.contains(top)) return false;
    return true;
}

ClosureAuditReport flip_closure_audit(const Triangulation& t, const ZonotopeInstance& inst,
                                      const CollectionC& protected_members) {
    ClosureAuditReport rep;
    rep.protected_members = protected_members.members.size();

    rep.precheck_ok = true;
    for (const Member& m : protected_members.members)
        if (!member_in(t, inst, m)) {
            rep.precheck_ok = false;
            rep.failures.push_back("member not contained: " + m.str());
        }

    std::map<Cell, Member> support_of;
    for (const Member& m : protected_members.members) {
        SignedCircuit x =
            circuit_Xrst(inst, m.ijk[0], m.ijk[1], m.ijk[2], m.rst[0], m.rst[1], m.rst[2]);
        support_of.insert({x.support, m});
    }

    for (const FlipDescriptor& fd : all_flips(t)) {
        ++rep.flips;
        auto it = support_of.find(fd.circuit.support);
        if (it != support_of.end()) {
            // The removed side must not be the protected plus side.
            SignedCircuit paper = circuit_Xrst(inst, it->second.ijk[0], it->second.ijk[1],
                                               it->second.ijk[2], it->second.rst[0],
                                               it->second.rst[1], it->second.rst[2]);
            const Cell& removed = fd.from_plus ? fd.circuit.plus : fd.circuit.minus;
            if (removed == paper.plus) {
                rep.no_flip_on_protected = false;
                rep.failures.push_back("flip reverses protected member " + it->second.str());
                continue;
            }
        }
        Triangulation next = apply_flip(t, fd, /*revalidate=*/false);
        for (const Member& m : protected_members.members)
            if (!member_in(next, inst, m)) {
                rep.members_survive_flips = false;
                rep.failures.push_back("flip drops member " + m.str());
            }
    }
    return rep;
}

// ---- certificates -------------------------------------------------------------------------

namespace {

json report_json(const CheckReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["checked"] = rep.checked;
    j["failed"] = rep.failed;
    j["failures"] = rep.failures;
    return j;
}

json ensemble_json(const EnsembleReport& rep) {
    json j = report_json(rep);
    j["self_supporting_size"] = rep.self_supporting.members.size();
    return j;
}

}  // namespace

std::string Certificate::to_json() const {
    json j;
    j["N"] = g.N;
    j["prng"] = {{"id", g.prng_id}, {"seed", g.seed}};
    json bits = json::object();
    for (int i = 0; i < 4; ++i)
        for (int jj = i + 1; jj < 4; ++jj)
            for (long r = -g.N; r <= g.N; ++r) {
                std::string key = std::to_string(i + 1) + "," + std::to_string(jj + 1) + "," +
                                  std::to_string(r);
                bits[key] = g.bit(i, jj, r) ? 1 : 0;
            }
    j["g_bits"] = bits;
    json coll = json::array();
    for (const Member& m : collection.members)
        coll.push_back({m.ijk[0] + 1, m.ijk[1] + 1, m.ijk[2] + 1, m.rst[0], m.rst[1], m.rst[2]});
    j["collection"] = coll;
    json checks;
    checks["A"] = report_json(cond_a);
    json b = report_json(cond_b);
    b["particular_witnesses"] = cond_b.particular_witnesses.size();
    checks["B"] = b;
    checks["ensemble"] = {{"full", ensemble_json(ensemble_full)},
                          {"positive", ensemble_json(ensemble_positive)}};
    checks["range_mode"] = "both";
    j["checks"] = checks;
    return j.dump(2);
}

Certificate certify(const GAssignment& g) {
    Certificate cert;
    cert.g = g;
    cert.collection = build_collection(g);
    cert.cond_a = check_condition_A(cert.collection);
    cert.cond_b = check_condition_B(g, cert.collection);
    cert.ensemble_full = check_ensemble_hypotheses(cert.collection, RangeMode::Full);
    cert.ensemble_positive = check_ensemble_hypotheses(cert.collection, RangeMode::Positive);
    return cert;
}

std::optional<Certificate> certify_search(uint64_t seed0, long N, int retry_budget,
                                          int* retries_used) {
    for (int attempt = 0; attempt < retry_budget; ++attempt) {
        Certificate cert = certify(sample_g(seed0 + attempt, N));
        if (retries_used) *retries_used = attempt + 1;
        if (cert.pass()) return cert;
    }
    return std::nullopt;
}

VerifyResult verify_certificate_json(const std::string& text) {
    VerifyResult out;
    GAssignment g;
    json stored;
    try {
        stored = json::parse(text);
        g.N = stored.at("N").get<long>();
        g.prng_id = stored.at("prng").at("id").get<std::string>();
        g.seed = stored.at("prng").at("seed").get<std::string>();
        g.bits.assign(6 * (2 * g.N + 1), 0);
        const json& bits = stored.at("g_bits");
        size_t seen = 0;
        for (auto it = bits.begin(); it != bits.end(); ++it) {
            int i, j;
            long r;
            if (sscanf(it.key().c_str(), "%d,%d,%ld", &i, &j, &r) != 3)
                throw std::invalid_argument("bad g_bits key");
            g.set_bit(i - 1, j - 1, r, it.value().get<int>() != 0);
            ++seen;
        }
        if (seen != g.bits.size()) throw std::invalid_argument("wrong number of g bits");
        if (!stored.contains("collection") || !stored.at("checks").contains("A") ||
            !stored.at("checks").contains("B") || !stored.at("checks").contains("ensemble") ||
            !stored.at("checks").contains("range_mode"))
            throw std::invalid_argument("missing fields");
    } catch (const std::exception& e) {
        out.detail = std::string("schema: ") + e.what();
        return out;
    }
    out.schema_ok = true;

    Certificate fresh = certify(g);
    // Stored collection must match the recomputation bit for bit.
    std::vector<Member> stored_members;
    for (const json& e : stored.at("collection")) {
        stored_members.push_back(canon_member(e.at(0).get<int>() - 1, e.at(1).get<int>() - 1,
                                              e.at(2).get<int>() - 1, e.at(3).get<long>(),
                                              e.at(4).get<long>(), e.at(5).get<long>()));
    }
    std::sort(stored_members.begin(), stored_members.end());
    out.consistent = stored_members == fresh.collection.members;
    if (!out.consistent) out.detail = "stored collection disagrees with g_bits";
    const json& checks = stored.at("checks");
    auto flag = [&](const json& rep) { return rep.at("pass").get<bool>(); };
    bool stored_pass = flag(checks.at("A")) && flag(checks.at("B")) &&
                       flag(checks.at("ensemble").at("full"));
    if (out.consistent &&
        (flag(checks.at("A")) != fresh.cond_a.pass || flag(checks.at("B")) != fresh.cond_b.pass ||
         flag(checks.at("ensemble").at("full")) != fresh.ensemble_full.pass ||
         flag(checks.at("ensemble").at("positive")) != fresh.ensemble_positive.pass)) {
        out.consistent = false;
        out.detail = "stored check flags disagree with recomputation";
    }
    out.pass = out.consistent && stored_pass && fresh.pass();
    return out;
}

std::optional<GAssignment> search_small_scheme(RangeMode mode) {
    const long n = 1;
    for (uint32_t mask = 0; mask < (1u << 18); ++mask) {
        GAssignment g = identity_g(n);
        g.prng_id = "exhaustive";
        g.seed = std::to_string(mask);
        for (int b = 0; b < 18; ++b) g.bits[b] = (mask >> b) & 1;
        CollectionC c = build_collection(g);
        EnsembleReport rep = check_ensemble_hypotheses(c, mode);
        if (rep.pass) return g;
    }
    return std::nullopt;
}

}  // namespace bigzono
}  // namespace fliplab
