#include "fliplab/triangulation.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "fliplab/prng.hpp"

namespace fliplab {

using nlohmann::json;

// ---- condition 1 on a pair ----------------------------------------------------

bool opposing_circuit_pair(const Cell& tau, const Cell& tau2) {
    if (tau == tau2) return false;
    Cell shared = cell_intersect(tau, tau2);
    Cell uni = cell_union(tau, tau2);
    CellGraph g = bipartite_graph(uni);
    size_t nr = g.rows.size(), nn = nr + g.cols.size();

    // Contract the shared forest.
    std::vector<int> parent(nn);
    for (size_t i = 0; i < nn; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    auto rid = [&](VertexId v) {
        return static_cast<int>(std::lower_bound(g.rows.begin(), g.rows.end(), vrow(v)) -
                                g.rows.begin());
    };
    auto cid = [&](VertexId v) {
        return static_cast<int>(nr + (std::lower_bound(g.cols.begin(), g.cols.end(), vcol(v)) -
                                      g.cols.begin()));
    };
    for (VertexId v : shared) parent[find(rid(v))] = find(cid(v));

    std::vector<std::vector<int>> adj(nn);
    for (VertexId v : cell_minus(tau, shared)) {
        int a = find(rid(v)), b = find(cid(v));
        if (a == b) return true;  // cycle through the shared forest
        adj[a].push_back(b);
    }
    for (VertexId v : cell_minus(tau2, shared)) {
        int a = find(cid(v)), b = find(rid(v));
        if (a == b) return true;
        adj[a].push_back(b);
    }
    // Directed cycle detection.
    std::vector<int> color(nn, 0);
    std::vector<std::pair<int, size_t>> stack;
    for (size_t s = 0; s < nn; ++s) {
        if (color[s] != 0 || find(static_cast<int>(s)) != static_cast<int>(s)) continue;
        stack.push_back({static_cast<int>(s), 0});
        color[s] = 1;
        while (!stack.empty()) {
            auto& [u, k] = stack.back();
            if (k < adj[u].size()) {
                int w = adj[u][k++];
                if (color[w] == 1) return true;
                if (color[w] == 0) {
                    color[w] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                color[u] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

// ---- validate -----------------------------------------------------------------

namespace {

std::string cell_str(const Cell& c) {
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < c.size(); ++i)
        os << (i ? " " : "") << '(' << vrow(c[i]) + 1 << ',' << vcol(c[i]) << ')';
    os << '}';
    return os.str();
}

void note(ValidationReport& rep, const std::string& msg) {
    if (rep.violations.size() < 32) rep.violations.push_back(msg);
}

}  // namespace

ValidationReport validate(const Cell& domain, const std::vector<Cell>& maximal,
                          const ValidateOptions& opt) {
    ValidationReport rep;
    if (maximal.empty()) {
        // A single point (or empty domain) has the trivial triangulation.
        rep.simplices_ok = domain.size() <= 1;
        if (!rep.simplices_ok) note(rep, "no maximal simplices");
        return rep;
    }
    int rank = cell_rank(domain);
    for (const Cell& t : maximal) {
        if (!cell_subset(t, domain) || !is_simplex(t) || static_cast<int>(t.size()) != rank) {
            rep.simplices_ok = false;
            note(rep, "not a full-dimensional simplex of the domain: " + cell_str(t));
        }
    }
    if (!rep.simplices_ok) return rep;

    // Condition 2 plus the facet adjacency map reused for sampled condition 1.
    std::map<Cell, std::vector<int>> facet_owners;
    for (size_t i = 0; i < maximal.size(); ++i) {
        const Cell& t = maximal[i];
        for (size_t k = 0; k < t.size(); ++k) {
            Cell f;
            f.reserve(t.size() - 1);
            for (size_t j = 0; j < t.size(); ++j)
                if (j != k) f.push_back(t[j]);
            facet_owners[f].push_back(static_cast<int>(i));
        }
    }
    for (const auto& [f, owners] : facet_owners) {
        if (owners.size() == 2) continue;
        if (owners.size() == 1 && is_in_proper_face(domain, f)) continue;
        rep.cond2_ok = false;
        note(rep, "facet in " + std::to_string(owners.size()) + " simplices, interior=" +
                      (is_in_proper_face(domain, f) ? "no" : "yes") + ": " + cell_str(f));
    }

    // Condition 1.
    size_t m = maximal.size();
    if (m <= opt.full_tier_limit) {
        rep.tier = ValidationReport::Tier::Full;
        for (size_t i = 0; i < m && rep.violations.size() < 32; ++i)
            for (size_t j = i + 1; j < m; ++j) {
                ++rep.cond1_pairs_checked;
                if (opposing_circuit_pair(maximal[i], maximal[j])) {
                    rep.cond1_ok = false;
                    note(rep, "opposing circuit across " + cell_str(maximal[i]) + " and " +
                                  cell_str(maximal[j]));
                    break;
                }
            }
    } else {
        rep.tier = ValidationReport::Tier::Sampled;
        // All facet-adjacent pairs, then a seeded random sample.
        for (const auto& [f, owners] : facet_owners) {
            if (owners.size() != 2) continue;
            ++rep.cond1_pairs_checked;
            if (opposing_circuit_pair(maximal[owners[0]], maximal[owners[1]])) {
                rep.cond1_ok = false;
                note(rep, "opposing circuit across adjacent pair");
            }
        }
        Prng rng(opt.sample_seed);
        for (size_t k = 0; k < opt.sample_pairs; ++k) {
            size_t i = rng.next_below(m), j = rng.next_below(m);
            if (i == j) continue;
            ++rep.cond1_pairs_checked;
            if (opposing_circuit_pair(maximal[i], maximal[j])) {
                rep.cond1_ok = false;
                note(rep, "opposing circuit across sampled pair");
                break;
            }
        }
    }

    if (opt.expected_volume) {
        // Unimodularity holds throughout this library's configurations; it is
        // spot-checked exactly, and the simplex count must match the expected
        // normalized volume.
        size_t spot = std::min<size_t>(m, 8);
        for (size_t i = 0; i < spot; ++i) {
            size_t idx = i * (m - 1) / (spot > 1 ? spot - 1 : 1);
            if (normalized_volume(domain, maximal[idx]) != 1) {
                rep.volume_ok = false;
                note(rep, "non-unimodular maximal simplex");
            }
        }
        if (mpz_class(static_cast<long>(m)) != *opt.expected_volume) {
            rep.volume_ok = false;
            note(rep, "simplex count " + std::to_string(m) + " != expected volume " +
                          opt.expected_volume->get_str());
        }
    }
    return rep;
}

// ---- Triangulation ------------------------------------------------------------

Triangulation::Triangulation(std::shared_ptr<const Configuration> cfg, Cell domain,
                             std::vector<Cell> maximal, bool check, const ValidateOptions& opt)
    : cfg_(std::move(cfg)), domain_(std::move(domain)) {
    for (Cell& c : maximal) c = canon_cell(std::move(c));
    std::sort(maximal.begin(), maximal.end());
    maximal.erase(std::unique(maximal.begin(), maximal.end()), maximal.end());
    maximal_ = std::move(maximal);
    for (size_t i = 0; i < maximal_.size(); ++i)
        for (VertexId v : maximal_[i]) star_[v].push_back(static_cast<int>(i));
    if (check) {
        report_ = validate(domain_, maximal_, opt);
        if (!report_.ok()) {
            std::string msg = "invalid triangulation";
            for (const std::string& s : report_.violations) msg += "\n  " + s;
            throw std::runtime_error(msg);
        }
    }
}

bool Triangulation::contains(const Cell& sigma) const {
    return !maximal_containing(sigma).empty();
}

std::vector<int> Triangulation::maximal_containing(const Cell& sigma) const {
    if (sigma.empty()) {
        std::vector<int> all(maximal_.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        return all;
    }
    auto it = star_.find(sigma.front());
    if (it == star_.end()) return {};
    std::vector<int> out;
    for (int i : it->second)
        if (cell_subset(sigma, maximal_[i])) out.push_back(i);
    return out;
}

std::string Triangulation::canonical_key() const {
    std::ostringstream os;
    for (const Cell& c : maximal_) {
        for (VertexId v : c) os << v << ',';
        os << ';';
    }
    return os.str();
}

// ---- link ----------------------------------------------------------------------

std::vector<Cell> link_maximal(const Triangulation& t, const Cell& cell) {
    std::vector<int> owners = t.maximal_containing(cell);
    if (owners.empty()) throw CellNotInTriangulation(cell_str(cell));
    std::set<Cell> out;
    for (int i : owners) out.insert(cell_minus(t.maximal()[i], cell));
    return {out.begin(), out.end()};
}

std::vector<Cell> link(const Triangulation& t, const Cell& cell) {
    std::vector<Cell> tops = link_maximal(t, cell);
    std::set<Cell> out;
    for (const Cell& top : tops) {
        if (top.size() > 20) throw std::runtime_error("link too large to enumerate");
        for (uint32_t mask = 0; mask < (1u << top.size()); ++mask) {
            Cell c;
            for (size_t k = 0; k < top.size(); ++k)
                if (mask & (1u << k)) c.push_back(top[k]);
            out.insert(c);
        }
    }
    return {out.begin(), out.end()};
}

// ---- restriction ----------------------------------------------------------------

Triangulation restrict_to_face(const Triangulation& t, const Cell& face) {
    if (!(face == t.domain() || is_face_of(t.domain(), face)))
        throw NotAFace(cell_str(face));
    std::set<Cell> pieces;
    for (const Cell& m : t.maximal()) pieces.insert(cell_intersect(m, face));
    std::vector<Cell> maxes;
    for (const Cell& c : pieces) {
        bool dominated = false;
        for (const Cell& d : pieces)
            if (d != c && cell_subset(c, d)) {
                dominated = true;
                break;
            }
        if (!dominated && !c.empty()) maxes.push_back(c);
    }
    return Triangulation(t.config_ptr(), face, std::move(maxes));
}

// ---- circuit triangulations ------------------------------------------------------

std::vector<Cell> circuit_side_maximal(const SignedCircuit& x, bool avoid_plus) {
    const Cell& part = avoid_plus ? x.plus : x.minus;
    std::vector<Cell> out;
    for (VertexId v : part) out.push_back(cell_minus(x.support, {v}));
    std::sort(out.begin(), out.end());
    return out;
}

std::pair<Triangulation, Triangulation> circuit_triangulations(
    std::shared_ptr<const Configuration> cfg, const SignedCircuit& x) {
    Triangulation plus(cfg, x.support, circuit_side_maximal(x, true));
    Triangulation minus(cfg, x.support, circuit_side_maximal(x, false));
    return {std::move(plus), std::move(minus)};
}

// ---- flips -----------------------------------------------------------------------

bool has_flip_on(const Triangulation& t, const SignedCircuit& x, bool from_plus) {
    const Cell& avoided = from_plus ? x.plus : x.minus;
    const Cell& other = from_plus ? x.minus : x.plus;
    if (!t.contains(other)) throw PreconditionFailed("complement part not in triangulation");
    for (int i : t.maximal_containing(other)) {
        size_t overlap = cell_intersect(x.support, t.maximal()[i]).size();
        if (overlap + 2 <= x.support.size()) return false;
    }
    (void)avoided;
    return true;
}

std::optional<FlipDescriptor> detect_flip_by_links(const Triangulation& t,
                                                   const SignedCircuit& x, bool from_plus) {
    std::vector<Cell> tops = circuit_side_maximal(x, from_plus);
    std::optional<std::vector<Cell>> common;
    for (const Cell& top : tops) {
        if (!t.contains(top)) return std::nullopt;
        std::vector<Cell> lk = link_maximal(t, top);
        if (!common)
            common = std::move(lk);
        else if (*common != lk)
            return std::nullopt;
    }
    return FlipDescriptor{x, from_plus, std::move(*common)};
}

Triangulation apply_flip(const Triangulation& t, const FlipDescriptor& flip, bool revalidate) {
    std::optional<FlipDescriptor> now = detect_flip_by_links(t, flip.circuit, flip.from_plus);
    if (!now || now->common_link != flip.common_link)
        throw InvalidFlip("descriptor does not apply to this triangulation");

    std::vector<Cell> old_tops = circuit_side_maximal(flip.circuit, flip.from_plus);
    std::vector<Cell> new_tops = circuit_side_maximal(flip.circuit, !flip.from_plus);
    std::set<int> removed;
    for (const Cell& top : old_tops)
        for (int i : t.maximal_containing(top)) removed.insert(i);
    std::vector<Cell> result;
    for (size_t i = 0; i < t.maximal().size(); ++i)
        if (!removed.count(static_cast<int>(i))) result.push_back(t.maximal()[i]);
    for (const Cell& rho : flip.common_link)
        for (const Cell& top : new_tops) result.push_back(cell_union(rho, top));
    return Triangulation(t.config_ptr(), t.domain(), std::move(result), revalidate);
}

std::vector<FlipDescriptor> all_flips(const Triangulation& t, const AllFlipsOptions& opt) {
    std::set<Cell> candidates;
    const Cell& domain = t.domain();
    if (static_cast<int>(domain.size()) <= opt.exhaustive_vertex_limit) {
        for (const SignedCircuit& x : enumerate_circuits(domain, opt.circuit_max_size))
            candidates.insert(x.support);
    } else {
        // Each facet-adjacent pair's union carries exactly one circuit.
        std::map<Cell, std::vector<int>> facet_owners;
        for (size_t i = 0; i < t.maximal().size(); ++i) {
            const Cell& m = t.maximal()[i];
            for (size_t k = 0; k < m.size(); ++k) {
                Cell f;
                for (size_t j = 0; j < m.size(); ++j)
                    if (j != k) f.push_back(m[j]);
                facet_owners[f].push_back(static_cast<int>(i));
            }
        }
        for (const auto& [f, owners] : facet_owners) {
            if (owners.size() != 2) continue;
            Cell uni = cell_union(t.maximal()[owners[0]], t.maximal()[owners[1]]);
            // Peel leaves of G(uni); the remainder is the unique cycle.
            CellGraph g = bipartite_graph(uni);
            std::map<int, int> rdeg, cdeg;
            std::set<VertexId> alive(uni.begin(), uni.end());
            for (VertexId v : uni) ++rdeg[vrow(v)], ++cdeg[vcol(v)];
            bool changed = true;
            while (changed) {
                changed = false;
                for (VertexId v : Cell(alive.begin(), alive.end())) {
                    if (rdeg[vrow(v)] == 1 || cdeg[vcol(v)] == 1) {
                        alive.erase(v);
                        --rdeg[vrow(v)];
                        --cdeg[vcol(v)];
                        changed = true;
                    }
                }
            }
            if (!alive.empty()) candidates.insert(Cell(alive.begin(), alive.end()));
        }
    }
    std::vector<FlipDescriptor> out;
    for (const Cell& support : candidates) {
        SignedCircuit x = orient_circuit(support);
        for (bool from_plus : {true, false}) {
            std::optional<FlipDescriptor> fd = detect_flip_by_links(t, x, from_plus);
            if (fd) out.push_back(std::move(*fd));
        }
    }
    return out;
}

// ---- ordered gluing -----------------------------------------------------------

Triangulation pseudoproduct(const std::vector<Triangulation>& parts, const Cell& rho) {
    if (parts.empty()) throw std::invalid_argument("pseudoproduct of nothing");
    if (rho.size() != 2 || vcol(rho[0]) != vcol(rho[1]))
        throw OverlapViolation("rho must be one doubled column");
    size_t k = parts.size();
    for (size_t a = 0; a < k; ++a) {
        if (!cell_subset(rho, parts[a].domain()))
            throw OverlapViolation("rho not inside every part");
        for (size_t b = a + 1; b < k; ++b) {
            CellGraph ga = bipartite_graph(parts[a].domain());
            CellGraph gb = bipartite_graph(parts[b].domain());
            std::set<int> ra(ga.rows.begin(), ga.rows.end()), rb(gb.rows.begin(), gb.rows.end());
            std::set<int> ca(ga.cols.begin(), ga.cols.end()), cb(gb.cols.begin(), gb.cols.end());
            std::set<int> ri, ci;
            for (int r : ra)
                if (rb.count(r)) ri.insert(r);
            for (int c : ca)
                if (cb.count(c)) ci.insert(c);
            std::set<int> want_rows = {vrow(rho[0]), vrow(rho[1])};
            if (ri != want_rows || ci != std::set<int>{vcol(rho[0])})
                throw OverlapViolation("parts overlap beyond G(rho)");
            if (cell_intersect(parts[a].domain(), parts[b].domain()) != rho)
                throw OverlapViolation("parts share vertices beyond rho");
        }
    }

    Cell whole;
    for (const Triangulation& p : parts) whole = cell_union(whole, p.domain());

    // Per part: maxima containing rho (minus rho), and boundary simplices of
    // facets meeting rho in a given subset.
    std::vector<std::vector<Cell>> with_rho(k);
    std::vector<std::map<Cell, std::vector<Cell>>> boundary(k);  // rho' -> simplices
    for (size_t r = 0; r < k; ++r) {
        for (const Cell& m : parts[r].maximal())
            if (cell_subset(rho, m)) with_rho[r].push_back(cell_minus(m, rho));
        std::map<Cell, std::set<Cell>> acc;
        for (const Cell& f : facets_of(parts[r].domain())) {
            Cell cut = cell_intersect(f, rho);
            if (cut == rho) continue;  // only rho' != rho is ever requested
            std::set<Cell> pieces;
            for (const Cell& m : parts[r].maximal()) pieces.insert(cell_intersect(m, f));
            for (const Cell& c : pieces) {
                bool dominated = false;
                for (const Cell& d : pieces)
                    if (d != c && cell_subset(c, d)) dominated = true;
                if (!dominated && !c.empty()) acc[cut].insert(c);
            }
        }
        for (auto& [cut, cells] : acc)
            boundary[r][cut] = std::vector<Cell>(cells.begin(), cells.end());
    }

    std::vector<Cell> out;
    for (size_t s = 0; s < k; ++s) {
        // sigma_s: maximal in part s; for s < k-1 it must not contain all of rho.
        for (const Cell& sig_s : parts[s].maximal()) {
            Cell overlap = cell_intersect(sig_s, rho);
            if (s + 1 < k && overlap == rho) continue;
            Cell rho_prime = overlap;

            std::vector<std::vector<Cell>> choices;
            bool dead = false;
            for (size_t r = 0; r < s; ++r) {
                if (with_rho[r].empty()) dead = true;
                choices.push_back(with_rho[r]);
            }
            choices.push_back({sig_s});
            for (size_t r = s + 1; r < k && !dead; ++r) {
                auto it = boundary[r].find(rho_prime);
                if (it == boundary[r].end() || it->second.empty())
                    dead = true;
                else
                    choices.push_back(it->second);
            }
            if (dead) continue;

            // Cartesian product of the per-part choices.
            std::vector<size_t> pick(choices.size(), 0);
            while (true) {
                Cell sigma;
                for (size_t r = 0; r < choices.size(); ++r)
                    sigma = cell_union(sigma, choices[r][pick[r]]);
                out.push_back(sigma);
                size_t pos = 0;
                while (pos < pick.size() && ++pick[pos] == choices[pos].size()) {
                    pick[pos] = 0;
                    ++pos;
                }
                if (pos == pick.size()) break;
            }
        }
    }
    Triangulation glued(parts[0].config_ptr(), whole, std::move(out));
    for (const Triangulation& p : parts)
        for (const Cell& m : p.maximal())
            if (!glued.contains(m)) throw std::logic_error("pseudoproduct lost an input simplex");
    return glued;
}

// ---- flip graph ------------------------------------------------------------------

FlipGraph flip_graph(const Triangulation& seed, size_t node_budget) {
    FlipGraph g;
    std::map<std::string, int> id_of;
    std::vector<Triangulation> store;
    std::set<std::pair<int, int>> edges;

    auto add_node = [&](Triangulation tr) -> int {
        std::string key = tr.canonical_key();
        auto it = id_of.find(key);
        if (it != id_of.end()) return it->second;
        int id = static_cast<int>(store.size());
        id_of[key] = id;
        g.keys.push_back(key);
        g.nodes.push_back(tr.maximal());
        store.push_back(std::move(tr));
        return id;
    };

    add_node(seed);
    for (size_t head = 0; head < store.size(); ++head) {
        if (store.size() > node_budget) {
            g.exhausted = false;
            break;
        }
        std::vector<FlipDescriptor> flips = all_flips(store[head]);
        for (const FlipDescriptor& fd : flips) {
            Triangulation next = apply_flip(store[head], fd);
            int j = add_node(std::move(next));
            int a = static_cast<int>(head), b = j;
            if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
        }
    }
    g.edges.assign(edges.begin(), edges.end());
    return g;
}

std::string flip_graph_dot(const FlipGraph& g) {
    std::ostringstream os;
    os << "graph flips {\n";
    for (size_t i = 0; i < g.keys.size(); ++i) os << "  n" << i << ";\n";
    for (auto [a, b] : g.edges) os << "  n" << a << " -- n" << b << ";\n";
    os << "}\n";
    return os.str();
}

std::string flip_graph_json(const FlipGraph& g) {
    json j;
    j["exhausted"] = g.exhausted;
    j["nodes"] = json::array();
    for (size_t i = 0; i < g.keys.size(); ++i) {
        json n;
        n["id"] = i;
        n["key"] = g.keys[i];
        j["nodes"].push_back(n);
    }
    j["edges"] = json::array();
    for (auto [a, b] : g.edges) j["edges"].push_back({a, b});
    return j.dump(2);
}

// ---- property checkers ------------------------------------------------------------

GrowWitness property_grow(const Triangulation& t, const Cell& sigma, bool row_variant) {
    GrowWitness w;
    if (!t.contains(sigma)) throw CellNotInTriangulation(cell_str(sigma));
    const Cell& domain = t.domain();

    std::set<int> srows, scols;
    for (VertexId v : sigma) srows.insert(vrow(v)), scols.insert(vcol(v));

    Cell face;
    if (!row_variant) {
        // Face induced by the weak ordering putting sigma's rows first.
        std::map<int, bool> col_meets;
        for (VertexId v : domain)
            if (srows.count(vrow(v))) col_meets[vcol(v)] = true;
        for (VertexId v : domain) {
            auto it = col_meets.find(vcol(v));
            if (it == col_meets.end() || srows.count(vrow(v))) face.push_back(v);
        }
    } else {
        // Face spanned by sigma's columns.
        for (VertexId v : domain)
            if (scols.count(vcol(v))) face.push_back(v);
    }
    face = canon_cell(face);

    Triangulation rt = restrict_to_face(t, face);
    // A maximal simplex of T[F] containing sigma.
    std::vector<int> owners = rt.maximal_containing(sigma);
    if (owners.empty()) return w;  // should not happen; reported as failure
    w.tau = rt.maximal()[owners.front()];

    std::set<int> trows, tcols;
    for (VertexId v : w.tau) trows.insert(vrow(v)), tcols.insert(vcol(v));
    std::set<std::pair<int, int>> tau_edges;
    for (VertexId v : w.tau) tau_edges.insert({vrow(v), vcol(v)});

    w.satisfied = true;
    if (!row_variant) {
        // Every column adjacent to G(sigma) in G(domain) must be adjacent in G(tau).
        std::set<int> adj_cols;
        for (VertexId v : domain)
            if (srows.count(vrow(v))) adj_cols.insert(vcol(v));
        for (int c : adj_cols) {
            bool ok = false;
            for (int r : srows)
                if (tau_edges.count({r, c})) ok = true;
            if (!ok) w.satisfied = false;
        }
    } else {
        std::set<int> adj_rows;
        for (VertexId v : domain)
            if (scols.count(vcol(v))) adj_rows.insert(vrow(v));
        for (int r : adj_rows) {
            bool ok = false;
            for (int c : scols)
                if (tau_edges.count({r, c})) ok = true;
            if (!ok) w.satisfied = false;
        }
    }
    return w;
}

bool property_circuitparts(const Triangulation& t, int max_size) {
    for (const SignedCircuit& x : enumerate_circuits(t.domain(), max_size))
        if (t.contains(x.plus) && t.contains(x.minus)) return false;
    return true;
}

bool property_genshift(const Triangulation& before, const Triangulation& after,
                       const FlipDescriptor& flip, const Cell& sigma) {
    if (!before.contains(sigma)) throw PreconditionFailed("sigma not in T");
    if (after.contains(sigma)) return true;  // vacuous
    if (bipartite_graph(sigma).components() != 1)
        throw PreconditionFailed("G(sigma) not connected");
    for (const Cell& top : circuit_side_maximal(flip.circuit, flip.from_plus))
        if (cell_subset(top, sigma)) return true;
    return false;
}

// ---- serialization ---------------------------------------------------------------

std::string triangulation_jsonl(const Triangulation& t, const std::string& config_ref) {
    std::ostringstream os;
    json h;
    h["config"] = config_ref;
    h["count"] = t.maximal().size();
    os << h.dump() << '\n';
    for (const Cell& c : t.maximal()) {
        json line = json::array();
        for (VertexId v : c) line.push_back({vrow(v) + 1, vcol(v)});
        os << line.dump() << '\n';
    }
    return os.str();
}

std::vector<Cell> parse_triangulation_jsonl(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<Cell> out;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (first) {
            first = false;
            if (j.is_object()) continue;  // header
        }
        Cell c;
        for (const json& p : j) c.push_back(make_vertex(p.at(0).get<int>() - 1, p.at(1).get<int>()));
        out.push_back(canon_cell(c));
    }
    return out;
}

}  // namespace fliplab
