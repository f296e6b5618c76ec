#include "mtor/gbs.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>

namespace mtor {

namespace {

Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// gcd in Q under divisibility a | b iff b/a integral.
Rat rat_gcd(const Rat& a, const Rat& b) {
    return Rat(int_gcd(rat_num(a), rat_num(b)), int_lcm(rat_den(a), rat_den(b)));
}

Rat rat_lcm(const Rat& a, const Rat& b) {
    return Rat(int_lcm(rat_num(a), rat_num(b)), int_gcd(rat_den(a), rat_den(b)));
}

Int rat_to_int(const Rat& r, const char* what) {
    if (rat_den(r) != 1) {
        std::ostringstream os;
        os << what << " is not an integer: " << r;
        throw semantic_error(os.str());
    }
    return rat_num(r);
}

void append_power(std::vector<int>& letters, int gen, const Int& exp) {
    Int n = int_abs(exp);
    int letter = exp < 0 ? -gen : gen;
    for (Int i = 0; i < n; i++) letters.push_back(letter);
}

}  // namespace

GbsGraph validate_gbs(GbsGraph g) {
    std::size_t v = g.vertex_names.size();
    if (v == 0) throw semantic_error("GBS graph has no vertices");
    for (std::size_t i = 0; i < v; i++) {
        if (g.vertex_names[i].empty())
            throw semantic_error("GBS vertex with empty name");
        for (std::size_t j = i + 1; j < v; j++)
            if (g.vertex_names[i] == g.vertex_names[j])
                throw semantic_error("duplicate GBS vertex name: " + g.vertex_names[i]);
    }
    std::size_t tree_count = 0;
    for (const auto& e : g.edges) {
        if (e.origin < 0 || e.terminus < 0 ||
            e.origin >= static_cast<int>(v) || e.terminus >= static_cast<int>(v))
            throw semantic_error("GBS edge endpoint out of range");
        if (e.lab_o == 0 || e.lab_t == 0)
            throw semantic_error("GBS edge label must be nonzero");
        if (e.tree) {
            tree_count++;
            if (e.origin == e.terminus)
                throw semantic_error("tree edge cannot be a loop");
        } else if (e.stable.empty()) {
            throw semantic_error("non-tree GBS edge needs a stable letter name");
        }
    }
    if (tree_count != v - 1)
        throw semantic_error("marked tree does not have vertex count - 1 edges");
    // Tree edges must connect everything (then acyclicity is automatic).
    std::vector<std::size_t> parent(v);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& e : g.edges)
        if (e.tree) parent[find(static_cast<std::size_t>(e.origin))] =
            find(static_cast<std::size_t>(e.terminus));
    for (std::size_t i = 0; i < v; i++)
        if (find(i) != find(0))
            throw semantic_error("marked tree edges do not span the graph");
    return g;
}

Rat modular_map_loop(const GbsGraph& g, const std::vector<int>& loop) {
    Rat delta = 1;
    int at = -1;
    int start = -1;
    for (int step : loop) {
        std::size_t idx = static_cast<std::size_t>(std::abs(step)) - 1;
        if (step == 0 || idx >= g.edges.size())
            throw semantic_error("edge index out of range in loop");
        const auto& e = g.edges[idx];
        int from = step > 0 ? e.origin : e.terminus;
        int to = step > 0 ? e.terminus : e.origin;
        if (at == -1) { start = from; }
        else if (at != from) throw semantic_error("edge path is not connected");
        at = to;
        Rat exit = step > 0 ? Rat(e.lab_t) : Rat(e.lab_o);
        Rat entry = step > 0 ? Rat(e.lab_o) : Rat(e.lab_t);
        delta *= exit / entry;
    }
    if (at != -1 && at != start)
        throw semantic_error("edge path is not closed");
    return delta;
}

CenterData center(const GbsGraph& graph) {
    GbsGraph g = validate_gbs(graph);
    std::size_t v = g.vertex_names.size();
    if (g.edges.empty())
        throw semantic_error("elementary GBS group (infinite cyclic)");
    if (v == 1 && g.edges.size() == 1 && int_abs(g.edges[0].lab_o) == 1 &&
        int_abs(g.edges[0].lab_t) == 1)
        throw semantic_error("elementary GBS group (Z^2 or Klein bottle)");

    // Signed weights over the spanning tree; a sign mismatch on a non-tree
    // edge is exactly a loop with modular value -1.
    std::vector<Rat> w(v, Rat(0));
    CenterData c;
    c.base_vertex = 0;
    w[0] = 1;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& e : g.edges) {
            if (!e.tree) continue;
            std::size_t o = static_cast<std::size_t>(e.origin);
            std::size_t t = static_cast<std::size_t>(e.terminus);
            if (w[o] != 0 && w[t] == 0) {
                w[t] = Rat(e.lab_o) / Rat(e.lab_t) * w[o];
                progress = true;
            } else if (w[t] != 0 && w[o] == 0) {
                w[o] = Rat(e.lab_t) / Rat(e.lab_o) * w[t];
                progress = true;
            }
        }
    }
    for (std::size_t i = 0; i < g.edges.size(); i++) {
        const auto& e = g.edges[i];
        Rat lhs = Rat(e.lab_o) * w[static_cast<std::size_t>(e.origin)];
        Rat rhs = Rat(e.lab_t) * w[static_cast<std::size_t>(e.terminus)];
        if (lhs != rhs) {
            std::ostringstream os;
            os << "non-trivial modular map - center trivial (witness loop "
                  "through edge "
               << (e.stable.empty() ? std::to_string(i + 1) : e.stable)
               << ", modular value " << rhs / lhs << ")";
            throw semantic_error(os.str());
        }
    }

    c.weights.resize(v);
    for (std::size_t i = 0; i < v; i++) c.weights[i] = rat_abs(w[i]);

    Rat zstar = 0;
    for (const auto& e : g.edges) {
        Rat we = rat_abs(Rat(e.lab_o) * w[static_cast<std::size_t>(e.origin)]);
        zstar = zstar == 0 ? we : rat_lcm(zstar, we);
    }
    c.zstar = zstar;
    c.kappa_v.resize(v);
    for (std::size_t i = 0; i < v; i++)
        c.kappa_v[i] = rat_to_int(zstar / c.weights[i], "kappa_v");
    Int ke_gcd = 0;
    for (const auto& e : g.edges) {
        Rat we = rat_abs(Rat(e.lab_o) * w[static_cast<std::size_t>(e.origin)]);
        Int ke = rat_to_int(zstar / we, "kappa_e");
        c.kappa_e.push_back(ke);
        ke_gcd = int_gcd(ke_gcd, ke);
    }
    if (ke_gcd != 1)
        throw semantic_error("edge kappa values share a factor; Z* not minimal");
    c.center_power = c.kappa_v[static_cast<std::size_t>(c.base_vertex)];

    // Centrality certificate: z re-expressed through each edge relation
    // lands on the same power of the other endpoint generator.
    for (std::size_t i = 0; i < g.edges.size(); i++) {
        const auto& e = g.edges[i];
        if (int_abs(e.lab_o) * c.kappa_e[i] !=
                c.kappa_v[static_cast<std::size_t>(e.origin)] ||
            int_abs(e.lab_t) * c.kappa_e[i] !=
                c.kappa_v[static_cast<std::size_t>(e.terminus)])
            throw semantic_error("centrality certificate failed");
    }
    return c;
}

std::pair<Int, Int> kappa_epsilon(const CenterData& c) {
    Int kappa = 1;
    for (const Int& kv : c.kappa_v) kappa = int_lcm(kappa, kv);
    Rat chi = 0;
    for (const Int& kv : c.kappa_v) chi += Rat(1, kv);
    for (const Int& ke : c.kappa_e) chi -= Rat(1, ke);
    Int eps = rat_to_int(Rat(-kappa) * chi, "epsilon");
    return {kappa, eps};
}

Int kappa_via_elliptic(const GbsGraph& g, const CenterData& c,
                       const std::vector<Rat>& phi_vertex) {
    if (phi_vertex.size() != g.vertex_names.size())
        throw semantic_error("one character value per vertex expected");
    Rat phi_z = Rat(c.center_power) *
                phi_vertex[static_cast<std::size_t>(c.base_vertex)];
    if (phi_z == 0) throw semantic_error("character vanishes on the center");
    Rat e = 0;
    for (const Rat& x : phi_vertex)
        if (x != 0) e = e == 0 ? rat_abs(x) : rat_gcd(e, rat_abs(x));
    return rat_to_int(rat_abs(phi_z) / e, "elliptic index");
}

GbsPresentation gbs_presentation(const GbsGraph& g) {
    GbsPresentation out;
    out.pres.generators = g.vertex_names;
    out.vertex_gen.resize(g.vertex_names.size());
    std::iota(out.vertex_gen.begin(), out.vertex_gen.end(), 0);
    out.stable_gen.assign(g.edges.size(), -1);
    for (std::size_t i = 0; i < g.edges.size(); i++) {
        if (g.edges[i].tree) continue;
        out.stable_gen[i] = static_cast<int>(out.pres.generators.size());
        out.pres.generators.push_back(g.edges[i].stable);
    }
    for (std::size_t i = 0; i < g.edges.size(); i++) {
        const auto& e = g.edges[i];
        std::vector<int> raw;
        int ao = e.origin + 1;
        int at = e.terminus + 1;
        if (e.tree) {
            append_power(raw, ao, e.lab_o);
            append_power(raw, at, -e.lab_t);
        } else {
            int t = out.stable_gen[i] + 1;
            raw.push_back(-t);
            append_power(raw, ao, e.lab_o);
            raw.push_back(t);
            append_power(raw, at, -e.lab_t);
        }
        out.pres.relators.push_back(
            reduce_word(raw, static_cast<int>(out.pres.generators.size())));
    }
    return out;
}

int gbs_betti(const GbsGraph& g) {
    int graph_b1 = static_cast<int>(g.edges.size()) -
                   static_cast<int>(g.vertex_names.size()) + 1;
    int b1 = 1 + graph_b1;
    CharacterLattice lat = character_lattice(gbs_presentation(g).pres);
    if (lat.b1 != b1)
        throw semantic_error("graph Betti number disagrees with Smith form");
    return b1;
}

bool admissible_parameters(const CenterData& c, int b1, const Int& k, const Int& n) {
    if (k < 1 || n < 1) throw semantic_error("k and n must be positive");
    auto [kappa, eps] = kappa_epsilon(c);
    if (b1 <= 1) return k == kappa && n - 1 == eps;
    if (k % kappa != 0) return false;
    Int p = k / kappa;
    return p >= 1 && n - 1 == p * eps;
}

Fibration enumerate_fibrations(const GbsGraph& g, const CenterData& c, const Int& p) {
    if (p < 1) throw semantic_error("multiplier p must be positive");
    int b1 = gbs_betti(g);
    if (b1 < 2 && p != 1)
        throw semantic_error("with first Betti number 1 only p = 1 fibers");

    Rat wg = 0;
    for (const Rat& w : c.weights) wg = wg == 0 ? w : rat_gcd(wg, w);

    GbsPresentation gp = gbs_presentation(g);
    std::vector<Rat> values(gp.pres.generators.size(), Rat(0));
    for (std::size_t v = 0; v < g.vertex_names.size(); v++)
        values[static_cast<std::size_t>(gp.vertex_gen[v])] =
            Rat(p) * c.weights[v] / wg;
    for (int sg : gp.stable_gen)
        if (sg >= 0) values[static_cast<std::size_t>(sg)] = 1;

    Fibration f{CharacterClass::make(gp.pres, values), Int(0), Int(0)};
    // Surjectivity: integer values with gcd 1.
    Int vg = 0;
    for (const Rat& x : values) {
        if (rat_den(x) != 1)
            throw semantic_error("fibration character is not integral");
        vg = int_gcd(vg, rat_num(x));
    }
    if (vg != 1) throw semantic_error("fibration character is not surjective");

    auto [kappa, eps] = kappa_epsilon(c);
    f.monodromy_order = monodromy_order(g, c, f.phi);
    if (f.monodromy_order != p * kappa)
        throw semantic_error("monodromy order does not match p * kappa");
    f.fiber_rank = p * eps + 1;
    return f;
}

Int monodromy_order(const GbsGraph& g, const CenterData& c, const CharacterClass& phi) {
    (void)g;
    if (!phi.is_primitive_integer())
        throw semantic_error(
            "character is not surjective onto Z; divide by the gcd of its "
            "values first");
    Int phi_z = c.center_power *
                phi.primitive[static_cast<std::size_t>(c.base_vertex)];
    if (phi_z == 0) throw semantic_error("character vanishes on the center");
    return int_abs(phi_z);
}

GraphOfGroupsZn gbs_to_gog(const GbsGraph& g) {
    GraphOfGroupsZn out;
    out.vertex_names = g.vertex_names;
    out.vertex_ranks.assign(g.vertex_names.size(), 1);
    for (const auto& e : g.edges) {
        GogEdge ge;
        ge.origin = e.origin;
        ge.terminus = e.terminus;
        ge.edge_rank = 1;
        ge.inc_origin = ZnMatrix(1, 1);
        ge.inc_origin.at(0, 0) = e.lab_o;
        ge.inc_terminus = ZnMatrix(1, 1);
        ge.inc_terminus.at(0, 0) = e.lab_t;
        ge.tree = e.tree;
        ge.stable = e.stable;
        ge.name = e.stable.empty()
                      ? g.vertex_names[static_cast<std::size_t>(e.origin)] + "-" +
                            g.vertex_names[static_cast<std::size_t>(e.terminus)]
                      : e.stable;
        out.edges.push_back(std::move(ge));
    }
    return validate_gog(std::move(out));
}

SphereArrangement gbs_sigma(const GbsGraph& g, const CenterData& c) {
    GbsPresentation gp = gbs_presentation(g);
    CharacterLattice lat = character_lattice(gp.pres);
    std::vector<int> raw;
    append_power(raw, gp.vertex_gen[static_cast<std::size_t>(c.base_vertex)] + 1,
                 c.center_power);
    Word z = reduce_word(raw, static_cast<int>(gp.pres.generators.size()));
    return arrangement_from_words(gp.pres, lat, {z});
}

}  // namespace mtor
