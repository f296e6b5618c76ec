#include "mtor/torus.hpp"

#include <algorithm>
#include <queue>
#include <random>

namespace mtor {

namespace {

// Union-find over vertices.
struct Dsu {
    std::vector<int> p;
    explicit Dsu(int n) : p(n) {
        for (int i = 0; i < n; ++i) p[i] = i;
    }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

bool connected(int num_vertices, const std::vector<FilteredGraphMap::Edge>& edges) {
    if (num_vertices == 0) return false;
    Dsu dsu(num_vertices);
    for (const auto& e : edges) dsu.unite(e.origin, e.terminus);
    for (int v = 1; v < num_vertices; ++v)
        if (dsu.find(v) != dsu.find(0)) return false;
    return true;
}

} // namespace

FilteredGraphMap validate_filtered_map(FilteredGraphMap raw) {
    const int m = static_cast<int>(raw.edges.size());
    if (raw.num_vertices < 1) throw semantic_error("graph needs at least one vertex");
    if (static_cast<int>(raw.suffixes.size()) != m)
        throw semantic_error("one suffix word per edge required");
    for (const auto& e : raw.edges)
        if (e.origin < 0 || e.origin >= raw.num_vertices || e.terminus < 0 ||
            e.terminus >= raw.num_vertices)
            throw semantic_error("edge endpoint out of range");
    if (!connected(raw.num_vertices, raw.edges)) throw semantic_error("graph is disconnected");
    if (raw.betti() < 1) throw semantic_error("graph has rank 0");

    for (int i = 0; i < m; ++i) {
        int at = raw.edges[i].terminus;
        for (int l : raw.suffixes[i]) {
            int j = std::abs(l) - 1;
            if (l == 0 || j >= m) throw semantic_error("suffix refers to unknown edge");
            if (j >= i)
                throw semantic_error("stratum violation: suffix of " + raw.edges[i].name +
                                     " uses stratum >= its own");
            const auto& e = raw.edges[j];
            if ((l > 0 ? e.origin : e.terminus) != at)
                throw semantic_error("suffix of " + raw.edges[i].name +
                                     " is not a path at its terminus");
            at = l > 0 ? e.terminus : e.origin;
        }
        if (at != raw.edges[i].terminus)
            throw semantic_error("suffix of " + raw.edges[i].name + " is not a closed loop");
    }
    return raw;
}

FilteredGraphMap rose_from_triangular(const FreeAutomorphism& alpha) {
    int offender = 0;
    if (!alpha.is_triangular(&offender))
        throw semantic_error("not triangular for the given basis order: x" +
                             std::to_string(offender));
    FilteredGraphMap f;
    f.num_vertices = 1;
    for (int i = 1; i <= alpha.rank; ++i)
        f.edges.push_back({0, 0, "x" + std::to_string(i)});
    f.suffixes.resize(alpha.rank);
    for (int i = 1; i <= alpha.rank; ++i) {
        const Word& im = alpha.images[i - 1];
        f.suffixes[i - 1].assign(im.letters.begin() + 1, im.letters.end());
    }
    return validate_filtered_map(std::move(f));
}

MappingTorusPresentation presentation(const FilteredGraphMap& f,
                                      std::optional<unsigned> tree_seed) {
    const int m = static_cast<int>(f.edges.size());
    MappingTorusPresentation p;
    p.base_vertex = 0;
    p.tree_edge.assign(m, false);
    p.edge_gen.assign(m, 0);

    // Spanning tree: BFS from the base vertex, scanning edges in stratum
    // order (deterministic), or in a seed-shuffled order.
    std::vector<int> order(m);
    for (int i = 0; i < m; ++i) order[i] = i;
    if (tree_seed) {
        std::mt19937 rng(*tree_seed);
        std::shuffle(order.begin(), order.end(), rng);
    }
    {
        Dsu dsu(f.num_vertices);
        for (int i : order) {
            const auto& e = f.edges[i];
            if (dsu.find(e.origin) != dsu.find(e.terminus)) {
                dsu.unite(e.origin, e.terminus);
                p.tree_edge[i] = true;
            }
        }
    }

    for (int i = 0; i < m; ++i)
        if (!p.tree_edge[i]) {
            p.pres.generators.push_back(f.edges[i].name);
            p.edge_gen[i] = static_cast<int>(p.pres.generators.size());
        }
    p.fiber_rank = static_cast<int>(p.pres.generators.size());
    p.pres.generators.push_back("t");
    p.stable = p.fiber_rank + 1;

    auto rewrite = [&](const std::vector<int>& path) {
        std::vector<int> raw;
        for (int l : path) {
            int g = p.edge_gen[std::abs(l) - 1];
            if (g != 0) raw.push_back(l > 0 ? g : -g);
        }
        return reduce_word(raw);
    };

    // Vertex stable letters via the tree-edge relations
    // t_{tau(e)} = t_{o(e)} * w(u_e).
    p.vertex_stable.assign(f.num_vertices, Word{});
    std::vector<bool> assigned(f.num_vertices, false);
    p.vertex_stable[p.base_vertex] = reduce_word({p.stable});
    assigned[p.base_vertex] = true;
    for (bool progress = true; progress;) {
        progress = false;
        for (int i = 0; i < m; ++i) {
            if (!p.tree_edge[i]) continue;
            const auto& e = f.edges[i];
            Word u = rewrite(f.suffixes[i]);
            if (assigned[e.origin] && !assigned[e.terminus]) {
                p.vertex_stable[e.terminus] = concat(p.vertex_stable[e.origin], u);
                assigned[e.terminus] = true;
                progress = true;
            } else if (assigned[e.terminus] && !assigned[e.origin]) {
                p.vertex_stable[e.origin] = concat(p.vertex_stable[e.terminus], u.inverse());
                assigned[e.origin] = true;
                progress = true;
            }
        }
    }

    // One relator per surviving edge: t_{o(e)}^-1 * e * t_{tau(e)} * (e u_e)^-1.
    for (int i = 0; i < m; ++i) {
        if (p.tree_edge[i]) continue;
        const auto& e = f.edges[i];
        Word x = reduce_word({p.edge_gen[i]});
        Word image = concat(x, rewrite(f.suffixes[i]));
        Word r = concat(concat(p.vertex_stable[e.origin].inverse(), x),
                        concat(p.vertex_stable[e.terminus], image.inverse()));
        p.pres.relators.push_back(std::move(r));
    }
    return p;
}

Word rewrite_path(const MappingTorusPresentation& p, const std::vector<int>& edge_path) {
    std::vector<int> raw;
    for (int l : edge_path) {
        int g = p.edge_gen[std::abs(l) - 1];
        if (g != 0) raw.push_back(l > 0 ? g : -g);
    }
    return reduce_word(raw);
}

CharacterLattice character_lattice(const Presentation& p) {
    const int rows = static_cast<int>(p.relators.size());
    const int cols = static_cast<int>(p.generators.size());
    IntMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i) {
        auto ev = p.relators[i].exponent_vector(cols);
        for (int j = 0; j < cols; ++j) a.at(i, j) = ev[j];
    }
    CharacterLattice lat;
    lat.basis = integer_kernel_basis(a);
    lat.b1 = static_cast<int>(lat.basis.size());
    // Torsion lives in the Smith form of the transpose layout as well; the
    // invariant factors of the row space are the same.
    for (const Int& d : smith_normal_form(a).diag)
        if (d > 1) lat.torsion.push_back(d);
    return lat;
}

CharacterClass CharacterClass::make(const Presentation& p, std::vector<Rat> values) {
    if (values.size() != p.generators.size())
        throw semantic_error("character needs one value per generator");
    bool nonzero = false;
    for (const Rat& v : values)
        if (v != 0) nonzero = true;
    if (!nonzero) throw semantic_error("character is identically zero");

    CharacterClass phi;
    phi.values = std::move(values);

    Int den_lcm = 1;
    for (const Rat& v : phi.values) den_lcm = int_lcm(den_lcm, rat_den(v));
    std::vector<Int> ints(phi.values.size());
    for (size_t i = 0; i < ints.size(); ++i)
        ints[i] = rat_num(phi.values[i]) * (den_lcm / rat_den(phi.values[i]));
    Int g = vec_gcd(ints);
    for (Int& x : ints) x /= g;
    phi.was_scaled = (den_lcm != 1 || g != 1);
    phi.primitive = std::move(ints);

    for (const Word& r : p.relators) {
        Rat sum = 0;
        for (int l : r.letters) {
            const Rat& v = phi.values[std::abs(l) - 1];
            sum += l > 0 ? v : -v;
        }
        if (sum != 0) throw semantic_error("character does not annihilate every relator");
    }
    return phi;
}

Rat evaluate_character(const CharacterClass& phi, const Word& w) {
    Rat sum = 0;
    for (int l : w.letters) {
        size_t i = static_cast<size_t>(std::abs(l)) - 1;
        if (i >= phi.values.size()) throw semantic_error("unknown generator in word");
        sum += l > 0 ? phi.values[i] : -phi.values[i];
    }
    return sum;
}

Int evaluate_primitive(const CharacterClass& phi, const Word& w) {
    Int sum = 0;
    for (int l : w.letters) {
        size_t i = static_cast<size_t>(std::abs(l)) - 1;
        if (i >= phi.primitive.size()) throw semantic_error("unknown generator in word");
        sum += l > 0 ? phi.primitive[i] : -phi.primitive[i];
    }
    return sum;
}

} // namespace mtor
