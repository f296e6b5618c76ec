#include "mtor/bns.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace mtor {

namespace {

void make_primitive_lex_positive(std::vector<Int>& v, std::vector<Int>* companion) {
    Int g = vec_gcd(v);
    if (g == 0) return;
    for (Int& x : v) x /= g;
    for (const Int& x : v) {
        if (x == 0) continue;
        if (x < 0) {
            for (Int& y : v) y = -y;
            if (companion)
                for (Int& y : *companion) y = -y;
        }
        break;
    }
}

} // namespace

SphereArrangement arrangement_from_words(const Presentation& p, const CharacterLattice& lat,
                                         const std::vector<Word>& words) {
    SphereArrangement arr;
    arr.ambient = lat.b1;
    arr.generator_count = static_cast<int>(p.generators.size());
    for (const Word& w : words) {
        Sphere s;
        s.pairing = w.exponent_vector(arr.generator_count);
        s.normal.resize(lat.b1);
        for (int j = 0; j < lat.b1; ++j) {
            Int dot = 0;
            for (int g = 0; g < arr.generator_count; ++g)
                dot += lat.basis[j][g] * s.pairing[g];
            s.normal[j] = dot;
        }
        if (vec_gcd(s.normal) == 0)
            throw semantic_error("internal: sphere word has zero pairing with every character");
        make_primitive_lex_positive(s.normal, &s.pairing);
        bool dup = false;
        for (const Sphere& t : arr.spheres)
            if (t.normal == s.normal) dup = true;
        if (!dup) arr.spheres.push_back(std::move(s));
    }
    std::sort(arr.spheres.begin(), arr.spheres.end(),
              [](const Sphere& a, const Sphere& b) { return a.normal < b.normal; });
    return arr;
}

SphereArrangement sigma_arrangement(const Presentation& p, const CharacterLattice& lat,
                                    const std::vector<Word>& edge_elems) {
    return arrangement_from_words(p, lat, edge_elems);
}

bool sigma_contains(const SphereArrangement& arr, const CharacterClass& phi) {
    if (static_cast<int>(phi.values.size()) != arr.generator_count)
        throw semantic_error("character dimension does not match the arrangement");
    for (const Sphere& s : arr.spheres) {
        Rat pairing = 0;
        for (int g = 0; g < arr.generator_count; ++g) pairing += phi.values[g] * Rat(s.pairing[g]);
        if (pairing == 0) return false;
    }
    return true;
}

IntMatrix ZnMatrix::as_int_matrix() const {
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.at(i, j) = at(i, j);
    return m;
}

namespace {

bool unimodular_square(const ZnMatrix& m, int vertex_rank) {
    if (m.rows != m.cols || m.rows != vertex_rank) return false;
    Int d = m.as_int_matrix().det();
    return d == 1 || d == -1;
}

// M^-1 * N for unimodular M; entries stay integral.
ZnMatrix unimodular_solve(const ZnMatrix& m, const ZnMatrix& n) {
    const int r = m.rows;
    std::vector<std::vector<Rat>> aug(r, std::vector<Rat>(r + n.cols));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) aug[i][j] = Rat(m.at(i, j));
        for (int j = 0; j < n.cols; ++j) aug[i][r + j] = Rat(n.at(i, j));
    }
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int i = col; i < r; ++i)
            if (aug[i][col] != 0) { piv = i; break; }
        if (piv < 0) throw semantic_error("internal: singular matrix in collapse");
        std::swap(aug[col], aug[piv]);
        Rat d = aug[col][col];
        for (auto& x : aug[col]) x /= d;
        for (int i = 0; i < r; ++i) {
            if (i == col || aug[i][col] == 0) continue;
            Rat f = aug[i][col];
            for (int j = 0; j < static_cast<int>(aug[i].size()); ++j)
                aug[i][j] -= f * aug[col][j];
        }
    }
    ZnMatrix out(r, n.cols);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < n.cols; ++j) {
            const Rat& v = aug[i][r + j];
            if (rat_den(v) != 1)
                throw semantic_error("internal: non-integral composed inclusion");
            out.at(i, j) = rat_num(v);
        }
    return out;
}

void remark_spanning_tree(GraphOfGroupsZn& g) {
    const int nv = static_cast<int>(g.vertex_names.size());
    std::vector<int> up(nv);
    for (int i = 0; i < nv; ++i) up[i] = i;
    std::function<int(int)> find = [&](int x) { return up[x] == x ? x : up[x] = find(up[x]); };
    int synth = 0;
    for (auto& e : g.edges) {
        if (find(e.origin) != find(e.terminus)) {
            up[find(e.origin)] = find(e.terminus);
            e.tree = true;
            e.stable.clear();
        } else {
            e.tree = false;
            if (e.stable.empty()) e.stable = "s" + std::to_string(++synth);
        }
    }
}

} // namespace

GraphOfGroupsZn validate_gog(GraphOfGroupsZn g) {
    const int nv = static_cast<int>(g.vertex_names.size());
    if (nv == 0) throw semantic_error("graph of groups needs at least one vertex");
    std::vector<int> up(nv);
    for (int i = 0; i < nv; ++i) up[i] = i;
    std::function<int(int)> find = [&](int x) { return up[x] == x ? x : up[x] = find(up[x]); };
    for (const auto& e : g.edges) {
        if (e.origin < 0 || e.origin >= nv || e.terminus < 0 || e.terminus >= nv)
            throw semantic_error("edge endpoint out of range");
        if (e.edge_rank < 1) throw semantic_error("edge rank must be positive");
        auto check = [&](const ZnMatrix& m, int vr) {
            if (m.rows != vr || m.cols != e.edge_rank)
                throw semantic_error("inclusion matrix shape mismatch on edge " + e.name);
            if (smith_normal_form(m.as_int_matrix()).rank != e.edge_rank)
                throw semantic_error("inclusion matrix not injective on edge " + e.name);
        };
        check(e.inc_origin, g.vertex_ranks[e.origin]);
        check(e.inc_terminus, g.vertex_ranks[e.terminus]);
        up[find(e.origin)] = find(e.terminus);
    }
    for (int v = 1; v < nv; ++v)
        if (find(v) != find(0)) throw semantic_error("graph of groups is disconnected");
    remark_spanning_tree(g);
    return g;
}

bool is_reduced(const GraphOfGroupsZn& g) {
    for (const auto& e : g.edges) {
        if (e.origin == e.terminus) continue;
        if (unimodular_square(e.inc_origin, g.vertex_ranks[e.origin]) ||
            unimodular_square(e.inc_terminus, g.vertex_ranks[e.terminus]))
            return false;
    }
    return true;
}

GraphOfGroupsZn reduce_gog(GraphOfGroupsZn g) {
    for (bool again = true; again;) {
        again = false;
        for (size_t i = 0; i < g.edges.size(); ++i) {
            const GogEdge e = g.edges[i];
            if (e.origin == e.terminus) continue;
            // Absorb the endpoint whose inclusion is onto.
            int gone, keep;
            ZnMatrix onto, other;
            if (unimodular_square(e.inc_terminus, g.vertex_ranks[e.terminus])) {
                gone = e.terminus, keep = e.origin;
                onto = e.inc_terminus, other = e.inc_origin;
            } else if (unimodular_square(e.inc_origin, g.vertex_ranks[e.origin])) {
                gone = e.origin, keep = e.terminus;
                onto = e.inc_origin, other = e.inc_terminus;
            } else
                continue;

            g.edges.erase(g.edges.begin() + static_cast<long>(i));
            for (auto& f : g.edges) {
                auto fix = [&](int& v, ZnMatrix& inc) {
                    if (v != gone) return;
                    v = keep;
                    inc = unimodular_solve(onto, inc); // into edge group coords
                    // then push through `other` into G_keep
                    ZnMatrix composed(other.rows, inc.cols);
                    for (int r = 0; r < other.rows; ++r)
                        for (int c2 = 0; c2 < inc.cols; ++c2) {
                            Int s = 0;
                            for (int k = 0; k < other.cols; ++k) s += other.at(r, k) * inc.at(k, c2);
                            composed.at(r, c2) = s;
                        }
                    inc = composed;
                };
                fix(f.origin, f.inc_origin);
                fix(f.terminus, f.inc_terminus);
            }
            // Drop the vertex by swapping in the last one.
            int last = static_cast<int>(g.vertex_names.size()) - 1;
            if (gone != last) {
                g.vertex_names[gone] = g.vertex_names[last];
                g.vertex_ranks[gone] = g.vertex_ranks[last];
                for (auto& f : g.edges) {
                    if (f.origin == last) f.origin = gone;
                    if (f.terminus == last) f.terminus = gone;
                }
            }
            g.vertex_names.pop_back();
            g.vertex_ranks.pop_back();
            again = true;
            break;
        }
    }
    remark_spanning_tree(g);
    return g;
}

bool is_ascending_hnn(const GraphOfGroupsZn& g) {
    if (g.vertex_names.size() != 1 || g.edges.size() != 1) return false;
    const auto& e = g.edges[0];
    if (e.origin != e.terminus) return false;
    return unimodular_square(e.inc_origin, g.vertex_ranks[0]) ||
           unimodular_square(e.inc_terminus, g.vertex_ranks[0]);
}

bool gog_membership(const GraphOfGroupsZn& g, const std::vector<std::vector<Rat>>& phi_vertex) {
    if (!is_reduced(g)) throw semantic_error("graph of groups is not reduced");
    if (is_ascending_hnn(g))
        throw semantic_error("ascending HNN - criterion inapplicable");
    if (phi_vertex.size() != g.vertex_names.size())
        throw semantic_error("character needs one value vector per vertex");
    for (size_t v = 0; v < phi_vertex.size(); ++v)
        if (static_cast<int>(phi_vertex[v].size()) != g.vertex_ranks[v])
            throw semantic_error("character vector length mismatch at vertex " +
                                 g.vertex_names[v]);

    auto edge_values = [&](const ZnMatrix& inc, int v) {
        std::vector<Rat> vals(inc.cols);
        for (int c = 0; c < inc.cols; ++c)
            for (int r = 0; r < inc.rows; ++r) vals[c] += Rat(inc.at(r, c)) * phi_vertex[v][r];
        return vals;
    };

    for (const auto& e : g.edges) {
        auto vo = edge_values(e.inc_origin, e.origin);
        auto vt = edge_values(e.inc_terminus, e.terminus);
        // phi must be well defined across the edge; mismatch is a bad input.
        if (vo != vt)
            throw semantic_error("character inconsistent across edge " + e.name);
        bool nonzero = false;
        for (const Rat& x : vo)
            if (x != 0) nonzero = true;
        if (!nonzero) return false;
    }
    return true;
}

} // namespace mtor
