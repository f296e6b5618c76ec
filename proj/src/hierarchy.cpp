#include "mtor/hierarchy.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace mtor {

namespace {

// A sub-problem of the recursion: a set of strata plus its own copy of the
// suffix paths (rewritten whenever a retraction deletes edges).
struct Component {
    std::vector<int> edges; // original edge indices, ascending
    std::map<int, std::vector<int>> suffix;
};

std::set<int> component_vertices(const FilteredGraphMap& f, const Component& c) {
    std::set<int> vs;
    for (int e : c.edges) {
        vs.insert(f.edges[e].origin);
        vs.insert(f.edges[e].terminus);
    }
    return vs;
}

int component_betti(const FilteredGraphMap& f, const Component& c) {
    return static_cast<int>(c.edges.size()) - static_cast<int>(component_vertices(f, c).size()) + 1;
}

std::vector<int> reduce_path(const std::vector<int>& raw) {
    return reduce_word(raw).letters;
}

// Valence-1 pruning. An occurrence of a dangling edge in a suffix path must
// return through the same edge immediately, so dropping its letters and
// freely reducing is a homotopy.
void prune(const FilteredGraphMap& f, Component& c) {
    for (bool again = true; again;) {
        again = false;
        std::map<int, int> valence;
        for (int e : c.edges) {
            ++valence[f.edges[e].origin];
            ++valence[f.edges[e].terminus];
        }
        for (auto [v, deg] : valence) {
            if (deg != 1) continue;
            int dangling = -1;
            for (int e : c.edges)
                if (f.edges[e].origin == v || f.edges[e].terminus == v) dangling = e;
            c.edges.erase(std::find(c.edges.begin(), c.edges.end(), dangling));
            c.suffix.erase(dangling);
            for (auto& [e, path] : c.suffix) {
                std::vector<int> cleaned;
                for (int l : path)
                    if (std::abs(l) - 1 != dangling) cleaned.push_back(l);
                path = reduce_path(cleaned);
            }
            again = true;
            break;
        }
    }
}

Component whole_graph(const FilteredGraphMap& f) {
    Component c;
    for (int i = 0; i < static_cast<int>(f.edges.size()); ++i) {
        c.edges.push_back(i);
        c.suffix[i] = reduce_path(f.suffixes[i]);
    }
    return c;
}

struct Builder {
    const FilteredGraphMap& f;
    const MappingTorusPresentation& p;
    HierarchyTree tree;

    // Generating set of the sub-mapping-torus carried by a component:
    // pi1 loops of the component graph based at its lowest vertex, plus the
    // stable letter of that vertex, all as words in the global generators.
    std::vector<Word> component_gens(const Component& c) {
        auto vs = component_vertices(f, c);
        int base = *vs.begin();

        std::map<int, std::pair<int, int>> parent; // vertex -> (parent vertex, signed edge)
        std::set<int> local_tree;
        {
            std::set<int> seen = {base};
            for (bool progress = true; progress;) {
                progress = false;
                for (int e : c.edges) {
                    int o = f.edges[e].origin, t = f.edges[e].terminus;
                    if (seen.count(o) && !seen.count(t)) {
                        parent[t] = {o, e + 1};
                        local_tree.insert(e);
                        seen.insert(t);
                        progress = true;
                    } else if (seen.count(t) && !seen.count(o)) {
                        parent[o] = {t, -(e + 1)};
                        local_tree.insert(e);
                        seen.insert(o);
                        progress = true;
                    }
                }
            }
        }
        auto path_from_base = [&](int v) {
            std::vector<int> rev;
            while (v != base) {
                auto [pv, se] = parent.at(v);
                rev.push_back(se);
                v = pv;
            }
            std::reverse(rev.begin(), rev.end());
            return rev;
        };

        std::vector<Word> gens;
        for (int e : c.edges) {
            if (local_tree.count(e)) continue;
            std::vector<int> loop = path_from_base(f.edges[e].origin);
            loop.push_back(e + 1);
            auto back = path_from_base(f.edges[e].terminus);
            std::reverse(back.begin(), back.end());
            for (int l : back) loop.push_back(-l);
            gens.push_back(rewrite_path(p, reduce_path(loop)));
        }
        gens.push_back(p.vertex_stable[base]);
        return gens;
    }

    int build_leaf(const Component& c) {
        auto vs = component_vertices(f, c);
        for (int v : vs) {
            int deg = 0;
            for (int e : c.edges)
                deg += (f.edges[e].origin == v) + (f.edges[e].terminus == v);
            if (deg != 2) throw semantic_error("internal: rank-1 component is not a circle");
        }
        int base = *vs.begin();

        // Traverse the circle once.
        std::vector<int> path;
        std::set<int> used;
        int cur = base;
        while (used.size() < c.edges.size()) {
            bool moved = false;
            for (int e : c.edges) {
                if (used.count(e)) continue;
                if (f.edges[e].origin == cur) {
                    path.push_back(e + 1);
                    cur = f.edges[e].terminus;
                } else if (f.edges[e].terminus == cur) {
                    path.push_back(-(e + 1));
                    cur = f.edges[e].origin;
                } else
                    continue;
                used.insert(e);
                moved = true;
                break;
            }
            if (!moved) throw semantic_error("internal: circle traversal failed");
        }
        if (cur != base) throw semantic_error("internal: circle traversal did not close");

        // Z^2 certificate: the induced map fixes the circle loop on the nose.
        std::vector<int> image;
        for (int l : path) {
            int e = std::abs(l) - 1;
            const auto& u = c.suffix.at(e);
            if (l > 0) {
                image.push_back(l);
                image.insert(image.end(), u.begin(), u.end());
            } else {
                for (auto it = u.rbegin(); it != u.rend(); ++it) image.push_back(-*it);
                image.push_back(l);
            }
        }
        if (reduce_path(image) != path)
            throw semantic_error("internal: leaf is not Z^2 (circle not fixed by the map)");

        HierarchyNode node;
        node.kind = HierarchyNode::Kind::Leaf;
        node.leaf_vertex = base;
        node.leaf_loop = rewrite_path(p, path);
        node.leaf_stable = p.vertex_stable[base];
        node.gens = {node.leaf_loop, node.leaf_stable};
        tree.nodes.push_back(std::move(node));
        return static_cast<int>(tree.nodes.size()) - 1;
    }

    int build(Component c) {
        prune(f, c);
        if (c.edges.empty()) throw semantic_error("internal: empty component in hierarchy");
        if (component_betti(f, c) == 1) return build_leaf(c);

        int top = c.edges.back();
        HierarchyNode node;
        node.top_edge = top;
        node.edge_element = p.vertex_stable[f.edges[top].origin];
        node.gens = component_gens(c);

        Component rest = c;
        rest.edges.pop_back();
        rest.suffix.erase(top);

        // Connectivity after deleting the top stratum decides HNN vs amalgam.
        std::map<int, int> root;
        {
            auto vs = component_vertices(f, rest);
            std::map<int, int> up;
            for (int v : vs) up[v] = v;
            std::function<int(int)> find = [&](int x) {
                return up[x] == x ? x : up[x] = find(up[x]);
            };
            for (int e : rest.edges) up[find(f.edges[e].origin)] = find(f.edges[e].terminus);
            for (int v : vs) root[v] = find(v);
        }
        std::map<int, Component> parts;
        for (int e : rest.edges) {
            auto& part = parts[root.at(f.edges[e].origin)];
            part.edges.push_back(e);
            part.suffix[e] = rest.suffix.at(e);
        }
        if (parts.size() == 1)
            node.kind = HierarchyNode::Kind::Hnn;
        else if (parts.size() == 2)
            node.kind = HierarchyNode::Kind::Amalgam;
        else
            throw semantic_error("internal: removing one edge produced >2 components");

        int id = static_cast<int>(tree.nodes.size());
        tree.nodes.push_back(std::move(node));
        ++tree.splitting_count;
        for (auto& [r, part] : parts) {
            int child = build(std::move(part));
            tree.nodes[id].children.push_back(child);
        }
        return id;
    }
};

} // namespace

FilteredGraphMap normalize_core(const FilteredGraphMap& f) {
    Component c = whole_graph(f);
    prune(f, c);

    std::map<int, int> edge_renum;   // old -> new (1-based)
    for (int e : c.edges) edge_renum[e] = static_cast<int>(edge_renum.size()) + 1;
    std::map<int, int> vert_renum;
    for (int v : component_vertices(f, c)) vert_renum[v] = static_cast<int>(vert_renum.size());

    FilteredGraphMap out;
    out.num_vertices = static_cast<int>(vert_renum.size());
    for (int e : c.edges) {
        out.edges.push_back({vert_renum.at(f.edges[e].origin), vert_renum.at(f.edges[e].terminus),
                             f.edges[e].name});
        std::vector<int> path;
        for (int l : c.suffix.at(e)) {
            int ne = edge_renum.at(std::abs(l) - 1);
            path.push_back(l > 0 ? ne : -ne);
        }
        out.suffixes.push_back(std::move(path));
    }
    return validate_filtered_map(std::move(out));
}

HierarchyTree build_hierarchy(const FilteredGraphMap& f, const MappingTorusPresentation& p) {
    Builder b{f, p, {}};
    b.tree.root = b.build(whole_graph(f));

    if (b.tree.splitting_count != f.betti() - 1)
        throw semantic_error("internal: splitting count differs from rank - 1");
    for (const auto& node : b.tree.nodes) {
        if (node.kind == HierarchyNode::Kind::Leaf) continue;
        Int t_exp = node.edge_element.exponent_vector(
            static_cast<int>(p.pres.generators.size()))[p.stable - 1];
        if (t_exp == 0)
            throw semantic_error("internal: edge element lies in the fiber");
    }
    return b.tree;
}

std::vector<Word> edge_elements(const HierarchyTree& h) {
    std::vector<std::pair<int, Word>> by_stratum;
    for (const auto& node : h.nodes)
        if (node.kind != HierarchyNode::Kind::Leaf)
            by_stratum.emplace_back(node.top_edge, node.edge_element);
    std::sort(by_stratum.begin(), by_stratum.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Word> out;
    for (auto& [s, w] : by_stratum) out.push_back(std::move(w));
    return out;
}

} // namespace mtor
