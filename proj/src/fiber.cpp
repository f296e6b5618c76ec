#include "mtor/fiber.hpp"

#include <cstdlib>
#include <sstream>

namespace mtor {

namespace {

// Evaluation through the exact values (the restriction of the ambient
// primitive character), demanding an integer result.
Int eval_int(const CharacterClass& phi, const Word& w) {
    Rat v = evaluate_character(phi, w);
    if (rat_den(v) != 1)
        throw semantic_error("discrete (integer-valued) character required");
    return rat_num(v);
}

}  // namespace

std::optional<Int> relative_index(const CharacterClass& phi,
                                  const std::vector<Word>& words,
                                  const Presentation& pres) {
    Int g = 0;
    for (const Word& w : words) {
        for (int letter : w.letters)
            if (static_cast<std::size_t>(std::abs(letter)) > pres.generators.size())
                throw semantic_error("word letter outside generator range");
        g = int_gcd(g, eval_int(phi, w));
    }
    if (g == 0) return std::nullopt;
    return g;
}

FiberVerdict classify(const MappingTorusPresentation& pres,
                      const HierarchyTree& tree, const CharacterClass& phi,
                      const Int& unipotent_power) {
    if (unipotent_power < 1)
        throw semantic_error("unipotent power must be positive");
    std::vector<Word> elems = edge_elements(tree);
    FiberVerdict v;
    v.k = unipotent_power;
    Int sum = 0;
    for (std::size_t i = 0; i < elems.size(); i++) {
        Int val = eval_int(phi, elems[i]);
        if (val == 0) {
            v.in_sigma = false;
            v.indices.clear();
            v.witness = i;
            std::ostringstream os;
            os << "character vanishes on edge element "
               << word_to_string(elems[i], pres.pres.generators)
               << "; kernel virtually surjects onto F-infinity and is not "
                  "finitely generated";
            v.note = os.str();
            return v;
        }
        if (val < 0) val = -val;
        v.indices.push_back(val);
        sum += val;
    }
    v.in_sigma = true;
    if (sum % unipotent_power != 0)
        throw semantic_error(
            "edge-element index sum not divisible by the unipotent power");
    v.fiber_rank = Int(1) + sum / unipotent_power;
    v.note = "character and its negative both avoid every sphere; the kernel "
             "is a finitely generated fiber";
    return v;
}

namespace {

struct Counts {
    Int betti;
    Int zcount;
    Int d;  // gcd of phi over the node's generators
};

Int node_gcd(const HierarchyNode& node, const CharacterClass& phi) {
    Int g = 0;
    for (const Word& w : node.gens) g = int_gcd(g, eval_int(phi, w));
    return g;
}

Counts count(const HierarchyTree& tree, const CharacterClass& phi,
             int node_idx, std::vector<KernelNodeReport>& reports) {
    const HierarchyNode& node = tree.nodes[static_cast<std::size_t>(node_idx)];
    KernelNodeReport rep;
    rep.node = static_cast<std::size_t>(node_idx);

    if (node.kind == HierarchyNode::Kind::Leaf) {
        rep.kind = "leaf";
        rep.z_contribution = 1;
        reports.push_back(rep);
        Int d = node_gcd(node, phi);
        if (d == 0)
            throw semantic_error("character vanishes on a Z^2 leaf");
        return {Int(0), Int(1), d};
    }

    Int d = node_gcd(node, phi);
    if (d == 0) throw semantic_error("character vanishes on a vertex group");
    Int t_val = eval_int(phi, node.edge_element);
    if (t_val < 0) t_val = -t_val;
    if (t_val == 0)
        throw semantic_error("orbit counting requires a fibered character");
    if (t_val % d != 0)
        throw semantic_error("edge index not divisible by the node gcd");
    Int edge_orbits = t_val / d;

    Int betti, zcount;
    Int vertex_orbits = 0;
    if (node.kind == HierarchyNode::Kind::Hnn) {
        rep.kind = "hnn";
        Counts c = count(tree, phi, node.children.at(0), reports);
        if (c.d % d != 0)
            throw semantic_error("child gcd not divisible by the node gcd");
        Int vo = c.d / d;  // vertex-group orbits of ker phi in the tree
        vertex_orbits = vo;
        betti = edge_orbits - vo + 1 + vo * c.betti;
        zcount = vo * c.zcount;
    } else {
        rep.kind = "amalgam";
        betti = edge_orbits + 1;
        zcount = 0;
        for (int child : node.children) {
            Counts c = count(tree, phi, child, reports);
            if (c.d % d != 0)
                throw semantic_error("child gcd not divisible by the node gcd");
            Int vo = c.d / d;
            vertex_orbits += vo;
            betti += vo * c.betti - vo;
            zcount += vo * c.zcount;
        }
    }
    rep.vertex_orbits = vertex_orbits;
    rep.edge_orbits = edge_orbits;
    rep.betti_contribution = betti;
    rep.z_contribution = zcount;
    reports.push_back(rep);
    return {betti, zcount, d};
}

}  // namespace

KernelDecomposition kernel_decomposition(const MappingTorusPresentation& pres,
                                         const HierarchyTree& tree,
                                         const CharacterClass& phi) {
    for (const Word& e : edge_elements(tree))
        if (eval_int(phi, e) == 0)
            throw semantic_error(
                "kernel decomposition requires a fibered character");
    (void)pres;
    KernelDecomposition out;
    Counts c = count(tree, phi, tree.root, out.nodes);
    out.betti = c.betti;
    out.zcount = c.zcount;
    out.rank = c.betti + c.zcount;
    return out;
}

}  // namespace mtor
