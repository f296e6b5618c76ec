#pragma once

#include "mtor/torus.hpp"

#include <vector>

namespace mtor {

/// Rooted splitting tree of the mapping torus along the filtration.
/// Non-leaf nodes carry an HNN or amalgam splitting over Z with an explicit
/// edge element; leaves carry Z^2 pieces (rank-1 graph component plus its
/// vertex stable letter). All words live in the presentation generators.
struct HierarchyNode {
    enum class Kind { Hnn, Amalgam, Leaf };
    Kind kind = Kind::Leaf;

    // splitting data
    int top_edge = -1;        // graph edge index of the stratum being removed
    Word edge_element;        // t_{origin(top_edge)}
    std::vector<int> children;

    // leaf data
    int leaf_vertex = -1;
    Word leaf_loop;
    Word leaf_stable;

    // generating set of this node's group (used for orbit counting)
    std::vector<Word> gens;
};

struct HierarchyTree {
    std::vector<HierarchyNode> nodes;
    int root = -1;
    int splitting_count = 0;
};

/// Deformation-retracts dangling trees away (valence-1 pruning), rewriting
/// suffix paths through the retraction. Idempotent; pi1 unchanged.
FilteredGraphMap normalize_core(const FilteredGraphMap& f);

/// Recursive top-stratum decomposition: a non-separating top edge yields an
/// HNN node, a separating one an amalgam; rank-1 components become Z^2
/// leaves. Requires a validated, core map. Exactly betti - 1 splittings.
HierarchyTree build_hierarchy(const FilteredGraphMap& f, const MappingTorusPresentation& p);

/// Edge elements in stratum order of the splittings they came from.
std::vector<Word> edge_elements(const HierarchyTree& h);

} // namespace mtor
