#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mtor/hierarchy.hpp"
#include "mtor/numeric.hpp"
#include "mtor/torus.hpp"
#include "mtor/words.hpp"

namespace mtor {

// gcd of the |phi| values of the given words ("relative index").
// Returns nullopt when every word is killed by phi (infinite index).
std::optional<Int> relative_index(const CharacterClass& phi,
                                  const std::vector<Word>& words,
                                  const Presentation& pres);

struct FiberVerdict {
    bool in_sigma = false;
    Int k = 1;                 // least unipotent power used
    std::vector<Int> indices;  // |phi(t_i)| per edge element (InSigma)
    // Index (in edge_elements order) of a sphere containing phi, when not
    // in sigma, plus a human-readable note about the kernel.
    std::optional<std::size_t> witness;
    std::string note;
    // Rank of ker phi when phi fibers: 1 + (sum of indices)/k.
    std::optional<Int> fiber_rank;
};

// Decide whether [phi] lies in the BNS invariant and, if so, compute the
// rank of ker phi.  `pres` and `tree` describe a filtered representative
// of the k-th power of the monodromy (k = least unipotent power); phi's
// *values* must already be the restriction of a primitive character of
// the full group, i.e. its value on the presentation's stable letter is
// k times the value on the original stable letter.  Evaluation therefore
// uses the values, never the re-normalized primitive vector.
FiberVerdict classify(const MappingTorusPresentation& pres,
                      const HierarchyTree& tree, const CharacterClass& phi,
                      const Int& unipotent_power);

struct KernelNodeReport {
    std::size_t node = 0;      // index into HierarchyTree::nodes
    std::string kind;          // "hnn", "amalgam", "leaf"
    Int vertex_orbits = 0;     // ker-phi orbits of vertex groups
    Int edge_orbits = 0;       // ker-phi orbits of edge groups (0 for leaves)
    Int betti_contribution = 0;
    Int z_contribution = 0;
};

struct KernelDecomposition {
    std::vector<KernelNodeReport> nodes;
    Int betti = 0;   // free part contributed by the induced graphs of groups
    Int zcount = 0;  // surviving Z directions of the Z^2 leaves
    Int rank = 0;    // betti + zcount = rank of ker phi
};

// Orbit-counting decomposition of ker phi along the hierarchy (unipotent
// case, k = 1).  Only valid when phi fibers; throws semantic_error
// otherwise.
KernelDecomposition kernel_decomposition(const MappingTorusPresentation& pres,
                                         const HierarchyTree& tree,
                                         const CharacterClass& phi);

}  // namespace mtor
