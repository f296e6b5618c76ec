#pragma once

#include "mtor/words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mtor {

/// Graph self-map in filtered form: ordered edge strata E1 < ... < Em with
/// f(Ei) = Ei * ui, ui an edge-path loop at terminus(Ei) through earlier
/// strata only, and every vertex fixed.
struct FilteredGraphMap {
    struct Edge {
        int origin = 0;
        int terminus = 0;
        std::string name;
    };

    int num_vertices = 0;
    std::vector<Edge> edges;                 // stratum order
    std::vector<std::vector<int>> suffixes;  // signed 1-based edge indices per edge

    int betti() const { return static_cast<int>(edges.size()) - num_vertices + 1; }
};

/// Checks all FilteredGraphMap invariants and returns the validated value.
FilteredGraphMap validate_filtered_map(FilteredGraphMap raw);

/// One-vertex filtered map realizing a triangular automorphism
/// (every alpha(xi) = xi * ui with ui over x1..x_{i-1}).
FilteredGraphMap rose_from_triangular(const FreeAutomorphism& alpha);

/// Finite presentation; relator letters are signed 1-based generator indices.
struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;
};

/// Deficiency-1 presentation of the mapping torus of a filtered graph map,
/// with the spanning-tree bookkeeping needed to rewrite edge paths and
/// vertex stable letters into the surviving generators.
struct MappingTorusPresentation {
    Presentation pres;
    int fiber_rank = 0;                  // n = first Betti number of the graph
    int stable = 0;                      // generator index of t = t_{base}
    int base_vertex = 0;
    std::vector<bool> tree_edge;         // per graph edge
    std::vector<int> edge_gen;           // per graph edge: generator index, 0 for tree edges
    std::vector<Word> vertex_stable;     // per vertex: t_v in the surviving generators
};

/// Spanning tree is breadth-first from the lowest vertex by default; a seed
/// randomizes the tree (sphere data must not depend on the choice).
MappingTorusPresentation presentation(const FilteredGraphMap& f,
                                      std::optional<unsigned> tree_seed = std::nullopt);

/// Image of an edge path under the tree collapse (tree edges vanish).
Word rewrite_path(const MappingTorusPresentation& p, const std::vector<int>& edge_path);

struct CharacterLattice {
    int b1 = 0;
    std::vector<std::vector<Int>> basis; // integer characters spanning Hom(G, Z)
    std::vector<Int> torsion;            // invariant factors > 1 of H1
};

/// H1 data from the Smith normal form of the relator exponent matrix.
CharacterLattice character_lattice(const Presentation& p);

/// Exact rational character, validated to kill every relator. `primitive` is
/// the normalized integer direction vector (entry gcd 1).
struct CharacterClass {
    std::vector<Rat> values;
    std::vector<Int> primitive;
    bool was_scaled = false; // input was not already primitive integer

    static CharacterClass make(const Presentation& p, std::vector<Rat> values);

    bool is_primitive_integer() const { return !was_scaled; }
};

Rat evaluate_character(const CharacterClass& phi, const Word& w);

/// Primitive-vector evaluation (integer), used by everything downstream that
/// requires a discrete character.
Int evaluate_primitive(const CharacterClass& phi, const Word& w);

} // namespace mtor
