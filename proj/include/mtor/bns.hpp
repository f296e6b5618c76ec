#pragma once

#include "mtor/matrix.hpp"
#include "mtor/torus.hpp"

#include <string>
#include <vector>

namespace mtor {

/// Finite set of rationally defined subspheres whose complement is Sigma(G).
/// `normal` lives in character-lattice coordinates (primitive, first nonzero
/// entry positive); `pairing` is the exponent vector of a representative
/// word over the presentation generators, so characters given on generators
/// can be paired directly.
struct Sphere {
    std::vector<Int> normal;
    std::vector<Int> pairing;
};

struct SphereArrangement {
    int ambient = 0;          // b1
    int generator_count = 0;
    std::vector<Sphere> spheres;
};

/// One sphere S(G, w) per word, deduplicated up to sign.
SphereArrangement arrangement_from_words(const Presentation& p, const CharacterLattice& lat,
                                         const std::vector<Word>& words);

/// Spheres of the edge elements of a hierarchy (Sigma(G)^c of a UPG torus).
SphereArrangement sigma_arrangement(const Presentation& p, const CharacterLattice& lat,
                                    const std::vector<Word>& edge_elems);

/// True iff phi pairs nonzero with every sphere, i.e. [phi] in Sigma(G).
bool sigma_contains(const SphereArrangement& arr, const CharacterClass& phi);

/// Finite graph of Z^n groups: per-vertex rank, per-edge injective integer
/// inclusion matrices into both endpoint groups.
struct ZnMatrix {
    int rows = 0, cols = 0;
    std::vector<Int> a;

    ZnMatrix() = default;
    ZnMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
    Int& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Int& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    IntMatrix as_int_matrix() const;
};

struct GogEdge {
    int origin = 0, terminus = 0;
    int edge_rank = 0;
    ZnMatrix inc_origin, inc_terminus;
    bool tree = false;
    std::string stable; // name of the stable letter for non-tree edges
    std::string name;
};

struct GraphOfGroupsZn {
    std::vector<std::string> vertex_names;
    std::vector<int> vertex_ranks;
    std::vector<GogEdge> edges;
};

/// Checks connectivity, injectivity of inclusions, and spanning-tree flags.
GraphOfGroupsZn validate_gog(GraphOfGroupsZn g);

/// Collapses non-loop edges carrying a surjective (|det| = 1) inclusion on a
/// side until none remain; composed inclusions stay integral.
GraphOfGroupsZn reduce_gog(GraphOfGroupsZn g);

bool is_reduced(const GraphOfGroupsZn& g);

/// Single loop edge with at least one surjective inclusion.
bool is_ascending_hnn(const GraphOfGroupsZn& g);

/// Cor-2.7-style membership for graphs of Z^n groups: [phi] in Sigma iff phi
/// is nonzero on every edge group. phi is given by its values on the vertex
/// generators (one vector per vertex). Throws for non-reduced input and for
/// ascending HNN extensions, where the criterion does not apply.
bool gog_membership(const GraphOfGroupsZn& g, const std::vector<std::vector<Rat>>& phi_vertex);

} // namespace mtor
