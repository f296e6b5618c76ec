#pragma once

#include <string>
#include <vector>

#include "mtor/bns.hpp"
#include "mtor/numeric.hpp"
#include "mtor/torus.hpp"

namespace mtor {

/// Labeled graph describing a generalized Baumslag-Solitar group: one Z
/// vertex group per vertex, and per edge a Z edge group included via the
/// two nonzero labels a_o^{lab_o} = a_t^{lab_t} (tree edge) or
/// s^{-1} a_o^{lab_o} s = a_t^{lab_t} (loop edge with stable letter s).
struct GbsGraph {
    struct Edge {
        int origin = 0;
        int terminus = 0;
        Int lab_o = 1;
        Int lab_t = 1;
        bool tree = false;
        std::string stable;  // stable letter name, non-tree edges only
    };

    std::vector<std::string> vertex_names;
    std::vector<Edge> edges;
};

GbsGraph validate_gbs(GbsGraph g);

/// Value of the modular map on a closed edge path (signed 1-based edge
/// indices): product of exit label / entry label over the traversal.
Rat modular_map_loop(const GbsGraph& g, const std::vector<int>& loop);

struct CenterData {
    std::vector<Rat> weights;    // per vertex, positive; w_base = 1
    Rat zstar;                   // least positive rational with zstar/w_e integral
    std::vector<Int> kappa_v;    // zstar / w_v
    std::vector<Int> kappa_e;    // zstar / w_e, gcd over edges = 1
    int base_vertex = 0;
    Int center_power;            // center = <a_base ^ center_power>
};

/// Center of a non-elementary GBS group with trivial modular map.
/// Throws semantic_error for elementary graphs and for nontrivial modular
/// map (with the witness loop in the message).
CenterData center(const GbsGraph& g);

/// kappa = lcm of the kappa_v; epsilon = -kappa * chi with
/// chi = sum_v 1/kappa_v - sum_e 1/kappa_e.
std::pair<Int, Int> kappa_epsilon(const CenterData& c);

/// Independent kappa computation: index of <phi(z)> inside the subgroup of
/// Q generated by the phi(a_v). phi_vertex holds one value per vertex.
Int kappa_via_elliptic(const GbsGraph& g, const CenterData& c,
                       const std::vector<Rat>& phi_vertex);

/// First Betti number of the group: 1 + b1(graph), cross-checked against
/// the Smith-form b1 of the presentation.
int gbs_betti(const GbsGraph& g);

/// (k, n) fibers iff (k, n-1) is (kappa, epsilon) when b1 = 1, or a
/// positive multiple of it when b1 >= 2.
bool admissible_parameters(const CenterData& c, int b1, const Int& k, const Int& n);

struct GbsPresentation {
    Presentation pres;
    std::vector<int> vertex_gen;  // generator index of a_v
    std::vector<int> stable_gen;  // per edge: stable generator index, -1 for tree
};

GbsPresentation gbs_presentation(const GbsGraph& g);

struct Fibration {
    CharacterClass phi;      // on gbs_presentation generators
    Int monodromy_order;     // p * kappa
    Int fiber_rank;          // p * epsilon + 1
};

/// The fibration phi_p: p * w_v / g on vertex generators (g = generator of
/// the subgroup of Q spanned by the weights), 1 on stable letters.
/// Requires b1 >= 2, or b1 = 1 with p = 1.
Fibration enumerate_fibrations(const GbsGraph& g, const CenterData& c, const Int& p);

/// |phi(z)| for a surjective character phi; the order of the monodromy of
/// the fibration. Throws when phi(z) = 0 or phi is not surjective.
Int monodromy_order(const GbsGraph& g, const CenterData& c, const CharacterClass& phi);

/// Translation into a graph of Z^n groups with n = 1 (for the membership
/// criterion in the bns module).
GraphOfGroupsZn gbs_to_gog(const GbsGraph& g);

/// Sigma(G)^c is the single sphere S(G, z).
SphereArrangement gbs_sigma(const GbsGraph& g, const CenterData& c);

}  // namespace mtor
