#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "mtor/alexander.hpp"
#include "mtor/bns.hpp"
#include "mtor/fiber.hpp"
#include "mtor/gbs.hpp"
#include "mtor/hierarchy.hpp"
#include "mtor/io.hpp"
#include "mtor/numeric.hpp"
#include "mtor/torus.hpp"
#include "mtor/words.hpp"

using json = nlohmann::json;
using namespace mtor;

namespace {

std::string int_str(const Int& v) { return v.str(); }

json int_vec_json(const std::vector<Int>& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.str());
    return a;
}

// Everything the analyze/fiber/alexander/sigma commands share for
// automorphism and filtered-map inputs.
struct Analysis {
    Int k = 1;                       // least unipotent power
    bool powered = false;            // true when the k-th power was taken
    FilteredGraphMap core;           // filtered representative (of the power)
    MappingTorusPresentation mt;     // presentation of the power's torus
    HierarchyTree tree;
    CharacterLattice lattice;        // of mt.pres
    SphereArrangement arrangement;
    Presentation original;           // presentation of the input group
};

Presentation torus_presentation_of(const FreeAutomorphism& a) {
    Presentation p;
    for (int i = 1; i <= a.rank; i++)
        p.generators.push_back("x" + std::to_string(i));
    p.generators.push_back("t");
    int t = a.rank + 1;
    for (int i = 1; i <= a.rank; i++) {
        std::vector<int> raw = {-t, i, t};
        Word inv = a.images[static_cast<std::size_t>(i - 1)].inverse();
        raw.insert(raw.end(), inv.letters.begin(), inv.letters.end());
        p.relators.push_back(reduce_word(raw, t));
    }
    return p;
}

Analysis analyze_input(const InputDocument& doc, std::optional<unsigned> seed) {
    Analysis a;
    if (doc.kind == InputDocument::Kind::FilteredMap) {
        a.core = normalize_core(validate_filtered_map(doc.map));
        a.mt = presentation(a.core, seed);
        a.original = a.mt.pres;
    } else if (doc.kind == InputDocument::Kind::Automorphism) {
        const FreeAutomorphism& alpha = doc.automorphism;
        std::optional<int> k = least_unipotent_power(abelianization_matrix(alpha));
        if (!k)
            throw semantic_error(
                "no power of the automorphism is unipotent on homology; the "
                "growth is not polynomial");
        a.k = *k;
        FreeAutomorphism rep =
            *k == 1 ? alpha : power(alpha, static_cast<unsigned>(*k));
        a.powered = *k > 1;
        a.core = normalize_core(rose_from_triangular(rep));
        a.mt = presentation(a.core, seed);
        a.original = torus_presentation_of(alpha);
    } else {
        throw semantic_error("this command expects an automorphism or "
                             "filtered graph map input");
    }
    a.tree = build_hierarchy(a.core, a.mt);
    a.lattice = character_lattice(a.mt.pres);
    a.arrangement = sigma_arrangement(a.mt.pres, a.lattice, edge_elements(a.tree));
    return a;
}

// Character on the original group, plus its restriction to the power's
// mapping torus (stable letter value multiplied by k).
struct CharacterPair {
    CharacterClass on_original;
    CharacterClass on_power;
    bool rescaled = false;
};

CharacterPair make_characters(const Analysis& a, const std::string& phi_text) {
    std::vector<Rat> vals = parse_phi_assignment(phi_text, a.original.generators);
    CharacterClass orig = CharacterClass::make(a.original, vals);
    CharacterPair out{orig, orig, orig.was_scaled};
    if (orig.was_scaled) {
        // Rank formulas need a surjective character: continue with the
        // primitive representative of the same projective class.
        std::vector<Rat> prim(orig.primitive.size());
        for (std::size_t i = 0; i < prim.size(); i++) prim[i] = Rat(orig.primitive[i]);
        out.on_original = CharacterClass::make(a.original, prim);
    }
    std::vector<Rat> sub = out.on_original.values;
    if (a.mt.pres.generators.size() != sub.size())
        throw semantic_error("generator mismatch between the group and its "
                             "unipotent power");
    sub[static_cast<std::size_t>(a.mt.stable - 1)] *= Rat(a.k);
    out.on_power = CharacterClass::make(a.mt.pres, sub);
    return out;
}

json hierarchy_json(const Analysis& a, int node_idx) {
    const HierarchyNode& n = a.tree.nodes[static_cast<std::size_t>(node_idx)];
    json j;
    const auto& gens = a.mt.pres.generators;
    if (n.kind == HierarchyNode::Kind::Leaf) {
        j["kind"] = "leaf";
        j["vertex"] = n.leaf_vertex;
        j["loop"] = word_to_string(n.leaf_loop, gens);
        j["stable"] = word_to_string(n.leaf_stable, gens);
    } else {
        j["kind"] = n.kind == HierarchyNode::Kind::Hnn ? "hnn" : "amalgam";
        j["top_edge"] = a.core.edges[static_cast<std::size_t>(n.top_edge)].name;
        j["edge_element"] = word_to_string(n.edge_element, gens);
        j["children"] = json::array();
        for (int c : n.children) j["children"].push_back(hierarchy_json(a, c));
    }
    return j;
}

void print_hierarchy(std::ostream& os, const Analysis& a, int node_idx, int depth) {
    const HierarchyNode& n = a.tree.nodes[static_cast<std::size_t>(node_idx)];
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const auto& gens = a.mt.pres.generators;
    if (n.kind == HierarchyNode::Kind::Leaf) {
        os << pad << "leaf: Z^2 at vertex " << n.leaf_vertex + 1 << ", loop "
           << word_to_string(n.leaf_loop, gens) << ", stable "
           << word_to_string(n.leaf_stable, gens) << "\n";
        return;
    }
    os << pad << (n.kind == HierarchyNode::Kind::Hnn ? "hnn" : "amalgam")
       << " over Z: top edge "
       << a.core.edges[static_cast<std::size_t>(n.top_edge)].name
       << ", edge element " << word_to_string(n.edge_element, gens) << "\n";
    for (int c : n.children) print_hierarchy(os, a, c, depth + 1);
}

json presentation_json(const Presentation& p) {
    json j;
    j["generators"] = p.generators;
    j["relators"] = json::array();
    for (const Word& r : p.relators)
        j["relators"].push_back(word_to_string(r, p.generators));
    return j;
}

json arrangement_json(const SphereArrangement& arr) {
    json j;
    j["ambient"] = arr.ambient;
    j["spheres"] = json::array();
    for (const Sphere& s : arr.spheres) {
        json e;
        e["normal"] = int_vec_json(s.normal);
        e["pairing"] = int_vec_json(s.pairing);
        j["spheres"].push_back(e);
    }
    return j;
}

void print_presentation(std::ostream& os, const Presentation& p) {
    os << "generators:";
    for (const auto& g : p.generators) os << " " << g;
    os << "\nrelators:\n";
    for (const Word& r : p.relators)
        os << "  " << word_to_string(r, p.generators) << "\n";
}

void print_arrangement(std::ostream& os, const SphereArrangement& arr) {
    os << "sphere arrangement in S^" << arr.ambient - 1 << " ("
       << arr.spheres.size() << (arr.spheres.size() == 1 ? " sphere" : " spheres")
       << "):\n";
    for (const Sphere& s : arr.spheres) {
        os << "  normal (";
        for (std::size_t i = 0; i < s.normal.size(); i++)
            os << (i ? ", " : "") << s.normal[i];
        os << "), pairing (";
        for (std::size_t i = 0; i < s.pairing.size(); i++)
            os << (i ? ", " : "") << s.pairing[i];
        os << ")\n";
    }
}

int cmd_analyze(const std::string& file, std::optional<unsigned> seed,
                bool as_json) {
    Analysis a = analyze_input(load_document(file), seed);
    std::vector<Word> elems = edge_elements(a.tree);
    if (as_json) {
        json j;
        j["command"] = "analyze";
        j["fiber_rank_of_power"] = a.mt.fiber_rank;
        j["unipotent_power"] = int_str(a.k);
        j["presentation"] = presentation_json(a.mt.pres);
        j["hierarchy"] = hierarchy_json(a, a.tree.root);
        j["edge_elements"] = json::array();
        for (const Word& w : elems)
            j["edge_elements"].push_back(word_to_string(w, a.mt.pres.generators));
        j["b1"] = a.lattice.b1;
        j["torsion"] = int_vec_json(a.lattice.torsion);
        j["arrangement"] = arrangement_json(a.arrangement);
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout << "fiber rank n = " << a.mt.fiber_rank
              << ", least unipotent power k = " << a.k << "\n";
    if (a.powered)
        std::cout << "(analysis below describes the mapping torus of the "
                  << a.k << "-th power; its stable letter is t^" << a.k
                  << " in the input group)\n";
    print_presentation(std::cout, a.mt.pres);
    std::cout << "hierarchy (" << a.tree.splitting_count << " splittings):\n";
    print_hierarchy(std::cout, a, a.tree.root, 1);
    std::cout << "edge elements:";
    for (const Word& w : elems)
        std::cout << " " << word_to_string(w, a.mt.pres.generators);
    std::cout << "\nb1 = " << a.lattice.b1 << "\n";
    print_arrangement(std::cout, a.arrangement);
    return 0;
}

int cmd_fiber(const std::string& file, const std::string& phi_text,
              std::optional<unsigned> seed, bool oracle, bool as_json) {
    Analysis a = analyze_input(load_document(file), seed);
    CharacterPair phi = make_characters(a, phi_text);
    FiberVerdict v = classify(a.mt, a.tree, phi.on_power, a.k);

    std::optional<KernelDecomposition> dec;
    if (v.in_sigma && a.k == 1)
        dec = kernel_decomposition(a.mt, a.tree, phi.on_power);

    std::optional<Int> oracle_r;
    if (oracle && v.in_sigma)
        oracle_r = oracle_rank(a.original, phi.on_original.primitive);

    if (as_json) {
        json j;
        j["command"] = "fiber";
        j["k"] = int_str(v.k);
        j["rescaled"] = phi.rescaled;
        j["in_sigma"] = v.in_sigma;
        j["note"] = v.note;
        if (v.in_sigma) {
            j["indices"] = int_vec_json(v.indices);
            j["rank"] = int_str(*v.fiber_rank);
        } else {
            j["witness"] = *v.witness;
        }
        if (dec) {
            j["decomposition"] = {{"betti", int_str(dec->betti)},
                                  {"z_leaves", int_str(dec->zcount)},
                                  {"rank", int_str(dec->rank)}};
        }
        if (oracle_r) j["oracle_rank"] = int_str(*oracle_r);
        std::cout << j.dump(2) << "\n";
    } else {
        if (phi.rescaled)
            std::cout << "note: character was rescaled to the primitive "
                         "representative of its class\n";
        std::cout << "k = " << v.k << "\n";
        if (!v.in_sigma) {
            std::cout << "not in Sigma(G); " << v.note << "\n";
        } else {
            std::cout << "in Sigma(G) (and so is -phi); indices:";
            for (const Int& i : v.indices) std::cout << " " << i;
            std::cout << "\nrank " << *v.fiber_rank << "\n";
            if (dec)
                std::cout << "kernel decomposition: betti " << dec->betti
                          << " + " << dec->zcount << " Z-leaf directions = rank "
                          << dec->rank << "\n";
            if (oracle_r) {
                bool agree = *oracle_r == *v.fiber_rank;
                std::cout << "rank: hierarchy=" << *v.fiber_rank
                          << " oracle=" << *oracle_r
                          << (agree ? " (agree)" : " (DISAGREE)") << "\n";
            }
        }
    }
    if (dec && dec->rank != *v.fiber_rank)
        throw semantic_error("decomposition rank disagrees with the index formula");
    if (oracle_r && *oracle_r != *v.fiber_rank)
        throw semantic_error("Alexander degree disagrees with the fiber rank");
    return 0;
}

int cmd_alexander(const std::string& file, const std::string& phi_text,
                  bool as_json) {
    InputDocument doc = load_document(file);
    Presentation pres;
    if (doc.kind == InputDocument::Kind::Gbs)
        pres = gbs_presentation(validate_gbs(doc.gbs)).pres;
    else
        pres = analyze_input(doc, std::nullopt).original;
    std::vector<Rat> vals = parse_phi_assignment(phi_text, pres.generators);
    CharacterClass phi = CharacterClass::make(pres, vals);
    AlexanderResult r = alexander_polynomial(pres, phi.primitive);
    if (as_json) {
        json j;
        j["command"] = "alexander";
        j["degenerate"] = r.degenerate;
        j["polynomial"] = laurent_to_string(r.polynomial);
        j["degree"] = r.degree;
        std::cout << j.dump(2) << "\n";
    } else if (r.degenerate) {
        std::cout << "Alexander polynomial: 0 (degenerate)\n";
    } else {
        std::cout << "Alexander polynomial: " << laurent_to_string(r.polynomial)
                  << "\ndegree " << r.degree << "\n";
    }
    return 0;
}

int cmd_sigma(const std::string& file, const std::string& phi_text,
              std::optional<unsigned> seed, bool as_json) {
    InputDocument doc = load_document(file);
    json j;
    j["command"] = "sigma";

    if (doc.kind == InputDocument::Kind::Gog) {
        GraphOfGroupsZn g = validate_gog(doc.gog);
        GraphOfGroupsZn red = reduce_gog(g);
        // Per-vertex generator names v.1 .. v.rank for the phi assignment.
        std::vector<std::string> names;
        for (std::size_t v = 0; v < red.vertex_names.size(); v++)
            for (int i = 1; i <= red.vertex_ranks[v]; i++)
                names.push_back(red.vertex_names[v] + "." + std::to_string(i));
        if (phi_text.empty()) {
            if (as_json) {
                j["reduced_vertices"] = red.vertex_names;
                j["ascending_hnn"] = is_ascending_hnn(red);
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "reduced graph of groups: "
                          << red.vertex_names.size() << " vertices, "
                          << red.edges.size() << " edges\n"
                          << "character generators:";
                for (const auto& n : names) std::cout << " " << n;
                std::cout << "\n";
            }
            return 0;
        }
        std::vector<Rat> flat = parse_phi_assignment(phi_text, names);
        std::vector<std::vector<Rat>> per_vertex;
        std::size_t at = 0;
        for (std::size_t v = 0; v < red.vertex_names.size(); v++) {
            per_vertex.emplace_back(flat.begin() + static_cast<long>(at),
                                    flat.begin() + static_cast<long>(at) +
                                        red.vertex_ranks[v]);
            at += static_cast<std::size_t>(red.vertex_ranks[v]);
        }
        bool in = gog_membership(red, per_vertex);
        if (as_json) {
            j["in_sigma"] = in;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << (in ? "in Sigma(G)" : "not in Sigma(G)") << "\n";
        }
        return 0;
    }

    SphereArrangement arr;
    Presentation pres;
    if (doc.kind == InputDocument::Kind::Gbs) {
        GbsGraph g = validate_gbs(doc.gbs);
        arr = gbs_sigma(g, center(g));
        pres = gbs_presentation(g).pres;
    } else {
        Analysis a = analyze_input(doc, seed);
        arr = a.arrangement;
        pres = a.mt.pres;
        if (!phi_text.empty() && a.powered)
            throw semantic_error("membership for a non-unipotent automorphism "
                                 "goes through the fiber command");
    }
    if (as_json) {
        j["arrangement"] = arrangement_json(arr);
        if (!phi_text.empty()) {
            CharacterClass phi = CharacterClass::make(
                pres, parse_phi_assignment(phi_text, pres.generators));
            j["in_sigma"] = sigma_contains(arr, phi);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        print_arrangement(std::cout, arr);
        if (!phi_text.empty()) {
            CharacterClass phi = CharacterClass::make(
                pres, parse_phi_assignment(phi_text, pres.generators));
            std::cout << (sigma_contains(arr, phi) ? "in Sigma(G)"
                                                   : "not in Sigma(G)")
                      << "\n";
        }
    }
    return 0;
}

int cmd_gbs(const std::string& file, std::optional<long> enumerate_p, int bound,
            bool as_json) {
    InputDocument doc = load_document(file);
    if (doc.kind != InputDocument::Kind::Gbs)
        throw semantic_error("gbs expects a [gbs] input");
    GbsGraph g = validate_gbs(doc.gbs);

    json j;
    j["command"] = "gbs";
    CenterData c;
    try {
        c = center(g);
    } catch (const semantic_error& e) {
        if (as_json) {
            j["center"] = nullptr;
            j["reason"] = e.what();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << e.what()
                      << "\ncenter trivial, Sigma(G) is empty\n";
        }
        return 0;  // a valid answer, not a failure
    }

    auto [kappa, eps] = kappa_epsilon(c);
    int b1 = gbs_betti(g);

    if (as_json) {
        j["modular_map"] = "trivial";
        json wts = json::array();
        for (const Rat& w : c.weights) wts.push_back(rat_to_string(w));
        j["weights"] = wts;
        j["zstar"] = rat_to_string(c.zstar);
        j["center"] = g.vertex_names[static_cast<std::size_t>(c.base_vertex)] +
                      "^" + c.center_power.str();
        j["kappa"] = int_str(kappa);
        j["epsilon"] = int_str(eps);
        j["b1"] = b1;
        json adm = json::array();
        for (int k = 1; k <= bound; k++)
            for (int n = 1; n <= bound; n++)
                if (admissible_parameters(c, b1, k, n))
                    adm.push_back({{"k", k}, {"n", n}});
        j["admissible"] = adm;
    } else {
        std::cout << "modular map trivial on all loops\n"
                  << "center = <"
                  << g.vertex_names[static_cast<std::size_t>(c.base_vertex)]
                  << "^" << c.center_power << ">\n"
                  << "kappa = " << kappa << ", epsilon = " << eps
                  << ", b1 = " << b1 << "\n"
                  << "admissible (k, n) with k, n <= " << bound << ":";
        for (int k = 1; k <= bound; k++)
            for (int n = 1; n <= bound; n++)
                if (admissible_parameters(c, b1, k, n))
                    std::cout << " (" << k << "," << n << ")";
        std::cout << "\n";
    }

    if (enumerate_p) {
        Fibration f = enumerate_fibrations(g, c, Int(*enumerate_p));
        GbsPresentation gp = gbs_presentation(g);
        if (as_json) {
            json fj;
            json vals = json::array();
            for (const Rat& v : f.phi.values) vals.push_back(rat_to_string(v));
            fj["phi"] = vals;
            fj["generators"] = gp.pres.generators;
            fj["monodromy_order"] = int_str(f.monodromy_order);
            fj["fiber_rank"] = int_str(f.fiber_rank);
            j["fibration"] = fj;
        } else {
            std::cout << "fibration phi_" << *enumerate_p << ":";
            for (std::size_t i = 0; i < gp.pres.generators.size(); i++)
                std::cout << " " << gp.pres.generators[i] << "="
                          << f.phi.values[i];
            std::cout << "\nmonodromy order " << f.monodromy_order
                      << ", fiber rank " << f.fiber_rank << "\n";
        }
    }
    if (as_json) std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_growth(const std::string& file, int iterations, bool as_json) {
    InputDocument doc = load_document(file);
    if (doc.kind != InputDocument::Kind::Automorphism)
        throw semantic_error("growth expects an [automorphism] input");
    std::optional<int> k =
        least_unipotent_power(abelianization_matrix(doc.automorphism));
    // measure the unipotent power: growth degree is a power invariant, and
    // finite-order pieces stop oscillating there
    const FreeAutomorphism& base = doc.automorphism;
    int deg = growth_degree_estimate(
        k && *k > 1 ? power(base, static_cast<unsigned>(*k)) : base, iterations);
    if (as_json) {
        json j;
        j["command"] = "growth";
        j["degree_estimate"] = deg;
        if (k) j["unipotent_power"] = *k;
        else j["unipotent_power"] = nullptr;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "polynomial growth degree estimate: " << deg << "\n";
        if (k)
            std::cout << "least unipotent power on homology: " << *k << "\n";
        else
            std::cout << "no unipotent power on homology\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BNS invariants of polynomially growing free-by-cyclic and "
                 "GBS mapping tori"};
    app.require_subcommand(1);

    std::string file, phi_text;
    std::string format = "text";
    std::optional<unsigned> seed;
    bool oracle = false;
    std::optional<long> enumerate_p;
    int bound = 12;
    int iterations = 8;

    auto add_common = [&](CLI::App* sub, bool with_phi, bool with_seed) {
        sub->add_option("file", file, "input file")->required();
        sub->add_option("--format", format, "text or json")
            ->check(CLI::IsMember({"text", "json"}));
        if (with_phi) sub->add_option("--phi", phi_text, "character, e.g. x1=0,t=1");
        if (with_seed)
            sub->add_option("--seed", seed, "randomize the spanning tree");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "presentation, hierarchy, spheres");
    add_common(analyze, false, true);
    CLI::App* fiber = app.add_subcommand("fiber", "classify a character");
    add_common(fiber, true, true);
    fiber->add_flag("--oracle", oracle, "cross-check the rank via Fox calculus");
    CLI::App* alex = app.add_subcommand("alexander", "relative Alexander polynomial");
    add_common(alex, true, false);
    CLI::App* sigma = app.add_subcommand("sigma", "sphere arrangement / membership");
    add_common(sigma, true, true);
    CLI::App* gbs = app.add_subcommand("gbs", "GBS center, kappa, epsilon");
    add_common(gbs, false, false);
    gbs->add_option("--enumerate", enumerate_p, "construct the fibration phi_p");
    gbs->add_option("--bound", bound, "admissibility table bound");
    CLI::App* growth = app.add_subcommand("growth", "growth degree estimate");
    add_common(growth, false, false);
    growth->add_option("--iterations", iterations, "iterates to fit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    bool as_json = format == "json";
    try {
        if (analyze->parsed()) return cmd_analyze(file, seed, as_json);
        if (fiber->parsed()) {
            if (phi_text.empty()) throw parse_error("fiber requires --phi");
            return cmd_fiber(file, phi_text, seed, oracle, as_json);
        }
        if (alex->parsed()) {
            if (phi_text.empty()) throw parse_error("alexander requires --phi");
            return cmd_alexander(file, phi_text, as_json);
        }
        if (sigma->parsed()) return cmd_sigma(file, phi_text, seed, as_json);
        if (gbs->parsed()) return cmd_gbs(file, enumerate_p, bound, as_json);
        if (growth->parsed()) return cmd_growth(file, iterations, as_json);
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const semantic_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
