// End-to-end acceptance checks. Every comparison is exact; each numbered
// criterion prints a single PASS/FAIL line and the process exits nonzero
// if any of them fail.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mtor/alexander.hpp"
#include "mtor/bns.hpp"
#include "mtor/fiber.hpp"
#include "mtor/gbs.hpp"
#include "mtor/hierarchy.hpp"
#include "mtor/io.hpp"
#include "mtor/torus.hpp"
#include "mtor/words.hpp"

using namespace mtor;

#ifndef ACCEPT_DATA_DIR
#define ACCEPT_DATA_DIR "data"
#endif

namespace {

struct check_failure {
    std::string msg;
};

void require(bool ok, const std::string& msg) {
    if (!ok) throw check_failure{msg};
}

bool g_all_ok = true;

void criterion(int num, const std::string& label, const std::function<void()>& body) {
    try {
        body();
        std::cout << "criterion " << num << " (" << label << "): PASS\n";
    } catch (const check_failure& f) {
        g_all_ok = false;
        std::cout << "criterion " << num << " (" << label << "): FAIL — " << f.msg << "\n";
    } catch (const std::exception& e) {
        g_all_ok = false;
        std::cout << "criterion " << num << " (" << label << "): FAIL — exception: "
                  << e.what() << "\n";
    }
}

struct Torus {
    FilteredGraphMap map;
    MappingTorusPresentation p;
    HierarchyTree h;
};

Torus torus_for(const FreeAutomorphism& a) {
    Torus t;
    t.map = rose_from_triangular(a);
    t.p = presentation(t.map);
    t.h = build_hierarchy(t.map, t.p);
    return t;
}

FilteredGraphMap circle_map(int vertices) {
    FilteredGraphMap f;
    f.num_vertices = vertices;
    for (int i = 0; i < vertices; i++)
        f.edges.push_back({i, i, "a" + std::to_string(i + 1)});
    for (int i = 0; i < vertices; i++)
        f.edges.push_back({i, (i + 1) % vertices, "b" + std::to_string(i + 1)});
    f.suffixes.resize(f.edges.size());
    for (int i = 0; i < vertices; i++)
        f.suffixes[static_cast<size_t>(vertices + i)] = {(i + 1) % vertices + 1};
    return validate_filtered_map(f);
}

std::vector<Rat> to_rat(const std::vector<Int>& v) {
    std::vector<Rat> out;
    out.reserve(v.size());
    for (const Int& x : v) out.push_back(Rat(x));
    return out;
}

std::string data_file(const std::string& name) {
    return std::string(ACCEPT_DATA_DIR) + "/" + name;
}

// --- criterion 1 -----------------------------------------------------------

void product_family() {
    for (int n = 2; n <= 5; n++) {
        Torus t = torus_for(FreeAutomorphism::identity(n));
        for (int p = 1; p <= 7; p++) {
            for (int q = 1; q <= 7; q++) {
                if (std::gcd(p, q) != 1) continue;
                std::vector<Rat> v(static_cast<size_t>(n), Rat(p));
                v.push_back(Rat(q));
                FiberVerdict fv =
                    classify(t.p, t.h, CharacterClass::make(t.p.pres, v), 1);
                Int want = q * (n - 1) + 1;
                require(fv.in_sigma && fv.fiber_rank && *fv.fiber_rank == want,
                        "wrong hierarchy rank for n=" + std::to_string(n));
                std::vector<Int> vi(static_cast<size_t>(n), Int(p));
                vi.push_back(Int(q));
                require(oracle_rank(t.p.pres, vi) == want,
                        "oracle disagrees for n=" + std::to_string(n));
            }
        }
    }
}

// --- criterion 2 -----------------------------------------------------------

void circle_spheres() {
    for (int v = 2; v <= 4; v++) {
        FilteredGraphMap f = circle_map(v);
        MappingTorusPresentation mt = presentation(f);
        HierarchyTree h = build_hierarchy(f, mt);
        int n = mt.fiber_rank;
        require(n == v + 1, "unexpected fiber rank");
        require(h.splitting_count == n - 1, "splitting count != n-1");
        int leaves = 0;
        for (const auto& node : h.nodes)
            if (node.kind == HierarchyNode::Kind::Leaf) {
                leaves++;
                require(!node.leaf_loop.letters.empty() &&
                            !node.leaf_stable.letters.empty(),
                        "leaf without a Z^2 pair");
            }
        require(leaves == v, "leaf count != vertex count");

        CharacterLattice lat = character_lattice(mt.pres);
        SphereArrangement arr =
            sigma_arrangement(mt.pres, lat, edge_elements(h));
        require(arr.spheres.size() == static_cast<size_t>(v),
                "sphere count != vertex count");
        for (size_t i = 0; i < arr.spheres.size(); i++)
            for (size_t j = i + 1; j < arr.spheres.size(); j++) {
                const auto& a = arr.spheres[i].normal;
                const auto& b = arr.spheres[j].normal;
                bool proportional = true;
                for (size_t r = 0; proportional && r < a.size(); r++)
                    for (size_t s = 0; proportional && s < a.size(); s++)
                        if (a[r] * b[s] != a[s] * b[r]) proportional = false;
                require(!proportional, "proportional sphere normals");
            }
    }
}

// --- criterion 3 -----------------------------------------------------------

void amalgam_example() {
    InputDocument doc = load_document(data_file("gbs_a4b2.txt"));
    require(doc.kind == InputDocument::Kind::Gbs, "expected a [gbs] file");
    GbsGraph g = validate_gbs(doc.gbs);
    CenterData c = center(g);
    auto [kappa, eps] = kappa_epsilon(c);
    require(kappa == 4 && eps == 3, "(kappa, epsilon) != (4, 3)");
    require(gbs_betti(g) == 2, "b1 != 2");
    require(eps + 1 == 4, "minimal fiber rank != 4");

    GbsPresentation gp = gbs_presentation(g);
    SphereArrangement arr = gbs_sigma(g, c);
    require(arr.spheres.size() == 1, "complement is not a single sphere");
    // the sphere is exactly {phi(a) = 0}
    require(!sigma_contains(arr, CharacterClass::make(gp.pres, {Rat(0), Rat(0), Rat(1)})),
            "phi(a)=0 not on the sphere");
    require(sigma_contains(arr, CharacterClass::make(gp.pres, {Rat(1), Rat(2), Rat(0)})),
            "phi(a)!=0 excluded");

    for (Int pt : {Int(0), Int(1)}) {  // phi_1 and phi_2 of the example
        std::vector<Int> phi = {Int(1), Int(2), pt};
        CharacterClass cc = CharacterClass::make(gp.pres, to_rat(phi));
        require(sigma_contains(arr, cc), "phi_i not a fibration");
        require(monodromy_order(g, c, cc) == 4, "monodromy order != 4");
        // fiber rank through the admissibility pairing and the oracle
        require(admissible_parameters(c, 2, Int(4), Int(4)), "(4,4) inadmissible");
        require(oracle_rank(gp.pres, phi) == 4, "oracle rank != 4");
        require(alexander_polynomial(gp.pres, phi).degree == 4,
                "Alexander degree != 4");
    }
}

// --- criterion 4 -----------------------------------------------------------

FreeAutomorphism random_triangular(std::mt19937& rng) {
    std::uniform_int_distribution<int> rank_d(2, 4);
    int n = rank_d(rng);
    std::vector<Word> images;
    for (int i = 1; i <= n; i++) {
        std::vector<int> letters = {i};
        if (i > 1) {
            std::uniform_int_distribution<int> len_d(0, 4);
            std::uniform_int_distribution<int> gen_d(1, i - 1);
            std::uniform_int_distribution<int> sign_d(0, 1);
            int len = len_d(rng);
            for (int j = 0; j < len; j++) {
                int g = gen_d(rng);
                letters.push_back(sign_d(rng) ? g : -g);
            }
        }
        images.push_back(reduce_word(letters));
    }
    return FreeAutomorphism::make(n, std::move(images));
}

void oracle_corpus() {
    std::mt19937 rng(917504);
    std::uniform_int_distribution<int> coeff_d(-3, 3);
    int instances = 0;
    for (int trial = 0; trial < 200; trial++) {
        FreeAutomorphism a = random_triangular(rng);
        int n = a.rank;
        Torus t = torus_for(a);
        CharacterLattice lat = character_lattice(t.p.pres);
        require(lat.b1 >= 2, "b1 < 2 for a unipotent mapping torus");
        std::vector<Word> elems = edge_elements(t.h);

        for (int pick = 0; pick < 3; pick++) {
            CharacterClass phi = [&] {
                for (int attempt = 0; attempt < 200; attempt++) {
                    std::vector<Int> vals(t.p.pres.generators.size(), Int(0));
                    for (const auto& basis : lat.basis) {
                        Int ci = coeff_d(rng);
                        for (size_t j = 0; j < vals.size(); j++)
                            vals[j] += ci * basis[j];
                    }
                    bool zero = true;
                    for (const Int& x : vals)
                        if (x != 0) zero = false;
                    if (zero) continue;
                    CharacterClass cand =
                        CharacterClass::make(t.p.pres, to_rat(vals));
                    // primitive representative, nonzero on every edge element
                    cand = CharacterClass::make(t.p.pres, to_rat(cand.primitive));
                    bool ok = true;
                    for (const Word& w : elems)
                        if (evaluate_character(cand, w) == 0) ok = false;
                    if (ok) return cand;
                }
                throw check_failure{"could not sample a character"};
            }();

            FiberVerdict fv = classify(t.p, t.h, phi, 1);
            require(fv.in_sigma && fv.fiber_rank, "sampled character not in sigma");
            Int r1 = *fv.fiber_rank;
            Int r2 = kernel_decomposition(t.p, t.h, phi).rank;
            Int r3 = oracle_rank(t.p.pres, phi.primitive);
            require(r1 == r2 && r2 == r3, "rank triple disagreement");
            require(r1 >= n, "fiber rank below ambient rank");
            instances++;
        }
    }
    require(instances >= 600, "insufficient corpus size");
}

// --- criterion 5 -----------------------------------------------------------

void finite_order_monodromy() {
    // swap of F2: x1 <-> x2, order 2
    auto swap = FreeAutomorphism::make(2, {reduce_word({2}), reduce_word({1})});
    auto k = least_unipotent_power(abelianization_matrix(swap));
    require(k && *k == 2, "swap unipotent power != 2");
    Torus t = torus_for(power(swap, 2));
    // phi(t) = 1, phi(x_i) = 0 restricted to the squared torus: t^2 -> 2
    CharacterClass phi =
        CharacterClass::make(t.p.pres, {Rat(0), Rat(0), Rat(2)});
    FiberVerdict fv = classify(t.p, t.h, phi, 2);
    require(fv.in_sigma && *fv.fiber_rank == 2, "swap fiber rank != 2");

    // enumeration on the a^4 = b^2, [b,t] = 1 example
    InputDocument doc = load_document(data_file("gbs_a4b2.txt"));
    GbsGraph g = validate_gbs(doc.gbs);
    CenterData c = center(g);
    GbsPresentation gp = gbs_presentation(g);
    for (int p = 1; p <= 4; p++) {
        Fibration f = enumerate_fibrations(g, c, Int(p));
        require(f.monodromy_order == 4 * p, "monodromy order != 4p");
        require(f.fiber_rank == 3 * p + 1, "fiber rank != 3p+1");
        std::vector<Int> phi_int;
        for (const Rat& v : f.phi.values) {
            require(rat_den(v) == 1, "non-integral enumerated character");
            phi_int.push_back(rat_num(v));
        }
        require(oracle_rank(gp.pres, phi_int) == 3 * p + 1,
                "oracle disagrees with enumeration");
    }
}

// --- criterion 6 -----------------------------------------------------------

void property_suite() {
    std::mt19937 rng(424243);
    std::uniform_int_distribution<int> coeff_d(-4, 4);

    // sigma membership is a property of the ray: invariant under positive
    // and negative nonzero rational scaling
    FilteredGraphMap f = circle_map(3);
    MappingTorusPresentation mt = presentation(f);
    HierarchyTree h = build_hierarchy(f, mt);
    CharacterLattice lat = character_lattice(mt.pres);
    SphereArrangement arr = sigma_arrangement(mt.pres, lat, edge_elements(h));
    const std::vector<Rat> scales = {Rat(2), Rat(-1), Rat(5, 2), Rat(-7, 3)};
    int sampled = 0;
    while (sampled < 50) {
        std::vector<Rat> vals(mt.pres.generators.size(), Rat(0));
        bool zero = true;
        for (const auto& basis : lat.basis) {
            Rat ci = coeff_d(rng);
            for (size_t j = 0; j < vals.size(); j++) vals[j] += ci * Rat(basis[j]);
        }
        for (const Rat& x : vals)
            if (x != 0) zero = false;
        if (zero) continue;
        sampled++;
        bool base = sigma_contains(arr, CharacterClass::make(mt.pres, vals));
        for (const Rat& s : scales) {
            std::vector<Rat> scaled = vals;
            for (Rat& x : scaled) x *= s;
            require(sigma_contains(arr, CharacterClass::make(mt.pres, scaled)) == base,
                    "membership not scale/sign invariant");
        }
    }

    // chain rule check on Fox matrices: sum_j dr/dx_j (s^{phi_j} - 1) = 0
    for (int trial = 0; trial < 25; trial++) {
        FreeAutomorphism a = random_triangular(rng);
        Torus t = torus_for(a);
        CharacterLattice tl = character_lattice(t.p.pres);
        std::vector<Int> phi(t.p.pres.generators.size(), Int(0));
        for (const auto& basis : tl.basis) {
            Int ci = coeff_d(rng);
            for (size_t j = 0; j < phi.size(); j++) phi[j] += ci * basis[j];
        }
        for (const Word& r : t.p.pres.relators) {
            Laurent total;
            for (size_t j = 0; j < phi.size(); j++) {
                Laurent factor =
                    laurent_sub(laurent_monomial(phi[j].convert_to<long long>()),
                                laurent_monomial(0));
                total = laurent_add(
                    total,
                    laurent_mul(fox_derivative_specialized(r, j, phi), factor));
            }
            require(laurent_is_zero(total), "Fox row identity violated");
        }
    }

    // reduce_gog is idempotent
    InputDocument doc = load_document(data_file("gbs_a4b2.txt"));
    GraphOfGroupsZn gog = gbs_to_gog(validate_gbs(doc.gbs));
    GraphOfGroupsZn r1 = reduce_gog(gog);
    GraphOfGroupsZn r2 = reduce_gog(r1);
    require(is_reduced(r1), "reduce_gog output not reduced");
    require(r1.vertex_ranks == r2.vertex_ranks && r1.edges.size() == r2.edges.size(),
            "reduce_gog not idempotent");
    for (size_t i = 0; i < r1.edges.size(); i++)
        require(r1.edges[i].inc_origin.a == r2.edges[i].inc_origin.a &&
                    r1.edges[i].inc_terminus.a == r2.edges[i].inc_terminus.a,
                "reduce_gog not idempotent on inclusions");

    // admissible parameter pairs are closed under multiples when b1 >= 2
    CenterData c = center(validate_gbs(doc.gbs));
    for (int m = 1; m <= 6; m++)
        require(admissible_parameters(c, 2, Int(4 * m), Int(3 * m + 1)),
                "multiple of an admissible pair rejected");
    require(!admissible_parameters(c, 2, Int(4), Int(5)), "(4,5) accepted");
    require(!admissible_parameters(c, 2, Int(6), Int(4)), "(6,4) accepted");
}

// --- criterion 7 -----------------------------------------------------------

void cross_representation() {
    // F2 x Z as a unit-label rose with two petals versus the identity torus
    GbsGraph rose;
    rose.vertex_names = {"a"};
    rose.edges.push_back({0, 0, Int(1), Int(1), false, "s1"});
    rose.edges.push_back({0, 0, Int(1), Int(1), false, "s2"});
    rose = validate_gbs(rose);
    CenterData rc = center(rose);
    GbsPresentation rp = gbs_presentation(rose);
    SphereArrangement rose_arr = gbs_sigma(rose, rc);

    Torus t = torus_for(FreeAutomorphism::identity(2));
    CharacterLattice lat = character_lattice(t.p.pres);
    SphereArrangement torus_arr =
        sigma_arrangement(t.p.pres, lat, edge_elements(t.h));

    int shared = 0;
    for (int c1 = -1; c1 <= 1; c1++)
        for (int c2 = -1; c2 <= 1; c2++)
            for (int d = -1; d <= 1; d++) {
                if (c1 == 0 && c2 == 0 && d == 0) continue;
                // isomorphism: a <-> t, s_i <-> x_i
                bool on_gbs = sigma_contains(
                    rose_arr, CharacterClass::make(
                                  rp.pres, {Rat(d), Rat(c1), Rat(c2)}));
                bool on_torus = sigma_contains(
                    torus_arr, CharacterClass::make(
                                   t.p.pres, {Rat(c1), Rat(c2), Rat(d)}));
                require(on_gbs == on_torus, "F2 x Z verdicts disagree");
                shared++;
            }
    require(shared >= 20, "too few shared characters");

    // the a^4 = b^2, [b,t] = 1 group versus its order-4 monodromy realization
    InputDocument gdoc = load_document(data_file("gbs_a4b2.txt"));
    GbsGraph g = validate_gbs(gdoc.gbs);
    CenterData gc = center(g);
    GbsPresentation gp = gbs_presentation(g);
    SphereArrangement gbs_arr = gbs_sigma(g, gc);

    InputDocument adoc = load_document(data_file("order4_rank4.txt"));
    require(adoc.kind == InputDocument::Kind::Automorphism, "expected automorphism file");
    const FreeAutomorphism& alpha = adoc.automorphism;
    auto k = least_unipotent_power(abelianization_matrix(alpha));
    require(k && *k == 4, "expected unipotent power 4");
    Torus tor = torus_for(power(alpha, 4));
    CharacterLattice tl = character_lattice(tor.p.pres);
    SphereArrangement tor_arr =
        sigma_arrangement(tor.p.pres, tl, edge_elements(tor.h));

    shared = 0;
    for (int pa = -2; pa <= 2; pa++)
        for (int pt = -2; pt <= 2; pt++) {
            if (pa == 0 && pt == 0) continue;
            bool on_gbs = sigma_contains(
                gbs_arr, CharacterClass::make(
                             gp.pres, {Rat(pa), Rat(2 * pa), Rat(pt)}));
            // translation to the torus generators: psi(x1) = psi(x2) =
            // phi(b) - 2 phi(a) = 0, psi(x3) = psi(x4) = phi(t) - phi(a),
            // stable letter worth 4 phi(a) on the 4th-power torus
            Rat m = Rat(pt - pa);
            bool on_torus = sigma_contains(
                tor_arr, CharacterClass::make(
                             tor.p.pres, {Rat(0), Rat(0), m, m, Rat(4 * pa)}));
            require(on_gbs == on_torus, "amalgam verdicts disagree");
            shared++;
        }
    require(shared >= 20, "too few shared characters");
}

}  // namespace

int main() {
    criterion(1, "free-by-cyclic products, rank q(n-1)+1", product_family);
    criterion(2, "circle family: one sphere per vertex", circle_spheres);
    criterion(3, "a^4=b^2 amalgam invariants", amalgam_example);
    criterion(4, "oracle corpus: triple rank agreement", oracle_corpus);
    criterion(5, "finite-order monodromy and enumeration", finite_order_monodromy);
    criterion(6, "property suite", property_suite);
    criterion(7, "cross-representation consistency", cross_representation);
    return g_all_ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
