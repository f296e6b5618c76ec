#include "mtor/alexander.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace mtor {

Laurent laurent_monomial(long long exp, Int coeff) {
    Laurent p;
    if (coeff != 0) p[exp] = coeff;
    return p;
}

Laurent laurent_add(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (const auto& [e, c] : b) {
        Int v = r[e] + c;
        if (v == 0) r.erase(e); else r[e] = v;
    }
    return r;
}

Laurent laurent_sub(const Laurent& a, const Laurent& b) {
    Laurent r = a;
    for (const auto& [e, c] : b) {
        Int v = r[e] - c;
        if (v == 0) r.erase(e); else r[e] = v;
    }
    return r;
}

Laurent laurent_mul(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            long long e = ea + eb;
            Int v = r[e] + ca * cb;
            if (v == 0) r.erase(e); else r[e] = v;
        }
    return r;
}

bool laurent_is_zero(const Laurent& p) { return p.empty(); }

long long laurent_span(const Laurent& p) {
    if (p.empty()) return 0;
    return p.rbegin()->first - p.begin()->first;
}

std::string laurent_to_string(const Laurent& p) {
    if (p.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.rbegin(); it != p.rend(); ++it) {
        Int c = it->second;
        long long e = it->first;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        first = false;
        Int ac = c < 0 ? Int(-c) : c;
        if (ac != 1 || e == 0) os << ac.str();
        if (e != 0) {
            if (ac != 1) os << "*";
            os << "s";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

Laurent fox_derivative_specialized(const Word& relator, std::size_t gen,
                                   const std::vector<Int>& phi) {
    Laurent out;
    // Running phi-value of the prefix read so far.  Exponents of the
    // specialization variable s stay within long long in practice; guard
    // anyway by tracking with Int and converting.
    Int e = 0;
    for (int letter : relator.letters) {
        std::size_t h = static_cast<std::size_t>(std::abs(letter)) - 1;
        if (h >= phi.size())
            throw semantic_error("fox derivative: letter outside generator range");
        if (letter > 0) {
            if (h == gen)
                out = laurent_add(out, laurent_monomial(static_cast<long long>(e), 1));
            e += phi[h];
        } else {
            e -= phi[h];
            if (h == gen)
                out = laurent_sub(out, laurent_monomial(static_cast<long long>(e), 1));
        }
    }
    return out;
}

namespace {

// Dense univariate polynomial over Z, coefficients low to high.
using Poly = std::vector<Int>;

Poly trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Poly laurent_to_poly(const Laurent& p) {
    if (p.empty()) return {};
    long long lo = p.begin()->first;
    Poly out(static_cast<std::size_t>(p.rbegin()->first - lo) + 1, Int(0));
    for (const auto& [e, c] : p) out[static_cast<std::size_t>(e - lo)] = c;
    return out;
}

Int poly_content(const Poly& p) {
    Int g = 0;
    for (const Int& c : p) g = int_gcd(g, c);
    return g;
}

Poly poly_scale(Poly p, const Int& k) {
    for (Int& c : p) c *= k;
    return p;
}

Poly poly_divexact_const(Poly p, const Int& k) {
    for (Int& c : p) c /= k;
    return p;
}

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b.
Poly poly_prem(Poly a, const Poly& b) {
    long long da = static_cast<long long>(a.size()) - 1;
    long long db = static_cast<long long>(b.size()) - 1;
    if (da < db) return a;
    const Int& lb = b.back();
    a = poly_scale(std::move(a), boost::multiprecision::pow(lb, static_cast<unsigned>(da - db + 1)));
    while (true) {
        a = trim(std::move(a));
        long long d = static_cast<long long>(a.size()) - 1;
        if (d < db || a.empty()) break;
        Int q = a.back() / lb;  // exact by construction
        for (std::size_t i = 0; i <= static_cast<std::size_t>(db); i++)
            a[static_cast<std::size_t>(d - db) + i] -= q * b[i];
    }
    return trim(std::move(a));
}

// gcd in Z[s]: content times primitive-PRS gcd of primitive parts.
Poly poly_gcd(Poly a, Poly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    if (a.empty()) return b;
    if (b.empty()) return a;
    Int ca = poly_content(a), cb = poly_content(b);
    a = poly_divexact_const(std::move(a), ca);
    b = poly_divexact_const(std::move(b), cb);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        Poly r = poly_prem(a, b);
        if (!r.empty()) r = poly_divexact_const(std::move(r), poly_content(r));
        a = std::move(b);
        b = std::move(r);
    }
    Int cg = int_gcd(ca, cb);
    a = poly_scale(std::move(a), cg);
    if (a.back() < 0) a = poly_scale(std::move(a), Int(-1));
    return a;
}

// Determinant of a square matrix of Laurent polynomials by cofactor
// expansion.  Minors here are small (matrix size = fiber rank), so the
// factorial cost is acceptable and keeps the arithmetic exact and simple.
Laurent laurent_det(std::vector<std::vector<Laurent>> m) {
    std::size_t n = m.size();
    if (n == 0) return laurent_monomial(0, 1);
    if (n == 1) return m[0][0];
    // Expand along the row with the most zero entries.
    std::size_t best = 0, best_zero = 0;
    for (std::size_t i = 0; i < n; i++) {
        std::size_t z = 0;
        for (std::size_t j = 0; j < n; j++)
            if (m[i][j].empty()) z++;
        if (z > best_zero || i == 0) { best = i; best_zero = z; }
    }
    Laurent det;
    for (std::size_t j = 0; j < n; j++) {
        if (m[best][j].empty()) continue;
        std::vector<std::vector<Laurent>> sub;
        sub.reserve(n - 1);
        for (std::size_t i = 0; i < n; i++) {
            if (i == best) continue;
            std::vector<Laurent> row;
            row.reserve(n - 1);
            for (std::size_t k = 0; k < n; k++)
                if (k != j) row.push_back(m[i][k]);
            sub.push_back(std::move(row));
        }
        Laurent term = laurent_mul(m[best][j], laurent_det(std::move(sub)));
        if ((best + j) % 2 == 0) det = laurent_add(det, term);
        else det = laurent_sub(det, term);
    }
    return det;
}

}  // namespace

AlexanderResult alexander_polynomial(const Presentation& pres,
                                     const std::vector<Int>& phi) {
    std::size_t g = pres.generators.size();
    if (pres.relators.size() + 1 != g)
        throw semantic_error(
            "relative Alexander polynomial needs deficiency-one presentation");
    if (phi.size() != g)
        throw semantic_error("character length does not match generator count");
    bool nonzero = false;
    for (const Int& v : phi) if (v != 0) nonzero = true;
    if (!nonzero) throw semantic_error("character is identically zero");
    for (const Word& r : pres.relators) {
        Int sum = 0;
        for (int letter : r.letters) {
            std::size_t h = static_cast<std::size_t>(std::abs(letter)) - 1;
            if (h >= g) throw semantic_error("relator letter outside generator range");
            sum += letter > 0 ? phi[h] : Int(-phi[h]);
        }
        if (sum != 0)
            throw semantic_error("character does not vanish on a relator");
    }

    std::size_t n = pres.relators.size();
    std::vector<std::vector<Laurent>> jac(n, std::vector<Laurent>(g));
    for (std::size_t i = 0; i < n; i++)
        for (std::size_t j = 0; j < g; j++)
            jac[i][j] = fox_derivative_specialized(pres.relators[i], j, phi);

    Poly gcd_poly;
    bool any = false;
    for (std::size_t drop = 0; drop < g; drop++) {
        std::vector<std::vector<Laurent>> mat(n);
        for (std::size_t i = 0; i < n; i++)
            for (std::size_t j = 0; j < g; j++)
                if (j != drop) mat[i].push_back(jac[i][j]);
        Laurent d = laurent_det(std::move(mat));
        if (d.empty()) continue;
        any = true;
        gcd_poly = poly_gcd(std::move(gcd_poly), laurent_to_poly(d));
    }

    AlexanderResult res;
    if (!any) {
        res.degenerate = true;
        return res;
    }
    if (gcd_poly.back() < 0) gcd_poly = poly_scale(std::move(gcd_poly), Int(-1));
    for (std::size_t i = 0; i < gcd_poly.size(); i++)
        if (gcd_poly[i] != 0)
            res.polynomial[static_cast<long long>(i)] = gcd_poly[i];
    res.degree = laurent_span(res.polynomial);
    return res;
}

Int oracle_rank(const Presentation& pres, const std::vector<Int>& phi) {
    AlexanderResult r = alexander_polynomial(pres, phi);
    if (r.degenerate)
        throw semantic_error("Alexander polynomial vanishes identically");
    return Int(r.degree);
}

}  // namespace mtor
