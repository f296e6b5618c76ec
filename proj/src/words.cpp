#include "mtor/words.hpp"

#include <algorithm>
#include <numeric>

namespace mtor {

Word Word::inverse() const {
    Word r;
    r.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) r.letters.push_back(-*it);
    return r;
}

std::vector<Int> Word::exponent_vector(int rank) const {
    std::vector<Int> v(rank);
    for (int l : letters) v[std::abs(l) - 1] += (l > 0 ? 1 : -1);
    return v;
}

Word reduce_word(const std::vector<int>& raw, int rank) {
    Word w;
    w.letters.reserve(raw.size());
    for (int l : raw) {
        if (l == 0 || (rank > 0 && std::abs(l) > rank))
            throw semantic_error("generator index out of range: " + std::to_string(l));
        if (!w.letters.empty() && w.letters.back() == -l)
            w.letters.pop_back();
        else
            w.letters.push_back(l);
    }
    return w;
}

Word concat(const Word& a, const Word& b) {
    std::vector<int> raw = a.letters;
    raw.insert(raw.end(), b.letters.begin(), b.letters.end());
    return reduce_word(raw);
}

Word cyclically_reduce(const Word& w) {
    Word r = w;
    while (r.letters.size() >= 2 && r.letters.front() == -r.letters.back()) {
        r.letters.erase(r.letters.begin());
        r.letters.pop_back();
    }
    return r;
}

FreeAutomorphism FreeAutomorphism::make(int rank, std::vector<Word> images) {
    if (rank < 1) throw semantic_error("automorphism rank must be positive");
    if (static_cast<int>(images.size()) != rank)
        throw semantic_error("automorphism needs exactly one image per generator");
    FreeAutomorphism a;
    a.rank = rank;
    a.images.reserve(images.size());
    for (auto& w : images) a.images.push_back(reduce_word(w.letters, rank));
    Int d = abelianization_matrix(a).det();
    if (d != 1 && d != -1)
        throw semantic_error("abelianization determinant is not +-1; not an automorphism");
    return a;
}

FreeAutomorphism FreeAutomorphism::identity(int rank) {
    std::vector<Word> images(rank);
    for (int i = 1; i <= rank; ++i) images[i - 1].letters = {i};
    return make(rank, std::move(images));
}

bool FreeAutomorphism::is_triangular(int* offender) const {
    for (int i = 1; i <= rank; ++i) {
        const Word& im = images[i - 1];
        bool ok = !im.empty() && im.letters.front() == i;
        for (size_t j = 1; ok && j < im.letters.size(); ++j)
            if (std::abs(im.letters[j]) >= i) ok = false;
        if (!ok) {
            if (offender) *offender = i;
            return false;
        }
    }
    return true;
}

Word apply_automorphism(const FreeAutomorphism& a, const Word& w) {
    std::vector<int> raw;
    for (int l : w.letters) {
        if (std::abs(l) > a.rank) throw semantic_error("word rank exceeds automorphism rank");
        const Word& im = a.images[std::abs(l) - 1];
        if (l > 0)
            raw.insert(raw.end(), im.letters.begin(), im.letters.end());
        else {
            Word inv = im.inverse();
            raw.insert(raw.end(), inv.letters.begin(), inv.letters.end());
        }
    }
    return reduce_word(raw, a.rank);
}

FreeAutomorphism compose(const FreeAutomorphism& a, const FreeAutomorphism& b) {
    if (a.rank != b.rank) throw semantic_error("rank mismatch in composition");
    std::vector<Word> images;
    images.reserve(a.rank);
    for (int i = 0; i < a.rank; ++i) images.push_back(apply_automorphism(a, b.images[i]));
    return FreeAutomorphism::make(a.rank, std::move(images));
}

FreeAutomorphism power(const FreeAutomorphism& a, unsigned k) {
    FreeAutomorphism r = FreeAutomorphism::identity(a.rank);
    for (unsigned i = 0; i < k; ++i) r = compose(a, r);
    return r;
}

IntMatrix abelianization_matrix(const FreeAutomorphism& a) {
    IntMatrix m(a.rank, a.rank);
    for (int j = 0; j < a.rank; ++j) {
        auto col = a.images[j].exponent_vector(a.rank);
        for (int i = 0; i < a.rank; ++i) m.at(i, j) = col[i];
    }
    return m;
}

namespace {

int euler_phi(int m) {
    int result = m;
    for (int p = 2; p * p <= m; ++p)
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    if (m > 1) result -= result / m;
    return result;
}

} // namespace

std::optional<int> least_unipotent_power(const IntMatrix& m) {
    Int d = m.det();
    if (d != 1 && d != -1) throw semantic_error("matrix determinant is not +-1");
    const int n = m.rows();

    long long bound = 1;
    // phi(m) >= sqrt(m/2), so phi(m) <= n forces m <= 2n^2 + 2.
    for (int q = 1; q <= 2 * n * n + 2; ++q)
        if (euler_phi(q) <= n) bound = std::lcm(bound, static_cast<long long>(q));

    std::vector<long long> divisors;
    for (long long k = 1; k * k <= bound; ++k)
        if (bound % k == 0) {
            divisors.push_back(k);
            if (k != bound / k) divisors.push_back(bound / k);
        }
    std::sort(divisors.begin(), divisors.end());

    IntMatrix id = IntMatrix::identity(n);
    for (long long k : divisors) {
        IntMatrix diff = m.pow(static_cast<unsigned>(k)) - id;
        if (diff.pow(static_cast<unsigned>(n)).is_zero()) return static_cast<int>(k);
    }
    return std::nullopt;
}

int growth_degree_estimate(const FreeAutomorphism& a, int iterations) {
    if (iterations < 4) throw semantic_error("growth estimate needs at least 4 iterations");
    int degree = 0;
    for (int g = 1; g <= a.rank; ++g) {
        std::vector<long long> lens;
        Word w;
        w.letters = {g};
        for (int k = 1; k <= iterations; ++k) {
            w = apply_automorphism(a, w);
            lens.push_back(static_cast<long long>(cyclically_reduce(w).length()));
        }
        // Difference until the tail is constant; the count is the fitted degree.
        int d = 0;
        auto tail_constant = [](const std::vector<long long>& v) {
            size_t from = v.size() > 3 ? v.size() - 3 : 0;
            for (size_t i = from + 1; i < v.size(); ++i)
                if (v[i] != v[from]) return false;
            return true;
        };
        while (!tail_constant(lens) && lens.size() > 1) {
            for (size_t i = 0; i + 1 < lens.size(); ++i) lens[i] = lens[i + 1] - lens[i];
            lens.pop_back();
            ++d;
        }
        degree = std::max(degree, d);
    }
    return degree;
}

std::string letter_to_string(int letter, const std::vector<std::string>& names) {
    const std::string& name = names[std::abs(letter) - 1];
    return letter > 0 ? name : name + "^-1";
}

std::string word_to_string(const Word& w, const std::vector<std::string>& names) {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) s += ' ';
        s += letter_to_string(w.letters[i], names);
    }
    return s;
}

} // namespace mtor
