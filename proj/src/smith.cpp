#include "crispec/smith.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>

namespace crispec {

using boost::multiprecision::cpp_int;
using Mat = std::vector<std::vector<cpp_int>>;

namespace {

std::vector<cpp_int> exponent_sums(const std::map<int, std::size_t>& col, const Word& w)
{
    std::vector<cpp_int> row(col.size(), 0);
    for (Letter l : w) row.at(col.at(gen_of(l))) += l > 0 ? 1 : -1;
    return row;
}

Mat relator_matrix(const std::vector<int>& gens, const std::vector<Word>& relators,
                   std::map<int, std::size_t>& col)
{
    for (std::size_t k = 0; k < gens.size(); ++k) col[gens[k]] = k;
    Mat M;
    for (const Word& r : relators) M.push_back(exponent_sums(col, r));
    return M;
}

// Row-style Hermite reduction; returns pivot columns. Rows below the rank are zero.
std::vector<std::size_t> hermite(Mat& M)
{
    std::vector<std::size_t> pivots;
    const std::size_t cols = M.empty() ? 0 : M[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
        // Euclid on column c among rows r..
        for (;;) {
            std::size_t best = M.size();
            for (std::size_t i = r; i < M.size(); ++i)
                if (M[i][c] != 0 && (best == M.size() || abs(M[i][c]) < abs(M[best][c]))) best = i;
            if (best == M.size()) break;
            std::swap(M[r], M[best]);
            bool done = true;
            for (std::size_t i = r + 1; i < M.size(); ++i) {
                if (M[i][c] == 0) continue;
                cpp_int q = M[i][c] / M[r][c];
                for (std::size_t k = c; k < cols; ++k) M[i][k] -= q * M[r][k];
                if (M[i][c] != 0) done = false;
            }
            if (done) break;
        }
        if (r < M.size() && M[r][c] != 0) {
            if (M[r][c] < 0)
                for (auto& x : M[r]) x = -x;
            pivots.push_back(c);
            ++r;
        }
    }
    M.resize(r);
    return pivots;
}

}  // namespace

H1Invariants abelian_invariants(const std::vector<int>& gens, const std::vector<Word>& relators)
{
    std::map<int, std::size_t> col;
    Mat M = relator_matrix(gens, relators, col);
    H1Invariants out;
    if (gens.empty()) return out;
    // Smith normal form by alternating row and column elimination
    std::size_t rows = M.size(), cols = gens.size();
    std::size_t t = 0;
    std::vector<cpp_int> diag;
    while (t < rows && t < cols) {
        std::size_t pi = rows, pj = cols;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (M[i][j] != 0 && (pi == rows || abs(M[i][j]) < abs(M[pi][pj]))) pi = i, pj = j;
        if (pi == rows) break;
        std::swap(M[t], M[pi]);
        for (auto& row : M) std::swap(row[t], row[pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (M[i][t] == 0) continue;
                cpp_int q = M[i][t] / M[t][t];
                for (std::size_t j = t; j < cols; ++j) M[i][j] -= q * M[t][j];
                if (M[i][t] != 0) {
                    std::swap(M[t], M[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (M[t][j] == 0) continue;
                cpp_int q = M[t][j] / M[t][t];
                for (std::size_t i = t; i < rows; ++i) M[i][j] -= q * M[i][t];
                if (M[t][j] != 0) {
                    for (auto& row : M) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility: the pivot must divide the remaining block
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (M[i][j] % M[t][t] != 0) {
                            for (std::size_t k = t; k < cols; ++k) M[t][k] += M[i][k];
                            clean = false;
                        }
            }
        }
        diag.push_back(abs(M[t][t]));
        ++t;
    }
    out.free_rank = cols - diag.size();
    for (auto& d : diag)
        if (d > 1) out.torsion.push_back(d.str());
    return out;
}

bool abelian_image_trivial(const std::vector<int>& gens, const std::vector<Word>& relators,
                           const Word& w)
{
    std::map<int, std::size_t> col;
    Mat M = relator_matrix(gens, relators, col);
    std::vector<cpp_int> v = exponent_sums(col, w);
    if (std::all_of(v.begin(), v.end(), [](const cpp_int& x) { return x == 0; })) return true;
    if (M.empty()) return false;
    auto piv = hermite(M);
    for (std::size_t r = 0; r < piv.size(); ++r) {
        std::size_t c = piv[r];
        if (v[c] % M[r][c] != 0) return false;
        cpp_int q = v[c] / M[r][c];
        for (std::size_t k = c; k < v.size(); ++k) v[k] -= q * M[r][k];
    }
    return std::all_of(v.begin(), v.end(), [](const cpp_int& x) { return x == 0; });
}

}  // namespace crispec
