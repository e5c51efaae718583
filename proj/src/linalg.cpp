#include "tcat/linalg.hpp"

namespace tcat {

Matrix zeros(std::size_t rows, std::size_t cols)
{
    return Matrix(rows, std::vector<Rat>(cols, Rat(0)));
}

Matrix identity_matrix(std::size_t n)
{
    Matrix m = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

Matrix matmul(const Matrix& a, const Matrix& b, std::size_t inner)
{
    std::size_t cols = b.empty() ? 0 : b[0].size();
    Matrix c = zeros(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (a[i][k] == 0)
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Matrix transpose(const Matrix& a, std::size_t cols)
{
    Matrix t = zeros(cols, a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t[j][i] = a[i][j];
    return t;
}

std::vector<std::size_t> rref(Matrix& a, std::size_t cols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        std::size_t p = row;
        while (p < a.size() && a[p][col] == 0)
            ++p;
        if (p == a.size())
            continue;
        std::swap(a[p], a[row]);
        Rat inv = Rat(1) / a[row][col];
        for (auto& x : a[row])
            x *= inv;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == row || a[i][col] == 0)
                continue;
            Rat f = a[i][col];
            for (std::size_t j = 0; j < a[i].size(); ++j)
                a[i][j] -= f * a[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t rank(Matrix a, std::size_t cols)
{
    return rref(a, cols).size();
}

std::vector<std::vector<Rat>> kernel(Matrix a, std::size_t cols)
{
    auto pivots = rref(a, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rat> v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a[r][f];
        basis.push_back(v);
    }
    return basis;
}

std::optional<Matrix> inverse(const Matrix& a)
{
    std::size_t n = a.size();
    Matrix aug = zeros(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    if (rref(aug, n).size() != n)
        return std::nullopt;
    Matrix inv = zeros(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv[i][j] = aug[i][n + j];
    return inv;
}

std::optional<Matrix> left_inverse(const Matrix& a, std::size_t cols)
{
    // L = (A^T A)^{-1} A^T
    Matrix at = transpose(a, cols);
    auto g = inverse(matmul(at, a, a.size()));
    if (!g)
        return std::nullopt;
    return matmul(*g, at, cols);
}

std::optional<std::pair<Matrix, std::vector<Rat>>> affine_parts(const PolyMap& f)
{
    if (f.degree() > 1)
        return std::nullopt;
    Matrix m = zeros(f.tgt, f.src);
    std::vector<Rat> b(f.tgt, Rat(0));
    for (std::size_t i = 0; i < f.tgt; ++i)
        for (const auto& [e, c] : f.comps[i].terms()) {
            bool found = false;
            for (std::size_t j = 0; j < f.src; ++j)
                if (e[j]) {
                    m[i][j] = c;
                    found = true;
                }
            if (!found)
                b[i] = c;
        }
    return std::make_pair(m, b);
}

}  // namespace tcat
