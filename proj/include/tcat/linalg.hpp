#pragma once

#include <optional>
#include <vector>

#include "tcat/poly.hpp"

namespace tcat {

using Matrix = std::vector<std::vector<Rat>>;

Matrix zeros(std::size_t rows, std::size_t cols);
Matrix identity_matrix(std::size_t n);
Matrix matmul(const Matrix& a, const Matrix& b, std::size_t inner);
Matrix transpose(const Matrix& a, std::size_t cols);

// Row-reduced echelon form; returns pivot columns.
std::vector<std::size_t> rref(Matrix& a, std::size_t cols);
std::size_t rank(Matrix a, std::size_t cols);
std::vector<std::vector<Rat>> kernel(Matrix a, std::size_t cols);
std::optional<Matrix> inverse(const Matrix& a);
// Some L with L*a = I, when a has full column rank.
std::optional<Matrix> left_inverse(const Matrix& a, std::size_t cols);

// Linear part and constant part of an affine map; nullopt if degree > 1.
std::optional<std::pair<Matrix, std::vector<Rat>>> affine_parts(const PolyMap& f);

}  // namespace tcat
