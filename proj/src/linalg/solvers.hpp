#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "linalg/matrix.hpp"

namespace hhelm {

/// The three interchangeable output-weight kernels.
enum class SolverVariant {
  MoorePenroseSvd,  // ELM-AE
  HessenbergGram,   // HessELM-AE
  LuGram,           // LUELM-AE
};

inline constexpr double kDefaultRidge = 1e-3;
inline constexpr double kDefaultSvdTolerance = 1e-12;

struct SolverKind {
  SolverVariant variant = SolverVariant::HessenbergGram;
  double ridge = kDefaultRidge;

  /// Throws InvalidConfig for negative/non-finite ridge or a Gram variant
  /// with ridge 0.
  void validate() const;

  friend bool operator==(const SolverKind&, const SolverKind&) = default;
};

std::string_view solver_name(SolverVariant v);
std::optional<SolverVariant> parse_solver(std::string_view name);

/// Thin singular value decomposition a = u·diag(s)·vᵀ with k = min(rows, cols)
/// singular values in descending order.
struct Svd {
  Matrix u;  // rows × k
  std::vector<double> singular_values;
  Matrix v;  // cols × k
};

/// One-sided (Hestenes) Jacobi SVD.
Svd thin_svd(const Matrix& a);

/// Moore-Penrose inverse. Singular values below tol·σ_max are treated as zero.
Matrix svd_pseudoinverse(const Matrix& h, double tol = kDefaultSvdTolerance);

struct HessenbergFactorization {
  Matrix q;  // orthogonal
  Matrix u;  // upper Hessenberg, a = q·u·qᵀ
};

/// Householder reduction to upper Hessenberg form. Columns whose sub-diagonal
/// tail is already zero are skipped, so Hessenberg input comes back with q = I.
HessenbergFactorization hessenberg_reduce(const Matrix& a);

/// Solves u·x = b for upper Hessenberg u by Givens elimination of the
/// sub-diagonal followed by back-substitution.
Matrix hessenberg_solve(const Matrix& u, const Matrix& b);

/// LU with partial pivoting. Throws SingularMatrix when a pivot magnitude
/// falls below 1e-300.
Matrix lu_factor_solve(const Matrix& a, const Matrix& b);

/// Output weights β for h·β ≈ t with the selected kernel.
///   MoorePenroseSvd, ridge 0:  β = h†·t
///   otherwise:                 (hᵀh + λI)·β = hᵀt
Matrix solve_output_weights(const Matrix& h, const Matrix& t, const SolverKind& kind);

/// Seeded matrix with orthonormal columns (rows ≥ cols) or orthonormal rows
/// (rows < cols). Bitwise deterministic for a given seed within one build.
Matrix random_orthogonal(std::size_t rows, std::size_t cols, std::uint64_t seed);

}  // namespace hhelm
