#include "linalg/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "core/error.hpp"

namespace hhelm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_finite(const Matrix& m, const char* what) {
  if (m.empty()) fail(ErrorCode::InvalidMatrix, std::string(what) + " is empty");
  if (!m.all_finite()) fail(ErrorCode::InvalidMatrix, std::string(what) + " has non-finite entries");
}

void require_square(const Matrix& m, const char* what) {
  if (!m.is_square()) {
    fail(ErrorCode::ShapeMismatch, std::string(what) + " must be square, got " +
                                       std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

// Jacobi SVD for rows >= cols. Columns are held contiguously so each rotation
// touches two dense vectors.
Svd jacobi_svd_tall(const Matrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  std::vector<double> w(m * n);
  std::vector<double> v(n * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < m; ++i) w[j * m + i] = a(i, j);
    v[j * n + j] = 1.0;
  }

  const double norm_a = a.frobenius_norm();
  // Columns this small carry no information above rounding.
  const double negligible = std::pow(kEps * 1e-2 * norm_a, 2);
  std::vector<double> sq(n);
  for (std::size_t j = 0; j < n; ++j) sq[j] = dot(&w[j * m], &w[j * m], m);

  constexpr int kMaxSweeps = 80;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double alpha = sq[p];
        const double beta = sq[q];
        if (alpha <= negligible || beta <= negligible) continue;
        double* cp = &w[p * m];
        double* cq = &w[q * m];
        const double gamma = dot(cp, cq, m);
        if (std::abs(gamma) <= kEps * std::sqrt(alpha * beta)) continue;
        rotated = true;

        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::hypot(1.0, t);
        const double s = c * t;
        for (std::size_t i = 0; i < m; ++i) {
          const double xp = cp[i];
          const double xq = cq[i];
          cp[i] = c * xp - s * xq;
          cq[i] = s * xp + c * xq;
        }
        double* vp = &v[p * n];
        double* vq = &v[q * n];
        for (std::size_t i = 0; i < n; ++i) {
          const double xp = vp[i];
          const double xq = vq[i];
          vp[i] = c * xp - s * xq;
          vq[i] = s * xp + c * xq;
        }
        sq[p] = dot(cp, cp, m);
        sq[q] = dot(cq, cq, m);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(dot(&w[j * m], &w[j * m], m));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  Svd out{Matrix(m, n), std::vector<double>(n), Matrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    out.singular_values[k] = sigma[j];
    const double inv = sigma[j] > 0.0 ? 1.0 / sigma[j] : 0.0;
    for (std::size_t i = 0; i < m; ++i) out.u(i, k) = w[j * m + i] * inv;
    for (std::size_t i = 0; i < n; ++i) out.v(i, k) = v[j * n + i];
  }
  return out;
}

// Sub-diagonal Givens elimination on an upper Hessenberg matrix, in place on
// both r and rhs, followed by back-substitution.
Matrix givens_hessenberg_solve(Matrix r, Matrix rhs) {
  const std::size_t n = r.rows();
  const std::size_t m = rhs.cols();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double a = r(k, k);
    const double b = r(k + 1, k);
    if (b == 0.0) continue;
    const double h = std::hypot(a, b);
    const double c = a / h;
    const double s = b / h;
    for (std::size_t j = k; j < n; ++j) {
      const double x = r(k, j);
      const double y = r(k + 1, j);
      r(k, j) = c * x + s * y;
      r(k + 1, j) = -s * x + c * y;
    }
    r(k + 1, k) = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double x = rhs(k, j);
      const double y = rhs(k + 1, j);
      rhs(k, j) = c * x + s * y;
      rhs(k + 1, j) = -s * x + c * y;
    }
  }

  const double scale = std::max(r.max_abs(), std::numeric_limits<double>::min());
  const double singular_tol = static_cast<double>(n) * kEps * scale;
  for (std::size_t k = n; k-- > 0;) {
    const double diag = r(k, k);
    if (std::abs(diag) <= singular_tol) {
      fail(ErrorCode::NumericalFailure,
           "Hessenberg system is singular at row " + std::to_string(k));
    }
    for (std::size_t j = 0; j < m; ++j) {
      double acc = rhs(k, j);
      for (std::size_t i = k + 1; i < n; ++i) acc -= r(k, i) * rhs(i, j);
      rhs(k, j) = acc / diag;
    }
  }
  return rhs;
}

Matrix regularized_gram(const Matrix& h, double ridge) {
  Matrix g = transpose_times(h, h);
  for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) += ridge;
  // Exact symmetry keeps the Hessenberg form tridiagonal up to rounding.
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = i + 1; j < g.cols(); ++j) g(j, i) = g(i, j);
  return g;
}

}  // namespace

void SolverKind::validate() const {
  if (!std::isfinite(ridge) || ridge < 0.0) {
    fail(ErrorCode::InvalidConfig, "ridge must be finite and non-negative");
  }
  if (ridge == 0.0 && variant != SolverVariant::MoorePenroseSvd) {
    fail(ErrorCode::InvalidConfig,
         std::string(solver_name(variant)) + " kernel requires ridge > 0");
  }
}

std::string_view solver_name(SolverVariant v) {
  switch (v) {
    case SolverVariant::MoorePenroseSvd: return "svd";
    case SolverVariant::HessenbergGram: return "hessenberg";
    case SolverVariant::LuGram: return "lu";
  }
  return "unknown";
}

std::optional<SolverVariant> parse_solver(std::string_view name) {
  if (name == "svd") return SolverVariant::MoorePenroseSvd;
  if (name == "hessenberg") return SolverVariant::HessenbergGram;
  if (name == "lu") return SolverVariant::LuGram;
  return std::nullopt;
}

Svd thin_svd(const Matrix& a) {
  require_finite(a, "SVD input");
  if (a.rows() >= a.cols()) return jacobi_svd_tall(a);
  Svd t = jacobi_svd_tall(a.transposed());
  return Svd{std::move(t.v), std::move(t.singular_values), std::move(t.u)};
}

Matrix svd_pseudoinverse(const Matrix& h, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "pseudoinverse tolerance must be > 0");
  const Svd svd = thin_svd(h);
  const std::size_t k = svd.singular_values.size();
  const double cutoff = tol * (k > 0 ? svd.singular_values.front() : 0.0);

  Matrix pinv(h.cols(), h.rows());
  for (std::size_t r = 0; r < k; ++r) {
    const double s = svd.singular_values[r];
    if (s <= cutoff || s == 0.0) break;
    const double inv = 1.0 / s;
    for (std::size_t i = 0; i < h.cols(); ++i) {
      const double vi = svd.v(i, r) * inv;
      if (vi == 0.0) continue;
      auto out = pinv.row(i);
      for (std::size_t j = 0; j < h.rows(); ++j) out[j] += vi * svd.u(j, r);
    }
  }
  return pinv;
}

HessenbergFactorization hessenberg_reduce(const Matrix& a) {
  require_square(a, "Hessenberg input");
  require_finite(a, "Hessenberg input");
  const std::size_t n = a.rows();
  Matrix u = a;
  Matrix q = Matrix::identity(n);
  std::vector<double> v(n);

  for (std::size_t k = 0; k + 2 < n; ++k) {
    double tail = 0.0;
    for (std::size_t i = k + 2; i < n; ++i) tail += u(i, k) * u(i, k);
    if (tail == 0.0) continue;

    const double x0 = u(k + 1, k);
    const double norm = std::sqrt(x0 * x0 + tail);
    const double alpha = x0 >= 0.0 ? -norm : norm;
    // Householder vector on rows k+1..n-1, normalized to unit length.
    std::fill(v.begin(), v.end(), 0.0);
    v[k + 1] = x0 - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = u(i, k);
    const double vnorm = std::sqrt(v[k + 1] * v[k + 1] + tail);
    for (std::size_t i = k + 1; i < n; ++i) v[i] /= vnorm;

    // u ← P·u, rows k+1.. (columns < k are already zero below the band).
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * u(i, j);
      s *= 2.0;
      for (std::size_t i = k + 1; i < n; ++i) u(i, j) -= s * v[i];
    }
    // u ← u·P and q ← q·P, columns k+1..
    for (std::size_t i = 0; i < n; ++i) {
      auto urow = u.row(i);
      auto qrow = q.row(i);
      double su = 0.0;
      double sq = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) {
        su += urow[j] * v[j];
        sq += qrow[j] * v[j];
      }
      su *= 2.0;
      sq *= 2.0;
      for (std::size_t j = k + 1; j < n; ++j) {
        urow[j] -= su * v[j];
        qrow[j] -= sq * v[j];
      }
    }
    u(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) u(i, k) = 0.0;
  }
  return {std::move(q), std::move(u)};
}

Matrix hessenberg_solve(const Matrix& u, const Matrix& b) {
  require_square(u, "Hessenberg system");
  if (b.rows() != u.rows()) fail(ErrorCode::ShapeMismatch, "right-hand side row count mismatch");
  return givens_hessenberg_solve(u, b);
}

Matrix lu_factor_solve(const Matrix& a, const Matrix& b) {
  require_square(a, "LU input");
  require_finite(a, "LU input");
  require_finite(b, "LU right-hand side");
  if (b.rows() != a.rows()) fail(ErrorCode::ShapeMismatch, "right-hand side row count mismatch");

  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  Matrix lu = a;
  Matrix x = b;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      if (std::abs(lu(i, k)) > best) {
        best = std::abs(lu(i, k));
        pivot = i;
      }
    }
    if (best < 1e-300) {
      fail(ErrorCode::SingularMatrix, "zero pivot in column " + std::to_string(k));
    }
    if (pivot != k) {
      std::swap_ranges(lu.row(k).begin(), lu.row(k).end(), lu.row(pivot).begin());
      std::swap_ranges(x.row(k).begin(), x.row(k).end(), x.row(pivot).begin());
    }
    const double diag = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = lu(i, k) / diag;
      lu(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
      for (std::size_t j = 0; j < m; ++j) x(i, j) -= f * x(k, j);
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    for (std::size_t j = 0; j < m; ++j) {
      double acc = x(k, j);
      for (std::size_t i = k + 1; i < n; ++i) acc -= lu(k, i) * x(i, j);
      x(k, j) = acc / lu(k, k);
    }
  }
  return x;
}

Matrix solve_output_weights(const Matrix& h, const Matrix& t, const SolverKind& kind) {
  kind.validate();
  require_finite(h, "hidden output matrix");
  require_finite(t, "target matrix");
  if (h.rows() != t.rows()) {
    fail(ErrorCode::ShapeMismatch, "hidden output has " + std::to_string(h.rows()) +
                                       " rows but targets have " + std::to_string(t.rows()));
  }

  Matrix beta;
  switch (kind.variant) {
    case SolverVariant::MoorePenroseSvd: {
      if (kind.ridge == 0.0) {
        beta = svd_pseudoinverse(h) * t;
        break;
      }
      // Ridge through the SVD: β = V·diag(s / (s² + λ))·Uᵀ·t.
      const Svd svd = thin_svd(h);
      Matrix ut = transpose_times(svd.u, t);
      for (std::size_t r = 0; r < ut.rows(); ++r) {
        const double s = svd.singular_values[r];
        const double f = s / (s * s + kind.ridge);
        for (double& val : ut.row(r)) val *= f;
      }
      beta = svd.v * ut;
      break;
    }
    case SolverVariant::HessenbergGram: {
      const Matrix gram = regularized_gram(h, kind.ridge);
      const Matrix rhs = transpose_times(h, t);
      const HessenbergFactorization f = hessenberg_reduce(gram);
      const Matrix y = givens_hessenberg_solve(f.u, transpose_times(f.q, rhs));
      beta = f.q * y;
      break;
    }
    case SolverVariant::LuGram: {
      try {
        beta = lu_factor_solve(regularized_gram(h, kind.ridge), transpose_times(h, t));
      } catch (const Error& e) {
        if (e.code() == ErrorCode::SingularMatrix) fail(ErrorCode::NumericalFailure, e.what());
        throw;
      }
      break;
    }
  }
  if (!beta.all_finite()) fail(ErrorCode::NumericalFailure, "output weights are not finite");
  return beta;
}

Matrix random_orthogonal(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows == 0 || cols == 0) fail(ErrorCode::InvalidArgument, "random_orthogonal needs rows, cols >= 1");
  const std::size_t tall = std::max(rows, cols);
  const std::size_t narrow = std::min(rows, cols);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  // Column-major draws, orthonormalized by modified Gram-Schmidt with one
  // re-orthogonalization pass.
  std::vector<double> w(tall * narrow);
  for (double& x : w) x = normal(rng);
  for (std::size_t j = 0; j < narrow; ++j) {
    double* cj = &w[j * tall];
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < j; ++i) {
        const double* ci = &w[i * tall];
        const double proj = dot(ci, cj, tall);
        for (std::size_t r = 0; r < tall; ++r) cj[r] -= proj * ci[r];
      }
    }
    const double norm = std::sqrt(dot(cj, cj, tall));
    if (norm < 1e-12) fail(ErrorCode::NumericalFailure, "degenerate random draw");
    for (std::size_t r = 0; r < tall; ++r) cj[r] /= norm;
  }

  Matrix out(rows, cols);
  for (std::size_t j = 0; j < narrow; ++j) {
    for (std::size_t r = 0; r < tall; ++r) {
      if (rows >= cols) {
        out(r, j) = w[j * tall + r];
      } else {
        out(j, r) = w[j * tall + r];
      }
    }
  }
  return out;
}

}  // namespace hhelm
