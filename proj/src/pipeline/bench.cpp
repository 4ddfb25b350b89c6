#include "pipeline/bench.hpp"

#include <chrono>
#include <random>

#include "core/error.hpp"
#include "core/random.hpp"
#include "dataio/csv.hpp"

namespace hhelm {

namespace {

Matrix normal_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  for (double& v : m.values()) v = normal(rng);
  return m;
}

}  // namespace

std::vector<BenchRow> solver_bench(std::span<const std::size_t> sizes, double ridge, std::uint64_t seed) {
  if (sizes.empty()) fail(ErrorCode::InvalidConfig, "no benchmark sizes given");
  for (std::size_t n : sizes) {
    if (n < 1) fail(ErrorCode::InvalidConfig, "benchmark sizes must be >= 1");
  }
  constexpr SolverVariant kOrder[] = {SolverVariant::MoorePenroseSvd, SolverVariant::HessenbergGram,
                                      SolverVariant::LuGram};
  for (SolverVariant v : kOrder) SolverKind{v, ridge}.validate();

  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    std::mt19937_64 rng(mix_seed(seed, n));
    const Matrix h = normal_matrix(2 * n, n, rng);
    const Matrix t = normal_matrix(2 * n, 2, rng);
    Matrix reference;
    for (SolverVariant v : kOrder) {
      const auto start = std::chrono::steady_clock::now();
      Matrix beta = solve_output_weights(h, t, SolverKind{v, ridge});
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      if (v == SolverVariant::MoorePenroseSvd) reference = beta;
      rows.push_back(BenchRow{n, v, elapsed.count(), relative_frobenius_distance(beta, reference)});
    }
  }
  return rows;
}

std::string format_bench_table(const std::vector<BenchRow>& rows, const std::vector<std::string>& comments) {
  std::string out;
  for (const auto& c : comments) out += "# " + c + "\n";
  out += "size,kernel,seconds,deviation_from_svd\n";
  for (const auto& r : rows) {
    out += std::to_string(r.size) + "," + std::string(solver_name(r.variant)) + ",";
    append_double(out, r.seconds);
    out += ',';
    append_double(out, r.deviation);
    out += '\n';
  }
  return out;
}

}  // namespace hhelm
