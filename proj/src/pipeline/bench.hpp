#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linalg/solvers.hpp"

namespace hhelm {

struct BenchRow {
  std::size_t size = 0;  // H is 2·size × size, T is 2·size × 2
  SolverVariant variant = SolverVariant::MoorePenroseSvd;
  double seconds = 0.0;
  double deviation = 0.0;  // relative Frobenius distance to the SVD solution
};

/// Random standard-normal systems, one per size, seeded by mix_seed(seed, size).
/// Every kernel solves the same system at the given ridge.
std::vector<BenchRow> solver_bench(std::span<const std::size_t> sizes, double ridge, std::uint64_t seed);

/// CSV: size,kernel,seconds,deviation_from_svd
std::string format_bench_table(const std::vector<BenchRow>& rows, const std::vector<std::string>& comments = {});

}  // namespace hhelm
