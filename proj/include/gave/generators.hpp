#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "gave/lcp.hpp"
#include "gave/problem.hpp"

namespace gave::gen {

/// Uniform [0, 1) doubles from std::mt19937_64 (whose output sequence is fixed
/// by the C++ standard) using the top 53 bits of each word, so streams are
/// identical on every conforming platform.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}

  double next() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  static constexpr const char* name() noexcept { return "mt19937_64/53-bit"; }

 private:
  std::mt19937_64 engine_;
};

/// M = tridiag(-I, S, -I) + mu I with S = tridiag(-1, 4, -1), m blocks of size m.
struct BlockTridiagonalSpec {
  std::size_t m = 2;
  double mu = 4.0;
  Vector z_star_pattern{1.0, 2.0};
};

struct LcpExample {
  LcpProblem problem;
  Vector z_star;
};

/// q = -M z*, with z* the pattern tiled to n = m^2. M is stored with
/// bandwidth m on both sides. Pattern (1, 2) and (1, 10) give the two
/// block-tridiagonal experiment families.
LcpExample gen_lcp_example(const BlockTridiagonalSpec& spec);

/// Random dense GAVE with strongly dominant diagonal:
///   A_ii = offset + scale u, A_ij = -offdiag u,
///   B_ii = diag_b u,         B_ij = -offdiag u,
/// with one uniform draw u per entry, A row-major first, then B row-major.
/// With make_b_singular B's last row is overwritten by its second-to-last.
/// b = A x* - B|x*| for x* = reference_solution(n).
struct RandomGaveSpec {
  std::size_t m = 60;
  std::uint64_t seed = 42;
  double diag_a_offset = 20.0;
  double diag_a_scale = 10.0;
  double offdiag_scale = 0.001;
  double diag_b_scale = 4.0;
  bool make_b_singular = true;
};

GaveProblem gen_random_gave(const RandomGaveSpec& spec);

/// (1, -1, 1, -1, ...).
Vector reference_solution(std::size_t n);

/// Flat "key=value" records for provenance lines.
std::string to_record(const BlockTridiagonalSpec& spec);
std::string to_record(const RandomGaveSpec& spec);

}  // namespace gave::gen
