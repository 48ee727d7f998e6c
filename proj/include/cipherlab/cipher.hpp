#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "cipherlab/ffield.hpp"
#include "cipherlab/probsim.hpp"

namespace cipherlab {

inline constexpr std::uint64_t kDefaultBudget = 1ull << 26;

// One simulated instance: source/key statistics, side channel, and the
// affine compressor. p_K is expected uniform for the secrecy guarantees;
// a non-uniform key is flagged, not rejected.
struct CipherSystem {
  std::size_t n, m;
  FieldSpec field;
  Pmf p_x, p_k;
  Channel w;  // side channel X -> Z, fed with the key
  AffineEncoder encoder;
  std::uint64_t decode_budget;
  bool key_nonuniform;

  CipherSystem(FieldSpec field_in, Pmf p_x_in, Pmf p_k_in, Channel w_in,
               AffineEncoder encoder_in,
               std::uint64_t decode_budget_in = kDefaultBudget);

  double rate() const;  // (m/n) log q, nats per source symbol
};

// c = x (+) k componentwise; decrypt is the inverse.
std::vector<std::uint32_t> encrypt(const FieldSpec& spec,
                                   std::span<const std::uint32_t> x,
                                   std::span<const std::uint32_t> k);
std::vector<std::uint32_t> decrypt(const FieldSpec& spec,
                                   std::span<const std::uint32_t> c,
                                   std::span<const std::uint32_t> k);

// The compressed ciphertext cA (+) b.
FieldVec encode_ciphertext(const FieldSpec& spec, const AffineEncoder& enc,
                           std::span<const Felem> c);

// Minimum-empirical-entropy decoding over the coset {x : xA = x_tilde};
// ties broken by lexicographically smallest sequence. The construction uses
// only the rate, never the source statistics.
class UniversalDecoder {
 public:
  UniversalDecoder(const FieldSpec& spec, const FieldMatrix& a,
                   std::uint64_t budget);

  std::uint64_t coset_size() const { return coset_size_; }
  std::size_t rank() const { return sys_.rank; }
  // Throws std::domain_error when x_tilde is outside the image of A.
  FieldVec decode(std::span<const Felem> x_tilde) const;

 private:
  FieldSpec spec_;
  detail::LinearSystem sys_;
  std::uint64_t coset_size_;
  std::vector<std::vector<std::size_t>> kernel_support_;
  std::vector<double> binary_key_;  // entropy key by zero-count when q == 2
};

FieldVec universal_decode(const FieldSpec& spec, const AffineEncoder& enc,
                          std::span<const Felem> x_tilde,
                          std::uint64_t budget = kDefaultBudget);

// Sum over all x^n of p_X^n(x) 1{decode(xA) != x}; compensated summation.
double exact_error_probability(const CipherSystem& sys);

struct MonteCarloError {
  double estimate;
  double ci_low, ci_high;  // Wilson 95%
  std::uint64_t errors, trials;
};

// Unbiased estimate of p_e; per-trial seeds derive from (seed, trial index),
// so the result is identical for any worker count.
MonteCarloError monte_carlo_error(const CipherSystem& sys,
                                  std::uint64_t trials, std::uint64_t seed,
                                  unsigned threads = 1);

}  // namespace cipherlab
