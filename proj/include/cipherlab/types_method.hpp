#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cipherlab/probsim.hpp"

namespace cipherlab {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Empirical type of an n-sequence: exact per-symbol occurrence counts.
struct TypeVector {
  std::size_t n;
  std::vector<std::uint32_t> counts;

  TypeVector(std::size_t n_in, std::vector<std::uint32_t> counts_in);
  bool operator==(const TypeVector&) const = default;
};

// Joint type of a pair of n-sequences, counts row-major with k major.
struct JointTypeVector {
  std::size_t n;
  std::size_t k_size, z_size;
  std::vector<std::uint32_t> counts;  // k_size * z_size entries

  JointTypeVector(std::size_t n_in, std::size_t k_size_in,
                  std::size_t z_size_in, std::vector<std::uint32_t> counts_in);
  std::uint32_t at(std::size_t k, std::size_t z) const {
    return counts[k * z_size + z];
  }
  bool operator==(const JointTypeVector&) const = default;
};

TypeVector empirical_type(std::span<const std::uint32_t> seq,
                          std::size_t alphabet_size);
JointTypeVector empirical_joint_type(std::span<const std::uint32_t> k,
                                     std::span<const std::uint32_t> z,
                                     std::size_t k_size, std::size_t z_size);

TypeVector joint_k_marginal(const JointTypeVector& jt);
TypeVector joint_z_marginal(const JointTypeVector& jt);

// Complete families, duplicate-free, counts in ascending lexicographic
// order. This order is the canonical tie-break everywhere downstream.
std::vector<TypeVector> enumerate_types(std::size_t n,
                                        std::size_t alphabet_size);
std::vector<JointTypeVector> enumerate_joint_types(std::size_t n,
                                                   std::size_t k_size,
                                                   std::size_t z_size);

// C(n + parts - 1, parts - 1), the family cardinality.
BigInt composition_count(std::size_t n, std::size_t parts);
// Rank of a count vector within the lexicographic family enumeration.
std::uint64_t composition_rank(std::span<const std::uint32_t> counts);

// Multinomial n! / prod(counts!), exact.
BigInt type_class_size(std::span<const std::uint32_t> counts, std::size_t n);
BigInt type_class_size(const TypeVector& t);
BigInt type_class_size(const JointTypeVector& jt);

// |{z^n : P_{k^n,z^n} = jt}| for any fixed k^n of the given marginal type.
BigInt conditional_class_size(const JointTypeVector& jt,
                              const TypeVector& k_marginal);

Pmf type_to_pmf(const TypeVector& t);
JointPmf joint_type_to_pmf(const JointTypeVector& jt);

// Pr{type of an i.i.d. p-sequence equals t} = |class| * prod p^count.
double type_probability_iid(const TypeVector& t, const Pmf& p);
double type_probability_iid(const JointTypeVector& jt, const JointPmf& p);

// Visit every member of a type class (lexicographically ascending sequences).
void for_each_type_sequence(
    const TypeVector& t,
    const std::function<void(std::span<const std::uint32_t>)>& fn);
void for_each_joint_sequence(
    const JointTypeVector& jt,
    const std::function<void(std::span<const std::uint32_t>,
                             std::span<const std::uint32_t>)>& fn);
// Visit every z^n with P_{k^n,z^n} = jt for the fixed k^n.
void for_each_conditional_sequence(
    const JointTypeVector& jt, std::span<const std::uint32_t> k_seq,
    const std::function<void(std::span<const std::uint32_t>)>& fn);

}  // namespace cipherlab
