#include "cipherlab/types_method.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cipherlab {

namespace {

void check_counts(std::span<const std::uint32_t> counts, std::size_t n,
                  const char* what) {
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  if (sum != n) throw std::invalid_argument(std::string(what) + ": counts must sum to n");
}

void enumerate_compositions(
    std::size_t n, std::size_t parts,
    const std::function<void(std::span<const std::uint32_t>)>& fn) {
  std::vector<std::uint32_t> counts(parts, 0);
  // Recursive stars-and-bars, ascending lexicographic on the count vector.
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i,
                                                            std::uint32_t rem) {
    if (i + 1 == parts) {
      counts[i] = rem;
      fn(counts);
      return;
    }
    for (std::uint32_t v = 0; v <= rem; ++v) {
      counts[i] = v;
      rec(i + 1, rem - v);
    }
  };
  rec(0, static_cast<std::uint32_t>(n));
}

}  // namespace

TypeVector::TypeVector(std::size_t n_in, std::vector<std::uint32_t> counts_in)
    : n(n_in), counts(std::move(counts_in)) {
  if (counts.empty()) throw std::invalid_argument("TypeVector: empty alphabet");
  check_counts(counts, n, "TypeVector");
}

JointTypeVector::JointTypeVector(std::size_t n_in, std::size_t k_size_in,
                                 std::size_t z_size_in,
                                 std::vector<std::uint32_t> counts_in)
    : n(n_in), k_size(k_size_in), z_size(z_size_in), counts(std::move(counts_in)) {
  if (k_size == 0 || z_size == 0 || counts.size() != k_size * z_size)
    throw std::invalid_argument("JointTypeVector: bad dimensions");
  check_counts(counts, n, "JointTypeVector");
}

TypeVector empirical_type(std::span<const std::uint32_t> seq,
                          std::size_t alphabet_size) {
  std::vector<std::uint32_t> counts(alphabet_size, 0);
  for (auto s : seq) {
    if (s >= alphabet_size)
      throw std::invalid_argument("empirical_type: symbol out of range");
    ++counts[s];
  }
  return TypeVector(seq.size(), std::move(counts));
}

JointTypeVector empirical_joint_type(std::span<const std::uint32_t> k,
                                     std::span<const std::uint32_t> z,
                                     std::size_t k_size, std::size_t z_size) {
  if (k.size() != z.size())
    throw std::invalid_argument("empirical_joint_type: length mismatch");
  std::vector<std::uint32_t> counts(k_size * z_size, 0);
  for (std::size_t t = 0; t < k.size(); ++t) {
    if (k[t] >= k_size || z[t] >= z_size)
      throw std::invalid_argument("empirical_joint_type: symbol out of range");
    ++counts[k[t] * z_size + z[t]];
  }
  return JointTypeVector(k.size(), k_size, z_size, std::move(counts));
}

TypeVector joint_k_marginal(const JointTypeVector& jt) {
  std::vector<std::uint32_t> counts(jt.k_size, 0);
  for (std::size_t k = 0; k < jt.k_size; ++k) {
    for (std::size_t z = 0; z < jt.z_size; ++z) counts[k] += jt.at(k, z);
  }
  return TypeVector(jt.n, std::move(counts));
}

TypeVector joint_z_marginal(const JointTypeVector& jt) {
  std::vector<std::uint32_t> counts(jt.z_size, 0);
  for (std::size_t k = 0; k < jt.k_size; ++k) {
    for (std::size_t z = 0; z < jt.z_size; ++z) counts[z] += jt.at(k, z);
  }
  return TypeVector(jt.n, std::move(counts));
}

BigInt composition_count(std::size_t n, std::size_t parts) {
  // C(n + parts - 1, parts - 1)
  BigInt result = 1;
  for (std::size_t i = 1; i < parts; ++i) {
    result *= static_cast<std::uint64_t>(n + i);
    result /= static_cast<std::uint64_t>(i);
  }
  return result;
}

std::vector<TypeVector> enumerate_types(std::size_t n,
                                        std::size_t alphabet_size) {
  if (n == 0 || alphabet_size == 0)
    throw std::invalid_argument("enumerate_types: empty input");
  if (composition_count(n, alphabet_size) > BigInt(1) << 32)
    throw std::overflow_error("enumerate_types: family larger than 2^32");
  std::vector<TypeVector> out;
  enumerate_compositions(n, alphabet_size,
                         [&](std::span<const std::uint32_t> counts) {
                           out.emplace_back(n, std::vector<std::uint32_t>(
                                                   counts.begin(), counts.end()));
                         });
  return out;
}

std::vector<JointTypeVector> enumerate_joint_types(std::size_t n,
                                                   std::size_t k_size,
                                                   std::size_t z_size) {
  if (n == 0 || k_size == 0 || z_size == 0)
    throw std::invalid_argument("enumerate_joint_types: empty input");
  if (composition_count(n, k_size * z_size) > BigInt(1) << 32)
    throw std::overflow_error("enumerate_joint_types: family larger than 2^32");
  std::vector<JointTypeVector> out;
  enumerate_compositions(n, k_size * z_size,
                         [&](std::span<const std::uint32_t> counts) {
                           out.emplace_back(n, k_size, z_size,
                                            std::vector<std::uint32_t>(
                                                counts.begin(), counts.end()));
                         });
  return out;
}

std::uint64_t composition_rank(std::span<const std::uint32_t> counts) {
  std::uint64_t n = 0;
  for (auto c : counts) n += c;
  std::uint64_t rank = 0;
  std::uint64_t rem = n;
  for (std::size_t i = 0; i + 1 < counts.size(); ++i) {
    const std::size_t parts_left = counts.size() - 1 - i;
    for (std::uint32_t v = 0; v < counts[i]; ++v) {
      const BigInt ways = composition_count(
          static_cast<std::size_t>(rem - v), parts_left);
      rank += static_cast<std::uint64_t>(ways);
    }
    rem -= counts[i];
  }
  return rank;
}

BigInt type_class_size(std::span<const std::uint32_t> counts, std::size_t n) {
  check_counts(counts, n, "type_class_size");
  BigInt result = 1;
  std::uint64_t placed = 0;
  for (auto c : counts) {
    // result *= C(placed + c, c), exact at every step
    for (std::uint32_t i = 1; i <= c; ++i) {
      result *= static_cast<std::uint64_t>(placed + i);
      result /= static_cast<std::uint64_t>(i);
    }
    placed += c;
  }
  return result;
}

BigInt type_class_size(const TypeVector& t) {
  return type_class_size(t.counts, t.n);
}

BigInt type_class_size(const JointTypeVector& jt) {
  return type_class_size(jt.counts, jt.n);
}

BigInt conditional_class_size(const JointTypeVector& jt,
                              const TypeVector& k_marginal) {
  if (joint_k_marginal(jt) != k_marginal)
    throw std::invalid_argument("conditional_class_size: marginal mismatch");
  BigInt result = 1;
  for (std::size_t k = 0; k < jt.k_size; ++k) {
    std::span<const std::uint32_t> row(&jt.counts[k * jt.z_size], jt.z_size);
    result *= type_class_size(row, k_marginal.counts[k]);
  }
  return result;
}

Pmf type_to_pmf(const TypeVector& t) {
  std::vector<double> p(t.counts.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = static_cast<double>(t.counts[i]) / static_cast<double>(t.n);
  }
  return Pmf(std::move(p));
}

JointPmf joint_type_to_pmf(const JointTypeVector& jt) {
  std::vector<double> p(jt.counts.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = static_cast<double>(jt.counts[i]) / static_cast<double>(jt.n);
  }
  return JointPmf({jt.k_size, jt.z_size}, std::move(p));
}

namespace {

double probability_of_counts(std::span<const std::uint32_t> counts,
                             std::span<const double> p, std::size_t n) {
  long double log_prob = 0.0L;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] == 0) continue;
    if (p[i] <= 0.0) return 0.0;
    log_prob += static_cast<long double>(counts[i]) *
                std::log(static_cast<long double>(p[i]));
  }
  const BigInt size = type_class_size(counts, n);
  const long double log_size = std::log(size.convert_to<long double>());
  return static_cast<double>(std::exp(log_size + log_prob));
}

}  // namespace

double type_probability_iid(const TypeVector& t, const Pmf& p) {
  if (p.size() != t.counts.size())
    throw std::invalid_argument("type_probability_iid: alphabet mismatch");
  return probability_of_counts(t.counts, p.probs(), t.n);
}

double type_probability_iid(const JointTypeVector& jt, const JointPmf& p) {
  if (p.rank() != 2 || p.dims()[0] != jt.k_size || p.dims()[1] != jt.z_size)
    throw std::invalid_argument("type_probability_iid: alphabet mismatch");
  return probability_of_counts(jt.counts, p.flat(), jt.n);
}

void for_each_type_sequence(
    const TypeVector& t,
    const std::function<void(std::span<const std::uint32_t>)>& fn) {
  std::vector<std::uint32_t> seq;
  seq.reserve(t.n);
  for (std::uint32_t sym = 0; sym < t.counts.size(); ++sym) {
    seq.insert(seq.end(), t.counts[sym], sym);
  }
  if (seq.empty()) return;
  do {
    fn(seq);
  } while (std::next_permutation(seq.begin(), seq.end()));
}

void for_each_joint_sequence(
    const JointTypeVector& jt,
    const std::function<void(std::span<const std::uint32_t>,
                             std::span<const std::uint32_t>)>& fn) {
  std::vector<std::uint32_t> super;
  super.reserve(jt.n);
  for (std::uint32_t s = 0; s < jt.counts.size(); ++s) {
    super.insert(super.end(), jt.counts[s], s);
  }
  if (super.empty()) return;
  std::vector<std::uint32_t> k(jt.n), z(jt.n);
  do {
    for (std::size_t t = 0; t < super.size(); ++t) {
      k[t] = super[t] / static_cast<std::uint32_t>(jt.z_size);
      z[t] = super[t] % static_cast<std::uint32_t>(jt.z_size);
    }
    fn(k, z);
  } while (std::next_permutation(super.begin(), super.end()));
}

void for_each_conditional_sequence(
    const JointTypeVector& jt, std::span<const std::uint32_t> k_seq,
    const std::function<void(std::span<const std::uint32_t>)>& fn) {
  if (k_seq.size() != jt.n)
    throw std::invalid_argument("for_each_conditional_sequence: length mismatch");
  if (empirical_type(k_seq, jt.k_size) != joint_k_marginal(jt))
    throw std::invalid_argument(
        "for_each_conditional_sequence: k sequence type mismatch");

  // One z-multiset per k symbol, permuted independently; an odometer over
  // the per-symbol permutations visits the whole conditional class.
  std::vector<std::vector<std::size_t>> positions(jt.k_size);
  for (std::size_t t = 0; t < k_seq.size(); ++t) positions[k_seq[t]].push_back(t);

  std::vector<std::vector<std::uint32_t>> blocks(jt.k_size);
  for (std::size_t k = 0; k < jt.k_size; ++k) {
    for (std::uint32_t zsym = 0; zsym < jt.z_size; ++zsym) {
      blocks[k].insert(blocks[k].end(), jt.at(k, zsym), zsym);
    }
  }

  std::vector<std::uint32_t> z(jt.n, 0);
  const auto scatter = [&](std::size_t k) {
    for (std::size_t i = 0; i < blocks[k].size(); ++i) z[positions[k][i]] = blocks[k][i];
  };
  for (std::size_t k = 0; k < jt.k_size; ++k) scatter(k);

  for (;;) {
    fn(z);
    std::size_t k = 0;
    while (k < jt.k_size) {
      if (!blocks[k].empty() &&
          std::next_permutation(blocks[k].begin(), blocks[k].end())) {
        scatter(k);
        break;
      }
      // wrapped: blocks[k] is back at its sorted minimum
      scatter(k);
      ++k;
    }
    if (k == jt.k_size) return;
  }
}

}  // namespace cipherlab
