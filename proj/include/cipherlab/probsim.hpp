#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cipherlab/rng.hpp"

namespace cipherlab {

// All information quantities in this project are in nats. 0*log 0 := 0 and
// x*log(x/0) := +inf for x > 0; infinity is a value, never an error.

class Pmf {
 public:
  explicit Pmf(std::vector<double> probs);
  static Pmf uniform(std::size_t size);

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  std::span<const double> probs() const { return p_; }
  bool is_uniform(double tol = 1e-12) const;

 private:
  std::vector<double> p_;
};

class Channel {
 public:
  Channel(std::size_t in_size, std::size_t out_size, std::vector<double> rows);
  static Channel bsc(double flip);
  static Channel identity(std::size_t size);
  // Output independent of the input symbol.
  static Channel constant_rows(std::size_t in_size, const Pmf& out);

  std::size_t in_size() const { return in_; }
  std::size_t out_size() const { return out_; }
  double at(std::size_t i, std::size_t o) const { return p_[i * out_ + o]; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(p_).subspan(i * out_, out_);
  }

 private:
  std::size_t in_, out_;
  std::vector<double> p_;
};

class JointPmf {
 public:
  JointPmf(std::vector<std::size_t> dims, std::vector<double> probs);
  static JointPmf product(const Pmf& a, const Pmf& b);
  // p(k, z) = p_in(k) * w(z | k).
  static JointPmf from_source_channel(const Pmf& p_in, const Channel& w);

  std::size_t rank() const { return dims_.size(); }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::span<const double> flat() const { return p_; }
  double at(std::size_t i, std::size_t j) const;                 // rank 2
  double at(std::size_t i, std::size_t j, std::size_t k) const;  // rank 3
  Pmf marginal(std::size_t axis) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> p_;
};

// Reverse conditional p(a | b) of a rank-2 joint over (a, b); rows indexed
// by b. Zero-probability b rows are filled uniformly (they carry no mass).
Channel reverse_channel(const JointPmf& joint_ab);

double entropy(std::span<const double> probs);
double entropy(const Pmf& p);
double entropy(const JointPmf& p);

double divergence(std::span<const double> p, std::span<const double> q);
double divergence(const Pmf& p, const Pmf& q);
// sum_b weights(b) * D(p(.|b) || q); rows of p_a_given_b indexed by b.
double divergence_cond(const Channel& p_a_given_b, const Pmf& q_a,
                       const Pmf& weights_b);

double mutual_information(const JointPmf& joint);  // rank 2

std::vector<std::uint32_t> sample_iid(const Pmf& p, std::size_t n,
                                      SplitMix64& rng);
std::vector<std::uint32_t> channel_apply(const Channel& w,
                                         std::span<const std::uint32_t> input,
                                         SplitMix64& rng);

}  // namespace cipherlab
