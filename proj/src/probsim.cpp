#include "cipherlab/probsim.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "cipherlab/numeric.hpp"

namespace cipherlab {

namespace {

constexpr double kSumTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_distribution(std::span<const double> p, const char* what) {
  if (p.empty()) throw std::invalid_argument(std::string(what) + ": empty");
  NeumaierSum sum;
  for (double v : p) {
    if (!(v >= 0.0))
      throw std::invalid_argument(std::string(what) + ": negative entry");
    sum.add(v);
  }
  if (std::abs(sum.value() - 1.0) > kSumTol)
    throw std::invalid_argument(std::string(what) + ": does not sum to 1");
}

}  // namespace

Pmf::Pmf(std::vector<double> probs) : p_(std::move(probs)) {
  check_distribution(p_, "Pmf");
}

Pmf Pmf::uniform(std::size_t size) {
  if (size == 0) throw std::invalid_argument("Pmf::uniform: empty");
  return Pmf(std::vector<double>(size, 1.0 / static_cast<double>(size)));
}

bool Pmf::is_uniform(double tol) const {
  const double u = 1.0 / static_cast<double>(p_.size());
  for (double v : p_) {
    if (std::abs(v - u) > tol) return false;
  }
  return true;
}

Channel::Channel(std::size_t in_size, std::size_t out_size,
                 std::vector<double> rows)
    : in_(in_size), out_(out_size), p_(std::move(rows)) {
  if (in_ == 0 || out_ == 0 || p_.size() != in_ * out_)
    throw std::invalid_argument("Channel: bad dimensions");
  for (std::size_t i = 0; i < in_; ++i) check_distribution(row(i), "Channel row");
}

Channel Channel::bsc(double flip) {
  if (!(flip >= 0.0 && flip <= 1.0))
    throw std::invalid_argument("Channel::bsc: flip outside [0,1]");
  return Channel(2, 2, {1.0 - flip, flip, flip, 1.0 - flip});
}

Channel Channel::identity(std::size_t size) {
  std::vector<double> rows(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) rows[i * size + i] = 1.0;
  return Channel(size, size, std::move(rows));
}

Channel Channel::constant_rows(std::size_t in_size, const Pmf& out) {
  std::vector<double> rows;
  rows.reserve(in_size * out.size());
  for (std::size_t i = 0; i < in_size; ++i) {
    rows.insert(rows.end(), out.probs().begin(), out.probs().end());
  }
  return Channel(in_size, out.size(), std::move(rows));
}

JointPmf::JointPmf(std::vector<std::size_t> dims, std::vector<double> probs)
    : dims_(std::move(dims)), p_(std::move(probs)) {
  std::size_t total = 1;
  for (std::size_t d : dims_) {
    if (d == 0) throw std::invalid_argument("JointPmf: zero dimension");
    total *= d;
  }
  if (dims_.empty() || p_.size() != total)
    throw std::invalid_argument("JointPmf: size mismatch");
  check_distribution(p_, "JointPmf");
}

JointPmf JointPmf::product(const Pmf& a, const Pmf& b) {
  std::vector<double> probs(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) probs[i * b.size() + j] = a[i] * b[j];
  }
  return JointPmf({a.size(), b.size()}, std::move(probs));
}

JointPmf JointPmf::from_source_channel(const Pmf& p_in, const Channel& w) {
  if (p_in.size() != w.in_size())
    throw std::invalid_argument("from_source_channel: alphabet mismatch");
  std::vector<double> probs(p_in.size() * w.out_size());
  for (std::size_t i = 0; i < p_in.size(); ++i) {
    for (std::size_t o = 0; o < w.out_size(); ++o) {
      probs[i * w.out_size() + o] = p_in[i] * w.at(i, o);
    }
  }
  return JointPmf({p_in.size(), w.out_size()}, std::move(probs));
}

double JointPmf::at(std::size_t i, std::size_t j) const {
  return p_[i * dims_[1] + j];
}

double JointPmf::at(std::size_t i, std::size_t j, std::size_t k) const {
  return p_[(i * dims_[1] + j) * dims_[2] + k];
}

Pmf JointPmf::marginal(std::size_t axis) const {
  if (axis >= dims_.size()) throw std::invalid_argument("marginal: bad axis");
  std::size_t inner = 1;
  for (std::size_t a = axis + 1; a < dims_.size(); ++a) inner *= dims_[a];
  const std::size_t d = dims_[axis];
  std::vector<NeumaierSum> sums(d);
  for (std::size_t idx = 0; idx < p_.size(); ++idx) {
    sums[(idx / inner) % d].add(p_[idx]);
  }
  std::vector<double> out(d);
  NeumaierSum total;
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = sums[i].value();
    total.add(out[i]);
  }
  // Guard against drift so chained constructions keep validating.
  const double t = total.value();
  if (t > 0) {
    for (auto& v : out) v /= t;
  }
  return Pmf(std::move(out));
}

Channel reverse_channel(const JointPmf& joint_ab) {
  if (joint_ab.rank() != 2)
    throw std::invalid_argument("reverse_channel: rank-2 joint required");
  const std::size_t na = joint_ab.dims()[0];
  const std::size_t nb = joint_ab.dims()[1];
  std::vector<double> rows(nb * na, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    double pb = 0.0;
    for (std::size_t a = 0; a < na; ++a) pb += joint_ab.at(a, b);
    if (pb <= 0.0) {
      for (std::size_t a = 0; a < na; ++a) rows[b * na + a] = 1.0 / na;
      continue;
    }
    for (std::size_t a = 0; a < na; ++a) rows[b * na + a] = joint_ab.at(a, b) / pb;
  }
  return Channel(nb, na, std::move(rows));
}

double entropy(std::span<const double> probs) {
  NeumaierSum h;
  for (double p : probs) {
    if (p > 0.0) h.add(-p * std::log(p));
  }
  const double v = h.value();
  return v < 0.0 ? 0.0 : v;
}

double entropy(const Pmf& p) { return entropy(p.probs()); }
double entropy(const JointPmf& p) { return entropy(p.flat()); }

double divergence(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size())
    throw std::invalid_argument("divergence: alphabet mismatch");
  NeumaierSum d;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    d.add(p[i] * std::log(p[i] / q[i]));
  }
  const double v = d.value();
  return v < 0.0 ? 0.0 : v;
}

double divergence(const Pmf& p, const Pmf& q) {
  return divergence(p.probs(), q.probs());
}

double divergence_cond(const Channel& p_a_given_b, const Pmf& q_a,
                       const Pmf& weights_b) {
  if (p_a_given_b.out_size() != q_a.size() ||
      p_a_given_b.in_size() != weights_b.size())
    throw std::invalid_argument("divergence_cond: dimension mismatch");
  NeumaierSum d;
  for (std::size_t b = 0; b < weights_b.size(); ++b) {
    if (weights_b[b] == 0.0) continue;
    const double db = divergence(p_a_given_b.row(b), q_a.probs());
    if (std::isinf(db)) return kInf;
    d.add(weights_b[b] * db);
  }
  return d.value();
}

double mutual_information(const JointPmf& joint) {
  if (joint.rank() != 2)
    throw std::invalid_argument("mutual_information: rank-2 joint required");
  const double value = entropy(joint.marginal(0)) + entropy(joint.marginal(1)) -
                       entropy(joint);
  return value < 0.0 ? 0.0 : value;
}

std::vector<std::uint32_t> sample_iid(const Pmf& p, std::size_t n,
                                      SplitMix64& rng) {
  std::vector<std::uint32_t> seq(n);
  for (auto& s : seq) {
    const double u = rng.uniform01();
    double cum = 0.0;
    std::uint32_t sym = static_cast<std::uint32_t>(p.size() - 1);
    for (std::size_t i = 0; i < p.size(); ++i) {
      cum += p[i];
      if (u < cum) {
        sym = static_cast<std::uint32_t>(i);
        break;
      }
    }
    s = sym;
  }
  return seq;
}

std::vector<std::uint32_t> channel_apply(const Channel& w,
                                         std::span<const std::uint32_t> input,
                                         SplitMix64& rng) {
  std::vector<std::uint32_t> out(input.size());
  for (std::size_t t = 0; t < input.size(); ++t) {
    if (input[t] >= w.in_size())
      throw std::invalid_argument("channel_apply: symbol out of range");
    const auto row = w.row(input[t]);
    const double u = rng.uniform01();
    double cum = 0.0;
    std::uint32_t sym = static_cast<std::uint32_t>(w.out_size() - 1);
    for (std::size_t o = 0; o < row.size(); ++o) {
      cum += row[o];
      if (u < cum) {
        sym = static_cast<std::uint32_t>(o);
        break;
      }
    }
    out[t] = sym;
  }
  return out;
}

}  // namespace cipherlab
