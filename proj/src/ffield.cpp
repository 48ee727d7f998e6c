#include "cipherlab/ffield.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "cipherlab/errors.hpp"

namespace cipherlab {

namespace {

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint32_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) return false;
  }
  return true;
}

}  // namespace

FieldSpec::FieldSpec(std::uint32_t q) : q_(q) {
  if (q < 2 || q >= (1u << 16) || !is_prime(q))
    throw std::invalid_argument("FieldSpec: modulus must be prime in [2, 2^16)");
}

Felem FieldSpec::inv(Felem a) const {
  if (a == 0) throw std::domain_error("FieldSpec::inv: zero has no inverse");
  // Extended Euclid on (a, q).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = q_, new_r = a;
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t -= quot * new_t;
    std::swap(t, new_t);
    r -= quot * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += q_;
  return static_cast<Felem>(t);
}

Felem field_arith(const FieldSpec& spec, FieldOp op, Felem a, Felem b) {
  switch (op) {
    case FieldOp::add:
      return spec.add(a, b);
    case FieldOp::sub:
      return spec.sub(a, b);
    case FieldOp::mul:
      return spec.mul(a, b);
    case FieldOp::inv:
      return spec.inv(a);
  }
  throw std::invalid_argument("field_arith: unknown op");
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("FieldMatrix: dimensions must be positive");
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols,
                         std::vector<Felem> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0)
    throw std::invalid_argument("FieldMatrix: dimensions must be positive");
  if (entries_.size() != rows * cols)
    throw std::invalid_argument("FieldMatrix: entry count mismatch");
}

void validate_elements(const FieldSpec& spec, std::span<const Felem> v) {
  for (Felem e : v) {
    if (e >= spec.q())
      throw std::invalid_argument("element outside [0, q)");
  }
}

void validate_matrix(const FieldSpec& spec, const FieldMatrix& a) {
  validate_elements(spec, a.entries());
}

AffineEncoder::AffineEncoder(FieldMatrix a_in, FieldVec b_in)
    : n(a_in.rows()), m(a_in.cols()), a(std::move(a_in)), b(std::move(b_in)) {
  if (m > n) throw std::invalid_argument("AffineEncoder: m must be <= n");
  if (b.size() != m)
    throw std::invalid_argument("AffineEncoder: b length must equal m");
}

FieldVec vec_mat_mul(const FieldSpec& spec, std::span<const Felem> x,
                     const FieldMatrix& a) {
  if (x.size() != a.rows())
    throw std::invalid_argument("vec_mat_mul: dimension mismatch");
  FieldVec y(a.cols(), 0);
  const std::uint64_t q = spec.q();
  // Accumulate in 64 bits, reduce per row: n * (q-1)^2 stays below 2^64
  // for q < 2^16 and n < 2^32.
  std::vector<std::uint64_t> acc(a.cols(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::uint64_t xi = x[i];
    if (xi == 0) continue;
    const auto row = a.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) {
      acc[j] = (acc[j] + xi * row[j]) % q;
    }
  }
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = static_cast<Felem>(acc[j]);
  return y;
}

FieldVec linear_map(const FieldSpec& spec, const AffineEncoder& enc,
                    std::span<const Felem> x) {
  return vec_mat_mul(spec, x, enc.a);
}

FieldVec affine_map(const FieldSpec& spec, const AffineEncoder& enc,
                    std::span<const Felem> k) {
  FieldVec y = vec_mat_mul(spec, k, enc.a);
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = spec.add(y[j], enc.b[j]);
  return y;
}

AffineEncoder sample_affine_encoder(std::size_t n, std::size_t m,
                                    const FieldSpec& spec, SplitMix64& rng) {
  if (m == 0 || m > n)
    throw std::invalid_argument("sample_affine_encoder: need 1 <= m <= n");
  std::vector<Felem> entries(n * m);
  for (auto& e : entries) e = static_cast<Felem>(rng.below(spec.q()));
  FieldVec b(m);
  for (auto& e : b) e = static_cast<Felem>(rng.below(spec.q()));
  return AffineEncoder(FieldMatrix(n, m, std::move(entries)), std::move(b));
}

namespace detail {

std::uint64_t LinearSystem::coset_size() const {
  const std::size_t dim = n - rank;
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (size > UINT64_MAX / q) return UINT64_MAX;
    size *= q;
  }
  return size;
}

bool LinearSystem::solve(const FieldSpec& spec, std::span<const Felem> y,
                         FieldVec& anchor) const {
  // rhs = transform * y; consistency requires zeros past the pivot rows.
  anchor.assign(n, 0);
  for (std::size_t r = 0; r < m; ++r) {
    std::uint64_t acc = 0;
    const FieldVec& trow = transform[r];
    for (std::size_t j = 0; j < m; ++j) {
      acc += static_cast<std::uint64_t>(trow[j]) * y[j];
    }
    const Felem value = static_cast<Felem>(acc % spec.q());
    if (r < rank) {
      anchor[pivot_cols[r]] = value;
    } else if (value != 0) {
      return false;
    }
  }
  return true;
}

LinearSystem factor_transposed(const FieldSpec& spec, const FieldMatrix& a) {
  const std::size_t n = a.rows();
  const std::size_t m = a.cols();
  LinearSystem sys;
  sys.n = n;
  sys.m = m;
  sys.q = spec.q();
  sys.reduced.assign(m, FieldVec(n, 0));
  sys.transform.assign(m, FieldVec(m, 0));
  for (std::size_t r = 0; r < m; ++r) {
    sys.transform[r][r] = 1;
    for (std::size_t c = 0; c < n; ++c) sys.reduced[r][c] = a.at(c, r);
  }

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < n && pivot_row < m; ++col) {
    std::size_t found = pivot_row;
    while (found < m && sys.reduced[found][col] == 0) ++found;
    if (found == m) continue;
    std::swap(sys.reduced[pivot_row], sys.reduced[found]);
    std::swap(sys.transform[pivot_row], sys.transform[found]);
    const Felem scale = spec.inv(sys.reduced[pivot_row][col]);
    if (scale != 1) {
      for (auto& e : sys.reduced[pivot_row]) e = spec.mul(e, scale);
      for (auto& e : sys.transform[pivot_row]) e = spec.mul(e, scale);
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == pivot_row) continue;
      const Felem factor = sys.reduced[r][col];
      if (factor == 0) continue;
      for (std::size_t c2 = 0; c2 < n; ++c2) {
        sys.reduced[r][c2] = spec.sub(
            sys.reduced[r][c2], spec.mul(factor, sys.reduced[pivot_row][c2]));
      }
      for (std::size_t c2 = 0; c2 < m; ++c2) {
        sys.transform[r][c2] =
            spec.sub(sys.transform[r][c2],
                     spec.mul(factor, sys.transform[pivot_row][c2]));
      }
    }
    sys.pivot_cols.push_back(col);
    ++pivot_row;
  }
  sys.rank = sys.pivot_cols.size();

  std::size_t next_pivot = 0;
  for (std::size_t col = 0; col < n; ++col) {
    if (next_pivot < sys.rank && sys.pivot_cols[next_pivot] == col) {
      ++next_pivot;
      continue;
    }
    sys.free_cols.push_back(col);
  }
  sys.kernel.reserve(sys.free_cols.size());
  for (const std::size_t f : sys.free_cols) {
    FieldVec v(n, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < sys.rank; ++r) {
      v[sys.pivot_cols[r]] = spec.neg(sys.reduced[r][f]);
    }
    sys.kernel.push_back(std::move(v));
  }
  return sys;
}

}  // namespace detail

RankKernel rank_and_kernel(const FieldSpec& spec, const FieldMatrix& a) {
  validate_matrix(spec, a);
  detail::LinearSystem sys = detail::factor_transposed(spec, a);
  return RankKernel{sys.rank, std::move(sys.kernel)};
}

CosetEnumerator::CosetEnumerator(const FieldSpec& spec, const FieldMatrix& a,
                                 std::span<const Felem> y,
                                 std::uint64_t budget)
    : spec_(spec) {
  validate_matrix(spec, a);
  validate_elements(spec, y);
  if (y.size() != a.cols())
    throw std::invalid_argument("CosetEnumerator: y length must equal cols");
  sys_ = detail::factor_transposed(spec, a);
  count_ = sys_.coset_size();
  if (count_ > budget)
    throw BudgetError("preimage_coset", static_cast<double>(count_), budget);
  empty_ = !sys_.solve(spec_, y, anchor_);
  reset();
}

void CosetEnumerator::reset() {
  emitted_ = 0;
  digits_.assign(sys_.kernel.size(), 0);
  current_ = anchor_;
}

bool CosetEnumerator::next(FieldVec& out) {
  if (empty_ || emitted_ >= count_) return false;
  out = current_;
  ++emitted_;
  // Odometer: most-significant digit first gives lexicographic coefficient
  // order. Each digit increment (including wraps) adds its basis vector once.
  for (std::size_t d = digits_.size(); d-- > 0;) {
    const FieldVec& basis = sys_.kernel[d];
    for (std::size_t i = 0; i < current_.size(); ++i) {
      if (basis[i] != 0) current_[i] = spec_.add(current_[i], basis[i]);
    }
    if (++digits_[d] < spec_.q()) break;
    digits_[d] = 0;
  }
  return true;
}

std::vector<FieldVec> preimage_coset(const FieldSpec& spec,
                                     const FieldMatrix& a,
                                     std::span<const Felem> y,
                                     std::uint64_t budget) {
  CosetEnumerator it(spec, a, y, budget);
  std::vector<FieldVec> out;
  out.reserve(static_cast<std::size_t>(it.size()));
  FieldVec x;
  while (it.next(x)) out.push_back(x);
  return out;
}

Packed2Matrix::Packed2Matrix(const FieldMatrix& a)
    : rows_(a.rows()), cols_(a.cols()), words_((a.rows() + 63) / 64) {
  col_words_.assign(cols_ * words_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const Felem e = a.at(r, c);
      if (e > 1)
        throw std::invalid_argument("Packed2Matrix: entries must be 0/1");
      if (e) col_words_[c * words_ + r / 64] |= 1ull << (r % 64);
    }
  }
}

void Packed2Matrix::mul(std::span<const Felem> x, std::span<Felem> out) const {
  if (x.size() != rows_ || out.size() != cols_)
    throw std::invalid_argument("Packed2Matrix::mul: dimension mismatch");
  std::vector<std::uint64_t> xw(words_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (x[i]) xw[i / 64] |= 1ull << (i % 64);
  }
  for (std::size_t c = 0; c < cols_; ++c) {
    std::uint64_t parity = 0;
    const std::uint64_t* col = &col_words_[c * words_];
    for (std::size_t w = 0; w < words_; ++w) {
      parity ^= static_cast<std::uint64_t>(std::popcount(xw[w] & col[w]));
    }
    out[c] = static_cast<Felem>(parity & 1);
  }
}

}  // namespace cipherlab
