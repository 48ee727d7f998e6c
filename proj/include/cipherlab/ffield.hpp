#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cipherlab/rng.hpp"

namespace cipherlab {

using Felem = std::uint32_t;
using FieldVec = std::vector<Felem>;

enum class FieldOp { add, sub, mul, inv };

// Prime field GF(q), 2 <= q < 2^16. Prime moduli keep the arithmetic
// table-free; extension fields are out of scope.
class FieldSpec {
 public:
  explicit FieldSpec(std::uint32_t q);

  std::uint32_t q() const { return q_; }

  Felem add(Felem a, Felem b) const {
    const std::uint32_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  Felem sub(Felem a, Felem b) const { return a >= b ? a - b : a + q_ - b; }
  Felem neg(Felem a) const { return a == 0 ? 0 : q_ - a; }
  Felem mul(Felem a, Felem b) const {
    return static_cast<Felem>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  Felem inv(Felem a) const;  // throws std::domain_error for a == 0

  bool operator==(const FieldSpec& o) const { return q_ == o.q_; }

 private:
  std::uint32_t q_;
};

Felem field_arith(const FieldSpec& spec, FieldOp op, Felem a, Felem b);

class FieldMatrix {
 public:
  FieldMatrix(std::size_t rows, std::size_t cols);
  FieldMatrix(std::size_t rows, std::size_t cols, std::vector<Felem> entries);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Felem at(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }
  Felem& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  std::span<const Felem> entries() const { return entries_; }
  std::span<const Felem> row(std::size_t r) const {
    return std::span<const Felem>(entries_).subspan(r * cols_, cols_);
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Felem> entries_;
};

// Checks that every entry of a vector/matrix lies in [0, q).
void validate_elements(const FieldSpec& spec, std::span<const Felem> v);
void validate_matrix(const FieldSpec& spec, const FieldMatrix& a);

// The pair (A, b): x |-> xA is the linear map, k |-> kA (+) b the affine one.
struct AffineEncoder {
  std::size_t n, m;
  FieldMatrix a;  // n x m
  FieldVec b;     // length m

  AffineEncoder(FieldMatrix a_in, FieldVec b_in);
};

// y_j = sum_i x_i A_ij over GF(q).
FieldVec vec_mat_mul(const FieldSpec& spec, std::span<const Felem> x,
                     const FieldMatrix& a);

// xA (linear part) and xA (+) b (affine map) of an encoder.
FieldVec linear_map(const FieldSpec& spec, const AffineEncoder& enc,
                    std::span<const Felem> x);
FieldVec affine_map(const FieldSpec& spec, const AffineEncoder& enc,
                    std::span<const Felem> k);

// Entries of A and b i.i.d. uniform over GF(q); deterministic given the
// generator state (A row-major first, then b).
AffineEncoder sample_affine_encoder(std::size_t n, std::size_t m,
                                    const FieldSpec& spec, SplitMix64& rng);

struct RankKernel {
  std::size_t rank;
  std::vector<FieldVec> kernel_basis;  // spans {v : vA = 0}, size n - rank
};

RankKernel rank_and_kernel(const FieldSpec& spec, const FieldMatrix& a);

namespace detail {

// Row-reduced form of A^T with the recorded transform, so that x A = y can
// be solved for many y after factoring once. Pivots are chosen in fixed
// (first nonzero row, ascending column) order: anchors are reproducible.
struct LinearSystem {
  std::size_t n = 0;  // unknowns
  std::size_t m = 0;  // equations
  std::size_t rank = 0;
  std::uint32_t q = 2;
  std::vector<FieldVec> reduced;        // m rows of length n (RREF of A^T)
  std::vector<FieldVec> transform;      // m x m, transform * A^T = reduced
  std::vector<std::size_t> pivot_cols;  // size rank, ascending
  std::vector<std::size_t> free_cols;   // size n - rank, ascending
  std::vector<FieldVec> kernel;         // basis vector per free column

  // q^{n-rank}, clamped to UINT64_MAX on overflow.
  std::uint64_t coset_size() const;
  // Anchor solution (free coordinates zero); false if y is not in the image.
  bool solve(const FieldSpec& spec, std::span<const Felem> y,
             FieldVec& anchor) const;
};

LinearSystem factor_transposed(const FieldSpec& spec, const FieldMatrix& a);

}  // namespace detail

// Iterates {x : xA = y} as anchor (+) span of the kernel basis, coefficient
// vectors in lexicographic order. Empty (not an error) when y is outside the
// image; BudgetError when q^{n-rank} exceeds the budget.
class CosetEnumerator {
 public:
  CosetEnumerator(const FieldSpec& spec, const FieldMatrix& a,
                  std::span<const Felem> y, std::uint64_t budget);

  bool empty() const { return empty_; }
  std::uint64_t size() const { return empty_ ? 0 : count_; }
  void reset();
  // Writes the next member into out; false once exhausted.
  bool next(FieldVec& out);

 private:
  FieldSpec spec_;
  detail::LinearSystem sys_;
  FieldVec anchor_;
  bool empty_ = false;
  std::uint64_t count_ = 0;
  std::uint64_t emitted_ = 0;
  std::vector<std::uint32_t> digits_;
  FieldVec current_;
};

// Materialized convenience wrapper around CosetEnumerator.
std::vector<FieldVec> preimage_coset(const FieldSpec& spec,
                                     const FieldMatrix& a,
                                     std::span<const Felem> y,
                                     std::uint64_t budget);

// GF(2) fast path: columns packed into 64-bit words, multiply via AND+parity.
class Packed2Matrix {
 public:
  explicit Packed2Matrix(const FieldMatrix& a);  // entries must be 0/1

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  // out_j = parity(x & col_j); x has rows() entries in {0,1}.
  void mul(std::span<const Felem> x, std::span<Felem> out) const;

 private:
  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> col_words_;  // column-major
};

}  // namespace cipherlab
