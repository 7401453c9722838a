#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pkh {

using Int = mpz_class;
using Rat = mpq_class;

struct NotAComplex : std::runtime_error {
  NotAComplex() : std::runtime_error("NotAComplex: d_out * d_in != 0") {}
};

// Coefficient ring tag. Entries are always stored as integers; the tag
// selects the arithmetic used by rank/kernel/homology.
struct Ring {
  enum class Kind { Integers, Rationals, PrimeField };
  Kind kind = Kind::Integers;
  long prime = 0;

  static Ring Z() { return Ring{Kind::Integers, 0}; }
  static Ring Q() { return Ring{Kind::Rationals, 0}; }
  static Ring Fp(long p);
  bool is_field() const { return kind != Kind::Integers; }
  bool operator==(const Ring& o) const { return kind == o.kind && prime == o.prime; }
  std::string name() const;
};

// Sparse matrix, column-major, no stored zeros.
class SparseMatrix {
 public:
  SparseMatrix() : SparseMatrix(0, 0, Ring::Z()) {}
  SparseMatrix(int rows, int cols, Ring ring = Ring::Z());

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Ring& ring() const { return ring_; }
  long nnz() const;

  void set(int r, int c, Int v);
  void add(int r, int c, const Int& v);
  Int get(int r, int c) const;
  const std::map<int, Int>& column(int c) const { return col_[c]; }

  SparseMatrix transpose() const;
  SparseMatrix operator*(const SparseMatrix& o) const;
  SparseMatrix operator+(const SparseMatrix& o) const;
  SparseMatrix operator-(const SparseMatrix& o) const;
  SparseMatrix scaled(const Int& k) const;
  bool operator==(const SparseMatrix& o) const;
  bool is_zero() const;

  static SparseMatrix identity(int n, Ring ring = Ring::Z());
  SparseMatrix with_ring(Ring r) const;
  // columns selected by index list
  SparseMatrix select_columns(const std::vector<int>& idx) const;
  // horizontal concatenation
  static SparseMatrix hconcat(const SparseMatrix& a, const SparseMatrix& b);

  std::vector<Int> apply(const std::vector<Int>& v) const;  // M v

  long rank() const;
  // Kernel: over a field, a basis; over Z, a basis of the (saturated)
  // kernel lattice. Returned as columns of a matrix.
  SparseMatrix kernel_basis() const;
  // Solve A X = B over the fraction field; entries of X must lie in the
  // ring or nullopt is returned. Any solution is returned if underdetermined.
  std::optional<SparseMatrix> solve(const SparseMatrix& B) const;

 private:
  int rows_, cols_;
  Ring ring_;
  std::vector<std::map<int, Int>> col_;

  Int normalized(Int v) const;
};

// Solve A X = B over the fraction field of the common ring (Q for Z/Q,
// F_p itself for prime fields). Returns one solution or nullopt.
std::optional<std::vector<std::vector<Rat>>> solve_rational(const SparseMatrix& A,
                                                            const SparseMatrix& B);

struct SmithResult {
  std::vector<Int> diagonal;  // nonzero diagonal entries d1 | d2 | ...
  long rank = 0;              // = diagonal.size()
  SparseMatrix V;             // column operations; M*V has the SNF column structure
  std::vector<Int> torsion() const;  // entries > 1
};

SmithResult smith_normal_form(const SparseMatrix& M, bool need_v = false);

struct HomologyEntry {
  long free_rank = 0;
  std::vector<Int> torsion;  // divisibility chain, entries > 1
  bool operator==(const HomologyEntry& o) const {
    return free_rank == o.free_rank && torsion == o.torsion;
  }
};

// Homology at the middle of  . --d_in--> . --d_out--> .
// Checks d_out * d_in = 0 and throws NotAComplex otherwise.
HomologyEntry homology(const SparseMatrix& d_in, const SparseMatrix& d_out);

// Matrix Market coordinate format, for debugging with external tools.
std::string matrix_market(const SparseMatrix& m);

}  // namespace pkh
