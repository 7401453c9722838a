#include "pkh/exactla.hpp"

#include <algorithm>
#include <cassert>

namespace pkh {

Ring Ring::Fp(long p) {
  if (p < 2) throw std::runtime_error("prime field characteristic must be >= 2");
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) throw std::runtime_error("characteristic is not prime");
  return Ring{Kind::PrimeField, p};
}

std::string Ring::name() const {
  switch (kind) {
    case Kind::Integers: return "Z";
    case Kind::Rationals: return "Q";
    case Kind::PrimeField: return "F" + std::to_string(prime);
  }
  return "?";
}

SparseMatrix::SparseMatrix(int rows, int cols, Ring ring)
    : rows_(rows), cols_(cols), ring_(ring), col_(cols) {}

Int SparseMatrix::normalized(Int v) const {
  if (ring_.kind == Ring::Kind::PrimeField) {
    v %= ring_.prime;
    if (v < 0) v += ring_.prime;
  }
  return v;
}

long SparseMatrix::nnz() const {
  long n = 0;
  for (const auto& c : col_) n += (long)c.size();
  return n;
}

void SparseMatrix::set(int r, int c, Int v) {
  assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
  v = normalized(std::move(v));
  if (v == 0)
    col_[c].erase(r);
  else
    col_[c][r] = std::move(v);
}

void SparseMatrix::add(int r, int c, const Int& v) {
  assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
  auto it = col_[c].find(r);
  Int nv = (it == col_[c].end()) ? v : it->second + v;
  set(r, c, std::move(nv));
}

Int SparseMatrix::get(int r, int c) const {
  auto it = col_[c].find(r);
  return it == col_[c].end() ? Int(0) : it->second;
}

SparseMatrix SparseMatrix::transpose() const {
  SparseMatrix t(cols_, rows_, ring_);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : col_[c]) t.col_[r][c] = v;
  return t;
}

SparseMatrix SparseMatrix::operator*(const SparseMatrix& o) const {
  assert(cols_ == o.rows_ && ring_ == o.ring_);
  SparseMatrix out(rows_, o.cols_, ring_);
  for (int c = 0; c < o.cols_; ++c) {
    std::map<int, Int> acc;
    for (const auto& [k, vk] : o.col_[c])
      for (const auto& [r, vr] : col_[k]) acc[r] += vr * vk;
    for (auto& [r, v] : acc) {
      v = normalized(std::move(v));
      if (v != 0) out.col_[c][r] = std::move(v);
    }
  }
  return out;
}

SparseMatrix SparseMatrix::operator+(const SparseMatrix& o) const {
  assert(rows_ == o.rows_ && cols_ == o.cols_ && ring_ == o.ring_);
  SparseMatrix out = *this;
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : o.col_[c]) out.add(r, c, v);
  return out;
}

SparseMatrix SparseMatrix::operator-(const SparseMatrix& o) const {
  return *this + o.scaled(-1);
}

SparseMatrix SparseMatrix::scaled(const Int& k) const {
  SparseMatrix out(rows_, cols_, ring_);
  if (k == 0) return out;
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, v] : col_[c]) {
      Int nv = normalized(v * k);
      if (nv != 0) out.col_[c][r] = std::move(nv);
    }
  return out;
}

bool SparseMatrix::operator==(const SparseMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  return (*this - o).is_zero();
}

bool SparseMatrix::is_zero() const {
  for (const auto& c : col_)
    if (!c.empty()) return false;
  return true;
}

SparseMatrix SparseMatrix::identity(int n, Ring ring) {
  SparseMatrix m(n, n, ring);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

SparseMatrix SparseMatrix::with_ring(Ring r) const {
  SparseMatrix out(rows_, cols_, r);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [row, v] : col_[c]) out.set(row, c, v);
  return out;
}

SparseMatrix SparseMatrix::select_columns(const std::vector<int>& idx) const {
  SparseMatrix out((int)rows_, (int)idx.size(), ring_);
  for (size_t j = 0; j < idx.size(); ++j) out.col_[j] = col_[idx[j]];
  return out;
}

SparseMatrix SparseMatrix::hconcat(const SparseMatrix& a, const SparseMatrix& b) {
  assert(a.rows_ == b.rows_ && a.ring_ == b.ring_);
  SparseMatrix out(a.rows_, a.cols_ + b.cols_, a.ring_);
  for (int c = 0; c < a.cols_; ++c) out.col_[c] = a.col_[c];
  for (int c = 0; c < b.cols_; ++c) out.col_[a.cols_ + c] = b.col_[c];
  return out;
}

std::vector<Int> SparseMatrix::apply(const std::vector<Int>& v) const {
  assert((int)v.size() == cols_);
  std::vector<Int> out(rows_, 0);
  for (int c = 0; c < cols_; ++c) {
    if (v[c] == 0) continue;
    for (const auto& [r, a] : col_[c]) out[r] += a * v[c];
  }
  for (auto& x : out) x = normalized(std::move(x));
  return out;
}

namespace {

// Dense elimination over F_p with machine integers.
struct DenseFp {
  long p;
  int rows, cols;
  std::vector<std::vector<long>> a;

  DenseFp(const SparseMatrix& m) : p(m.ring().prime), rows(m.rows()), cols(m.cols()) {
    a.assign(rows, std::vector<long>(cols, 0));
    for (int c = 0; c < cols; ++c)
      for (const auto& [r, v] : m.column(c)) {
        long x = mpz_fdiv_ui(v.get_mpz_t(), (unsigned long)p);
        a[r][c] = x;
      }
  }

  long inv(long x) const {
    long t = 0, nt = 1, r = p, nr = x % p;
    while (nr != 0) {
      long q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    return ((t % p) + p) % p;
  }

  long mulmod(long x, long y) const { return (long)((__int128)x * y % p); }

  std::vector<int> echelonize(int pivot_limit = -1) {
    if (pivot_limit < 0) pivot_limit = cols;
    std::vector<int> pivots;
    int prow = 0;
    for (int c = 0; c < pivot_limit && prow < rows; ++c) {
      int sel = -1;
      for (int r = prow; r < rows; ++r)
        if (a[r][c] != 0) { sel = r; break; }
      if (sel < 0) continue;
      std::swap(a[sel], a[prow]);
      long iv = inv(a[prow][c]);
      for (int j = c; j < cols; ++j) a[prow][j] = mulmod(a[prow][j], iv);
      for (int r = 0; r < rows; ++r) {
        if (r == prow || a[r][c] == 0) continue;
        long f = a[r][c];
        for (int j = c; j < cols; ++j) {
          a[r][j] = (a[r][j] - mulmod(f, a[prow][j])) % p;
          if (a[r][j] < 0) a[r][j] += p;
        }
      }
      pivots.push_back(c);
      ++prow;
    }
    return pivots;
  }
};

// Dense echelonization over Q (row-reduces in place, returns pivot cols).
// Used for field ranks, kernels and solves; prime-field work reduces mod p
// first and then runs the same routine on small representatives.
struct DenseQ {
  int rows, cols;
  Ring ring;
  std::vector<std::vector<Rat>> a;

  DenseQ(const SparseMatrix& m) : rows(m.rows()), cols(m.cols()), ring(m.ring()) {
    a.assign(rows, std::vector<Rat>(cols, Rat(0)));
    for (int c = 0; c < cols; ++c)
      for (const auto& [r, v] : m.column(c)) a[r][c] = Rat(v);
  }

  Rat reduce_entry(Rat v) const {
    if (ring.kind == Ring::Kind::PrimeField) {
      // v is integral at all times in F_p mode
      Int n = v.get_num() % ring.prime;
      if (n < 0) n += ring.prime;
      return Rat(n);
    }
    return v;
  }

  Rat inverse(const Rat& v) const {
    if (ring.kind == Ring::Kind::PrimeField) {
      Int r, g;
      mpz_class p(ring.prime);
      mpz_gcdext(g.get_mpz_t(), r.get_mpz_t(), nullptr, v.get_num().get_mpz_t(),
                 p.get_mpz_t());
      r %= p;
      if (r < 0) r += p;
      return Rat(r);
    }
    return 1 / v;
  }

  // returns pivot column per pivot row
  std::vector<int> echelonize() {
    std::vector<int> pivots;
    int prow = 0;
    for (int c = 0; c < cols && prow < rows; ++c) {
      int sel = -1;
      for (int r = prow; r < rows; ++r)
        if (a[r][c] != 0) { sel = r; break; }
      if (sel < 0) continue;
      std::swap(a[sel], a[prow]);
      Rat inv = inverse(a[prow][c]);
      for (int j = c; j < cols; ++j)
        a[prow][j] = reduce_entry(a[prow][j] * inv);
      for (int r = 0; r < rows; ++r) {
        if (r == prow || a[r][c] == 0) continue;
        Rat f = a[r][c];
        for (int j = c; j < cols; ++j)
          a[r][j] = reduce_entry(a[r][j] - f * a[prow][j]);
      }
      pivots.push_back(c);
      ++prow;
    }
    return pivots;
  }
};

}  // namespace

long SparseMatrix::rank() const {
  if (rows_ == 0 || cols_ == 0) return 0;
  if (ring_.kind == Ring::Kind::PrimeField) {
    DenseFp d(*this);
    return (long)d.echelonize().size();
  }
  DenseQ d(*this);
  return (long)d.echelonize().size();
}

SparseMatrix SparseMatrix::kernel_basis() const {
  if (ring_.kind == Ring::Kind::PrimeField) {
    DenseFp d(*this);
    std::vector<int> piv = d.echelonize();
    std::vector<char> is_piv(cols_, 0);
    for (int c : piv) is_piv[c] = 1;
    SparseMatrix ker(cols_, cols_ - (int)piv.size(), ring_);
    int k = 0;
    for (int c = 0; c < cols_; ++c) {
      if (is_piv[c]) continue;
      ker.set(c, k, 1);
      for (size_t pr = 0; pr < piv.size(); ++pr)
        if (d.a[pr][c]) ker.set(piv[pr], k, -d.a[pr][c]);
      ++k;
    }
    return ker;
  }
  if (ring_.is_field()) {
    DenseQ d(*this);
    std::vector<int> piv = d.echelonize();
    std::vector<char> is_piv(cols_, 0);
    for (int c : piv) is_piv[c] = 1;
    SparseMatrix ker(cols_, cols_ - (int)piv.size(), ring_);
    int k = 0;
    for (int c = 0; c < cols_; ++c) {
      if (is_piv[c]) continue;
      // basis vector: 1 at the free column, -a[pr][c] at the pivot columns;
      // over Q, scale by the denominator lcm to keep integer storage
      Int lcm = 1;
      for (size_t pr = 0; pr < piv.size(); ++pr) {
        const Rat& v = d.a[pr][c];
        if (v != 0) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), v.get_den().get_mpz_t());
      }
      ker.set(c, k, lcm);
      for (size_t pr = 0; pr < piv.size(); ++pr) {
        const Rat& v = d.a[pr][c];
        if (v != 0) {
          Rat scaled = v * lcm;
          ker.set(piv[pr], k, -scaled.get_num());
        }
      }
      ++k;
    }
    return ker;
  }
  // Integer kernel lattice via SNF column operations.
  SmithResult s = smith_normal_form(*this, /*need_v=*/true);
  std::vector<int> idx;
  for (int c = (int)s.rank; c < cols_; ++c) idx.push_back(c);
  return s.V.select_columns(idx);
}

std::optional<std::vector<std::vector<Rat>>> solve_rational(const SparseMatrix& A,
                                                            const SparseMatrix& B) {
  assert(B.rows() == A.rows() && A.ring() == B.ring());
  if (A.ring().kind == Ring::Kind::PrimeField) {
    SparseMatrix aug = SparseMatrix::hconcat(A, B);
    DenseFp d(aug);
    std::vector<int> pivots = d.echelonize(A.cols());
    for (int r = (int)pivots.size(); r < A.rows(); ++r)
      for (int j = A.cols(); j < aug.cols(); ++j)
        if (d.a[r][j]) return std::nullopt;
    std::vector<std::vector<Rat>> X(A.cols(), std::vector<Rat>(B.cols(), Rat(0)));
    for (size_t pr = 0; pr < pivots.size(); ++pr)
      for (int j = 0; j < B.cols(); ++j) X[pivots[pr]][j] = Rat(d.a[pr][A.cols() + j]);
    return X;
  }
  SparseMatrix aug = SparseMatrix::hconcat(A, B);
  DenseQ d(aug);
  int rows = A.rows(), acols = A.cols();
  std::vector<int> pivots;
  int prow = 0;
  for (int c = 0; c < acols && prow < rows; ++c) {
    int sel = -1;
    for (int r = prow; r < rows; ++r)
      if (d.a[r][c] != 0) { sel = r; break; }
    if (sel < 0) continue;
    std::swap(d.a[sel], d.a[prow]);
    Rat inv = d.inverse(d.a[prow][c]);
    for (int j = c; j < aug.cols(); ++j) d.a[prow][j] = d.reduce_entry(d.a[prow][j] * inv);
    for (int r = 0; r < rows; ++r) {
      if (r == prow || d.a[r][c] == 0) continue;
      Rat f = d.a[r][c];
      for (int j = c; j < aug.cols(); ++j)
        d.a[r][j] = d.reduce_entry(d.a[r][j] - f * d.a[prow][j]);
    }
    pivots.push_back(c);
    ++prow;
  }
  for (int r = (int)pivots.size(); r < rows; ++r)
    for (int j = acols; j < aug.cols(); ++j)
      if (d.a[r][j] != 0) return std::nullopt;
  std::vector<std::vector<Rat>> X(acols, std::vector<Rat>(B.cols(), Rat(0)));
  for (size_t pr = 0; pr < pivots.size(); ++pr)
    for (int j = 0; j < B.cols(); ++j) X[pivots[pr]][j] = d.a[pr][acols + j];
  return X;
}

std::optional<SparseMatrix> SparseMatrix::solve(const SparseMatrix& B) const {
  assert(B.rows() == rows_ && ring_ == B.ring());
  // eliminate on [A | B] over the fraction field
  SparseMatrix aug = hconcat(*this, B);
  DenseQ d(aug);
  // restrict pivoting to the A-part
  std::vector<int> pivots;
  {
    int prow = 0;
    for (int c = 0; c < cols_ && prow < rows_; ++c) {
      int sel = -1;
      for (int r = prow; r < rows_; ++r)
        if (d.a[r][c] != 0) { sel = r; break; }
      if (sel < 0) continue;
      std::swap(d.a[sel], d.a[prow]);
      Rat inv = d.inverse(d.a[prow][c]);
      for (int j = c; j < aug.cols(); ++j) d.a[prow][j] = d.reduce_entry(d.a[prow][j] * inv);
      for (int r = 0; r < rows_; ++r) {
        if (r == prow || d.a[r][c] == 0) continue;
        Rat f = d.a[r][c];
        for (int j = c; j < aug.cols(); ++j)
          d.a[r][j] = d.reduce_entry(d.a[r][j] - f * d.a[prow][j]);
      }
      pivots.push_back(c);
      ++prow;
    }
  }
  // consistency: rows below the pivots must have zero B-part
  for (int r = (int)pivots.size(); r < rows_; ++r)
    for (int j = cols_; j < aug.cols(); ++j)
      if (d.a[r][j] != 0) return std::nullopt;
  SparseMatrix X(cols_, B.cols(), ring_);
  for (size_t pr = 0; pr < pivots.size(); ++pr) {
    for (int j = 0; j < B.cols(); ++j) {
      Rat v = d.a[pr][cols_ + j];
      if (v == 0) continue;
      if (ring_.kind == Ring::Kind::Integers && v.get_den() != 1) return std::nullopt;
      if (ring_.kind != Ring::Kind::Integers && v.get_den() != 1) {
        // F_p entries are integral; Q solutions may be fractional, which the
        // integer-backed storage cannot hold. Scale-free callers use Z or F_p;
        // over Q we only accept integral solutions as well.
        return std::nullopt;
      }
      X.set(pivots[pr], j, v.get_num());
    }
  }
  return X;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

struct SnfWork {
  int rows, cols;
  std::vector<std::map<int, Int>> col;   // column -> row -> value
  std::vector<std::map<int, char>> row;  // row -> set of columns with nonzero
  SparseMatrix V;
  bool track_v;

  SnfWork(const SparseMatrix& m, bool need_v)
      : rows(m.rows()), cols(m.cols()), col(m.cols()), row(m.rows()),
        V(SparseMatrix::identity(m.cols())), track_v(need_v) {
    for (int c = 0; c < m.cols(); ++c)
      for (const auto& [r, v] : m.column(c)) {
        col[c][r] = v;
        row[r][c] = 1;
      }
  }

  void set_entry(int r, int c, Int v) {
    if (v == 0) {
      col[c].erase(r);
      row[r].erase(c);
    } else {
      col[c][r] = std::move(v);
      row[r][c] = 1;
    }
  }

  Int entry(int r, int c) const {
    auto it = col[c].find(r);
    return it == col[c].end() ? Int(0) : it->second;
  }

  // col[dst] += k * col[src]
  void col_axpy(const Int& k, int src, int dst) {
    if (k == 0) return;
    std::vector<std::pair<int, Int>> updates(col[src].begin(), col[src].end());
    for (auto& [r, v] : updates) set_entry(r, dst, entry(r, dst) + k * v);
    if (track_v) {
      for (int r = 0; r < V.rows(); ++r) {
        Int v = V.get(r, src);
        if (v != 0) V.add(r, dst, k * v);
      }
    }
  }

  // row[dst] += k * row[src]   (no V update; row ops act on the left)
  void row_axpy(const Int& k, int src, int dst) {
    if (k == 0) return;
    std::vector<int> cs;
    for (const auto& [c, _] : row[src]) cs.push_back(c);
    for (int c : cs) set_entry(dst, c, entry(dst, c) + k * entry(src, c));
  }

  void swap_cols(int a, int b) {
    if (a == b) return;
    std::vector<std::pair<int, Int>> ca(col[a].begin(), col[a].end());
    std::vector<std::pair<int, Int>> cb(col[b].begin(), col[b].end());
    for (auto& [r, v] : ca) set_entry(r, a, 0);
    for (auto& [r, v] : cb) set_entry(r, b, 0);
    for (auto& [r, v] : ca) set_entry(r, b, v);
    for (auto& [r, v] : cb) set_entry(r, a, v);
    if (track_v) {
      for (int r = 0; r < V.rows(); ++r) {
        Int va = V.get(r, a), vb = V.get(r, b);
        V.set(r, a, vb);
        V.set(r, b, va);
      }
    }
  }

  void swap_rows(int a, int b) {
    if (a == b) return;
    std::vector<std::pair<int, Int>> ra, rb;
    for (const auto& [c, _] : row[a]) ra.push_back({c, entry(a, c)});
    for (const auto& [c, _] : row[b]) rb.push_back({c, entry(b, c)});
    for (auto& [c, v] : ra) set_entry(a, c, 0);
    for (auto& [c, v] : rb) set_entry(b, c, 0);
    for (auto& [c, v] : ra) set_entry(b, c, v);
    for (auto& [c, v] : rb) set_entry(a, c, v);
  }
};

}  // namespace

SmithResult smith_normal_form(const SparseMatrix& M, bool need_v) {
  if (M.ring().kind != Ring::Kind::Integers)
    throw std::runtime_error("smith_normal_form requires integer ring");
  SnfWork w(M, need_v);
  int t = 0;
  int bound = std::min(M.rows(), M.cols());
  std::vector<Int> diag;

  while (t < bound) {
    // pivot: smallest |value|, ties broken by Markowitz fill (nnz_row*nnz_col)
    int pr = -1, pc = -1;
    Int best_abs = 0;
    long best_fill = 0;
    for (int c = t; c < w.cols; ++c) {
      for (const auto& [r, v] : w.col[c]) {
        if (r < t) continue;
        Int a = abs(v);
        long fill = (long)(w.row[r].size() - 1) * (long)(w.col[c].size() - 1);
        if (pr < 0 || a < best_abs || (a == best_abs && fill < best_fill)) {
          pr = r; pc = c; best_abs = a; best_fill = fill;
        }
      }
    }
    if (pr < 0) break;  // no nonzero left
    w.swap_rows(pr, t);
    w.swap_cols(pc, t);

    for (;;) {
      // clear column t below the pivot
      bool changed = false;
      Int pivot = w.entry(t, t);
      std::vector<int> rows_in_col;
      for (const auto& [r, v] : w.col[t])
        if (r != t) rows_in_col.push_back(r);
      for (int r : rows_in_col) {
        Int v = w.entry(r, t);
        if (v == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v.get_mpz_t(), pivot.get_mpz_t());
        if (q != 0) w.row_axpy(-q, t, r);
        if (w.entry(r, t) != 0) {
          // remainder smaller than pivot: swap up and restart
          w.swap_rows(t, r);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      // clear row t right of the pivot
      pivot = w.entry(t, t);
      std::vector<int> cols_in_row;
      for (const auto& [c, _] : w.row[t])
        if (c != t) cols_in_row.push_back(c);
      for (int c : cols_in_row) {
        Int v = w.entry(t, c);
        if (v == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v.get_mpz_t(), pivot.get_mpz_t());
        if (q != 0) w.col_axpy(-q, t, c);
        if (w.entry(t, c) != 0) {
          w.swap_cols(t, c);
          changed = true;
          break;
        }
      }
      if (changed) continue;
      if (w.col[t].size() == 1 && w.row[t].size() == 1) break;
    }
    ++t;
  }

  // enforce the divisibility chain d1 | d2 | ...
  for (int i = 0; i < t; ++i) {
    for (int j = i + 1; j < t; ++j) {
      Int di = w.entry(i, i), dj = w.entry(j, j);
      if (dj % di == 0) continue;
      // col_i += col_j, then re-clear the 2x2 block
      w.col_axpy(1, j, i);
      for (;;) {
        Int p = w.entry(i, i);
        Int v = w.entry(j, i);
        if (v == 0) {
          Int vr = w.entry(i, j);
          if (vr == 0) break;
          Int q;
          mpz_fdiv_q(q.get_mpz_t(), vr.get_mpz_t(), p.get_mpz_t());
          if (q != 0) w.col_axpy(-q, i, j);
          if (w.entry(i, j) != 0) w.swap_cols(i, j);
          continue;
        }
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
        if (q != 0) w.row_axpy(-q, i, j);
        if (w.entry(j, i) != 0) w.swap_rows(i, j);
      }
    }
  }

  SmithResult out{{}, t, need_v ? w.V : SparseMatrix()};
  for (int i = 0; i < t; ++i) {
    Int d = w.entry(i, i);
    if (d < 0) d = -d;
    out.diagonal.push_back(d);
  }
  std::sort(out.diagonal.begin(), out.diagonal.end());
  return out;
}

std::vector<Int> SmithResult::torsion() const {
  std::vector<Int> t;
  for (const Int& d : diagonal)
    if (d > 1) t.push_back(d);
  return t;
}

std::string matrix_market(const SparseMatrix& m) {
  std::string s = "%%MatrixMarket matrix coordinate integer general\n";
  s += std::to_string(m.rows()) + " " + std::to_string(m.cols()) + " " +
       std::to_string(m.nnz()) + "\n";
  for (int c = 0; c < m.cols(); ++c)
    for (const auto& [r, v] : m.column(c))
      s += std::to_string(r + 1) + " " + std::to_string(c + 1) + " " + v.get_str() + "\n";
  return s;
}

HomologyEntry homology(const SparseMatrix& d_in, const SparseMatrix& d_out) {
  assert(d_in.ring() == d_out.ring());
  assert(d_out.cols() == d_in.rows());
  if (!(d_out * d_in).is_zero()) throw NotAComplex();

  long n = d_in.rows();
  if (d_in.ring().is_field()) {
    long rk_out = d_out.rank();
    long rk_in = d_in.rank();
    return HomologyEntry{n - rk_out - rk_in, {}};
  }
  // Integers: restrict d_in to the kernel lattice of d_out.
  SparseMatrix kb = d_out.kernel_basis();  // n x k, saturated
  auto coords = kb.solve(d_in);
  if (!coords) throw std::runtime_error("internal: image not in kernel lattice");
  SmithResult s = smith_normal_form(*coords, false);
  HomologyEntry h;
  h.free_rank = kb.cols() - s.rank;
  h.torsion = s.torsion();
  return h;
}

}  // namespace pkh
