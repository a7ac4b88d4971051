#pragma once
#include <stdexcept>
#include <vector>

#include "geores/upoly.hpp"

namespace geores {

template <class K>
struct Matrix {
  K wit;
  int rows = 0, cols = 0;
  std::vector<K> a; // row-major

  explicit Matrix(K witness) : wit(std::move(witness)) {}
  Matrix(K witness, int r, int c) : wit(std::move(witness)), rows(r), cols(c), a((size_t)r * c, ring_zero(wit)) {}

  K& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const K& at(int i, int j) const { return a[(size_t)i * cols + j]; }

  static Matrix identity(const K& w, int n) {
    Matrix m(w, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ring_one(w);
    return m;
  }
};

template <class K>
Matrix<K> operator*(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.cols != y.rows) throw std::domain_error("matrix dimension mismatch");
  Matrix<K> r(x.wit, x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const K& v = x.at(i, k);
      if (ring_is_zero(v)) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) = r.at(i, j) + v * y.at(k, j);
    }
  return r;
}
template <class K>
Matrix<K> operator+(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::domain_error("matrix dimension mismatch");
  Matrix<K> r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] + y.a[i];
  return r;
}
template <class K>
Matrix<K> operator-(const Matrix<K>& x, const Matrix<K>& y) {
  if (x.rows != y.rows || x.cols != y.cols) throw std::domain_error("matrix dimension mismatch");
  Matrix<K> r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = r.a[i] - y.a[i];
  return r;
}
template <class K>
Matrix<K> scale(const Matrix<K>& x, const K& s) {
  Matrix<K> r = x;
  for (auto& v : r.a) v = v * s;
  return r;
}

// division-free characteristic polynomial (monic, ascending coefficients)
template <class K>
UPoly<K> berkowitz_charpoly(const Matrix<K>& m) {
  if (m.rows != m.cols) throw std::domain_error("characteristic polynomial of non-square matrix");
  int n = m.rows;
  K zero = ring_zero(m.wit), one = ring_one(m.wit);
  if (n == 0) return UPoly<K>::constant(one);
  // V holds descending coefficients of charpoly of the leading r x r block
  std::vector<K> V{one, zero - m.at(0, 0)};
  for (int r = 2; r <= n; ++r) {
    // Toeplitz column: t0 = 1, t1 = -a_rr, t_k = -(R * A^{k-2} * S), A the (r-1) block
    std::vector<K> t(r + 1, zero);
    t[0] = one;
    t[1] = zero - m.at(r - 1, r - 1);
    std::vector<K> w(r - 1, zero);
    for (int i = 0; i < r - 1; ++i) w[i] = m.at(i, r - 1); // S
    for (int k = 2; k <= r; ++k) {
      K dot = zero;
      for (int i = 0; i < r - 1; ++i) dot = dot + m.at(r - 1, i) * w[i]; // R * w
      t[k] = zero - dot;
      if (k == r) break;
      std::vector<K> w2(r - 1, zero);
      for (int i = 0; i < r - 1; ++i) {
        if (ring_is_zero(w[i])) continue;
        for (int j = 0; j < r - 1; ++j) w2[j] = w2[j] + m.at(j, i) * w[i];
      }
      w.swap(w2);
    }
    std::vector<K> V2(r + 1, zero);
    for (int i = 0; i <= r; ++i)
      for (int j = 0; j < (int)V.size() && j <= i; ++j)
        V2[i] = V2[i] + t[i - j] * V[j];
    V.swap(V2);
  }
  std::vector<K> asc(V.rbegin(), V.rend());
  return UPoly<K>(m.wit, std::move(asc));
}

template <class K>
K matrix_det(const Matrix<K>& m) {
  UPoly<K> chi = berkowitz_charpoly(m);
  K d = chi.get(0);
  if (m.rows & 1) d = ring_zero(m.wit) - d;
  return d;
}

// Gaussian elimination over a field; returns solution of M x = b
template <class K>
std::vector<K> solve_linear(Matrix<K> m, std::vector<K> b) {
  if (m.rows != m.cols || (int)b.size() != m.rows) throw std::domain_error("solve_linear shape mismatch");
  int n = m.rows;
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!ring_is_zero(m.at(r, col))) { piv = r; break; }
    if (piv < 0) throw std::domain_error("singular linear system");
    if (piv != col) {
      for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
      std::swap(b[piv], b[col]);
    }
    K pinv = ring_inv(m.at(col, col));
    for (int j = col; j < n; ++j) m.at(col, j) = m.at(col, j) * pinv;
    b[col] = b[col] * pinv;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      K f = m.at(r, col);
      if (ring_is_zero(f)) continue;
      for (int j = col; j < n; ++j) m.at(r, j) = m.at(r, j) - f * m.at(col, j);
      b[r] = b[r] - f * b[col];
    }
  }
  return b;
}

template <class K>
Matrix<K> matrix_inverse(const Matrix<K>& m) {
  if (m.rows != m.cols) throw std::domain_error("inverse of non-square matrix");
  int n = m.rows;
  Matrix<K> aug = m, inv = Matrix<K>::identity(m.wit, n);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (!ring_is_zero(aug.at(r, col))) { piv = r; break; }
    if (piv < 0) throw std::domain_error("singular matrix");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(aug.at(piv, j), aug.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    K pinv = ring_inv(aug.at(col, col));
    for (int j = 0; j < n; ++j) {
      aug.at(col, j) = aug.at(col, j) * pinv;
      inv.at(col, j) = inv.at(col, j) * pinv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      K f = aug.at(r, col);
      if (ring_is_zero(f)) continue;
      for (int j = 0; j < n; ++j) {
        aug.at(r, j) = aug.at(r, j) - f * aug.at(col, j);
        inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

// evaluate a polynomial at a square matrix (Horner)
template <class K>
Matrix<K> poly_at_matrix(const UPoly<K>& p, const Matrix<K>& m) {
  int n = m.rows;
  Matrix<K> r(m.wit, n, n);
  for (size_t i = p.c.size(); i-- > 0;) {
    r = r * m;
    for (int d = 0; d < n; ++d) r.at(d, d) = r.at(d, d) + p.c[i];
  }
  return r;
}

// companion matrix of a monic polynomial: multiplication by T on 1, T, ..., T^{d-1}
template <class K>
Matrix<K> companion_matrix(const UPoly<K>& q) {
  if (!q.is_monic() || q.degree() < 1) throw std::domain_error("companion matrix needs a monic polynomial of degree >= 1");
  int d = q.degree();
  Matrix<K> m(q.wit, d, d);
  for (int i = 0; i + 1 < d; ++i) m.at(i + 1, i) = ring_one(q.wit);
  for (int i = 0; i < d; ++i) m.at(i, d - 1) = ring_zero(q.wit) - q.c[i];
  return m;
}

// resultant over an arbitrary commutative ring: Sylvester determinant via Berkowitz
template <class K>
K resultant_ring(const UPoly<K>& a, const UPoly<K>& b) {
  if (a.is_zero() || b.is_zero()) return ring_zero(a.wit);
  int da = a.degree(), db = b.degree();
  if (da == 0) {
    K r = ring_one(a.wit);
    for (int i = 0; i < db; ++i) r = r * a.c[0];
    return r;
  }
  if (db == 0) {
    K r = ring_one(a.wit);
    for (int i = 0; i < da; ++i) r = r * b.c[0];
    return r;
  }
  int n = da + db;
  Matrix<K> s(a.wit, n, n);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j <= da; ++j) s.at(i, i + j) = a.c[da - j];
  for (int i = 0; i < da; ++i)
    for (int j = 0; j <= db; ++j) s.at(db + i, i + j) = b.c[db - j];
  return matrix_det(s);
}

// discriminant usable over coefficient rings (polynomial coefficients)
template <class K>
K poly_discriminant_ring(const UPoly<K>& q) {
  if (q.is_zero() || !q.is_monic()) throw std::domain_error("discriminant requires a monic polynomial");
  if (q.degree() == 0) return ring_one(q.wit);
  K r = resultant_ring(q, derivative(q));
  int d = q.degree();
  if (((d * (d - 1)) / 2) & 1) r = ring_zero(q.wit) - r;
  return r;
}

} // namespace geores
