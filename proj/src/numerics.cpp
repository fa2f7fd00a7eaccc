#include "wpsec/numerics.hpp"

#include <cmath>
#include <limits>

#include "wpsec/errors.hpp"

namespace wpsec::numerics {

namespace {

// Unit phase that, applied to v, makes the first nonzero entry real >= 0.
cplx canonical_rotation(const CVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 0.0) return std::conj(v(i)) / mag;
  }
  return {1.0, 0.0};
}

}  // namespace

bool all_finite(const CMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

void canonicalize_phase(CVector& v) { v *= canonical_rotation(v); }

CMatrix hermitian_part(const CMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

SvdResult svd(const CMatrix& a) {
  if (a.rows() < 1 || a.cols() < 1 || !all_finite(a)) {
    throw DecompositionFailure("svd: empty or non-finite input");
  }
  Eigen::JacobiSVD<CMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  if (!all_finite(out.U) || !all_finite(out.V) ||
      !out.singular_values.allFinite()) {
    throw DecompositionFailure("svd: Jacobi sweep produced non-finite factors");
  }

  const Eigen::Index k = out.singular_values.size();
  for (Eigen::Index j = 0; j < k; ++j) {
    CVector vj = out.V.col(j);
    const cplx rot = canonical_rotation(vj);
    out.V.col(j) *= rot;
    out.U.col(j) *= rot;
  }
  for (Eigen::Index j = k; j < out.U.cols(); ++j) {
    CVector uj = out.U.col(j);
    canonicalize_phase(uj);
    out.U.col(j) = uj;
  }
  for (Eigen::Index j = k; j < out.V.cols(); ++j) {
    CVector vj = out.V.col(j);
    canonicalize_phase(vj);
    out.V.col(j) = vj;
  }
  return out;
}

SingularTriplet top_singular_triplet(const CMatrix& a) {
  const SvdResult s = svd(a);
  return {s.singular_values(0), s.U.col(0), s.V.col(0)};
}

CMatrix nullspace_basis(const CVector& h) {
  const Eigen::Index m = h.size();
  if (m < 2) throw ZfInfeasible("nullspace_basis: need at least 2 antennas");
  if (!all_finite(h) || h.norm() == 0.0) {
    throw ZfInfeasible("nullspace_basis: channel is zero or non-finite");
  }
  // The Householder QR of h puts a multiple of h in Q's first column; the
  // remaining columns are an orthonormal complement.
  Eigen::HouseholderQR<CMatrix> qr{CMatrix(h)};
  const CMatrix q = qr.householderQ() * CMatrix::Identity(m, m);
  CMatrix basis = q.rightCols(m - 1);
  for (Eigen::Index j = 0; j < basis.cols(); ++j) {
    CVector col = basis.col(j);
    canonicalize_phase(col);
    basis.col(j) = col;
  }
  return basis;
}

GenEigResult max_gen_eigvec(const CMatrix& r_num, const CMatrix& r_den) {
  if (r_num.rows() != r_num.cols() || r_den.rows() != r_den.cols() ||
      r_num.rows() != r_den.rows() || r_num.rows() < 1) {
    throw DecompositionFailure("max_gen_eigvec: shape mismatch");
  }
  if (!all_finite(r_num) || !all_finite(r_den)) {
    throw DecompositionFailure("max_gen_eigvec: non-finite input");
  }
  const CMatrix num = hermitian_part(r_num);
  const CMatrix den = hermitian_part(r_den);

  Eigen::SelfAdjointEigenSolver<CMatrix> den_eig(den, Eigen::EigenvaluesOnly);
  const double trace = den.trace().real();
  const double min_ev = den_eig.eigenvalues()(0);
  if (!(trace > 0.0) || !(min_ev > 1e-12 * trace)) {
    throw NotPositiveDefinite("max_gen_eigvec: denominator is not positive definite");
  }

  Eigen::LLT<CMatrix> llt(den);
  if (llt.info() != Eigen::Success) {
    throw NotPositiveDefinite("max_gen_eigvec: Cholesky factorization failed");
  }
  // C = L^{-1} num L^{-H}
  const auto& l = llt.matrixL();
  CMatrix tmp = l.solve(num);
  CMatrix whitened = l.solve(tmp.adjoint()).adjoint();
  whitened = hermitian_part(whitened);

  Eigen::SelfAdjointEigenSolver<CMatrix> eig(whitened);
  if (eig.info() != Eigen::Success) {
    throw DecompositionFailure("max_gen_eigvec: eigen solver did not converge");
  }
  const Eigen::Index top = whitened.rows() - 1;
  CVector y = eig.eigenvectors().col(top);
  CVector x = llt.matrixU().solve(y);  // L^{-H} y
  x.normalize();
  canonicalize_phase(x);

  const double qn = x.dot(num * x).real();
  const double qd = x.dot(den * x).real();
  return {x, qn / qd};
}

ScalarMax golden_section_max(const std::function<double(double)>& f, double lo,
                             double hi, double tol) {
  if (!(lo < hi) || !(tol > 0.0) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw InvalidInterval("golden_section_max: need lo < hi and tol > 0");
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  ScalarMax best{0.5 * (a + b), f(0.5 * (a + b))};
  for (const double x : {lo, hi}) {
    const double fx = f(x);
    if (fx > best.f) best = {x, fx};
  }
  return best;
}

}  // namespace wpsec::numerics
