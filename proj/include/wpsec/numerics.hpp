#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

namespace wpsec {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

namespace numerics {

/// Full SVD A = U * diag(singular_values) * V^H.
///
/// Singular values are sorted descending. For every index k below
/// min(rows, cols) the first nonzero entry of V.col(k) is real and
/// nonnegative, and U.col(k) carries the same phase rotation so the
/// factorization is preserved. Columns of U or V beyond min(rows, cols)
/// are normalized independently.
struct SvdResult {
  CMatrix U;
  Eigen::VectorXd singular_values;
  CMatrix V;
};

struct SingularTriplet {
  double sigma_max = 0.0;
  CVector u;  // left vector, A v = sigma_max u
  CVector v;  // right vector
};

/// Maximizer of the Rayleigh quotient (x^H R_num x) / (x^H R_den x).
struct GenEigResult {
  CVector vector;  // unit norm
  double value = 0.0;
};

struct ScalarMax {
  double x = 0.0;
  double f = 0.0;
};

SvdResult svd(const CMatrix& a);

SingularTriplet top_singular_triplet(const CMatrix& a);

/// Orthonormal basis B (M x (M-1)) of {x : h^H x = 0}.
/// Throws ZfInfeasible when M < 2 or h == 0.
CMatrix nullspace_basis(const CVector& h);

/// Largest generalized eigenpair of the Hermitian pencil (r_num, r_den),
/// solved by Cholesky whitening of r_den. Throws NotPositiveDefinite when the
/// smallest eigenvalue of r_den is not above 1e-12 * trace(r_den).
GenEigResult max_gen_eigvec(const CMatrix& r_num, const CMatrix& r_den);

/// Golden-section search for a maximum of f on [lo, hi]. The endpoints are
/// compared against the bracketed point so monotone functions resolve to the
/// boundary. Throws InvalidInterval unless lo < hi and tol > 0.
ScalarMax golden_section_max(const std::function<double(double)>& f, double lo,
                             double hi, double tol);

CMatrix hermitian_part(const CMatrix& a);

/// Rotates v so its first entry with |v_i| > 0 is real and nonnegative.
void canonicalize_phase(CVector& v);

bool all_finite(const CMatrix& a);

}  // namespace numerics
}  // namespace wpsec
