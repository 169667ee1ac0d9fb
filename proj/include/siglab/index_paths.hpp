#pragma once

#include "siglab/paths.hpp"
#include "siglab/poincare.hpp"
#include "siglab/subdivision.hpp"

namespace siglab {

/// Largest odd degree inverse_poly will try before giving up.
inline constexpr int kMaxInverseDegree = 61;

/// Odd polynomial p(x) = x q(x^2) approximating 1/x on [-C, -eps] u
/// [eps, C], with q a Chebyshev interpolant of 1/u on [eps^2, C^2].  The
/// certificate is the sampled sup of |p(x) - 1/x| over a uniform grid on
/// [eps, C]; by oddness the same bound holds on the negative branch.
struct InversePolynomial {
  double eps = 1.0, cap = 1.0;
  int degree = 1;             // odd degree of p
  std::vector<double> cheb;   // Chebyshev coefficients of q
  double grid_sup_error = 0.0;
  int grid = 0;

  /// Clenshaw evaluation (the only evaluation path; the monomial form
  /// below is for reports and is numerically inferior at high degree).
  double eval(double x) const;
  /// Monomial coefficients of p, constant term first; even entries 0.
  std::vector<double> coefficients() const;
};

/// Minimal-degree approximant meeting the sampled bound
/// sup |p(x) - 1/x| < 1/C; tries odd degrees 1, 3, ... up to
/// kMaxInverseDegree and throws DegreeLimit beyond that.
InversePolynomial inverse_poly(double eps, double cap, int grid = 10000);

/// One level of the subdivision tower.  Propagations are exact squared
/// values; singular values and norms are float estimates.
struct SurveyRow {
  int level = 0;
  int cells = 0;
  double min_sv_plus = 0.0;   // smallest singular value of B_j + S_j
  double min_sv_minus = 0.0;  // ... of B_j - S_j
  double norm_plus = 0.0;
  double norm_minus = 0.0;
  Q prop2_b = 0;  // squared propagation of the differential b_j
  Q prop2_s = 0;  // ... of S_j
  Q prop2_a = 0;  // ... of the subdivision chain map A_j (j -> j+1)
  bool has_a = false;
};

struct Survey {
  std::vector<SurveyRow> rows;
  double eps_hat = 0.0;  // min over rows and signs of the singular values
  double c_hat = 0.0;    // max over rows and signs of the norms
};

/// Levels 0..J of the subdivision tower of a closed oriented complex:
/// per level the smallest singular value and norm of B_j +- S_j and the
/// exact propagations of b_j, S_j, A_j.  A complex without cells yields
/// an empty table.  Throws ResourceLimit when a level would exceed the
/// cell cap.
Survey uniform_invertibility_survey(const TypedComplex& c, int levels,
                                    long cell_cap = kDefaultCellCap);

/// The local index path: the concatenation over j < J of the five-leg
/// homotopy taking diag(U_j, 1) to diag(1, U_{j+1}) on H_j + H_{j+1},
/// where U_j = (B_j + S_j) p(B_j - S_j) and p = inverse_poly(eps_hat,
/// C_hat) from the survey.  The path lives over [0, J] on the direct sum
/// of all level modules (identity outside the active levels), every
/// junction is a shared sample, and each segment carries an exact
/// squared-propagation bound checked against deg(p) * c_j, with c_j the
/// largest propagation among B_j, S_j, A_j.  The returned path carries
/// the certificate of its construction run.
///
/// Throws CertificateFailure when a linear leg's gate ||v - 1|| < 1
/// fails, when a sampled operator's certified smallest singular value
/// falls below 1e-10 (the offending time is reported), or when a
/// segment's exact propagation bound exceeds deg(p) * c_j.
OperatorPath local_index_path(const TypedComplex& c, int levels,
                              int samples_per_segment = 32,
                              long cell_cap = kDefaultCellCap);

}  // namespace siglab
