#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "defeig/complex_matrix.hpp"
#include "defeig/errors.hpp"
#include "defeig/inverse_iteration.hpp"
#include "defeig/least_squares.hpp"
#include "defeig/mapping.hpp"
#include "defeig/qr.hpp"
#include "defeig/svd.hpp"

namespace defeig {

struct SolverConfig {
  int max_iter = 50;
  std::uint64_t seed = 42;
  // Debug switch: verify the assembled Jacobian against finite differences
  // on the first iteration of every solve.
  bool fd_check = false;
  // Numerical-nullity tolerance; values <= 0 select the documented default
  // 1e-2 * ||A||_F / n.
  double theta = -1.0;
  int inverse_iteration_steps = 3;
};

struct PseudoEigSolution {
  Complex lambda_hat;
  ComplexMatrix X_hat;          // n x k
  PencilParameters params;
  double residual = 0.0;        // ||g(A, lambda_hat, X_hat)||_2
  double backward_error = 0.0;  // residual * ||X_hat^+||_2
  double condition = 0.0;       // ~ ||g_{lambda X}(A, lambda_hat, X_hat)^+||_2
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_history;
  std::string diagnostic;       // empty unless termination was abnormal
};

/// Staircase initialization: builds the initial chain X0 column by column
/// from minimum-norm least-squares solves against [A - lambda0 I; C^H], and
/// the nilpotent S whose superdiagonal holds the normalizing scalars.
/// Returns (X0, S, ||g(A, lambda0, X0)||_2).
inline std::tuple<ComplexMatrix, ComplexMatrix, double> init_staircase(
    const ComplexMatrix& a, Complex lambda0, const ComplexMatrix& c, int m,
    int k) {
  const int n = a.rows();
  require(a.cols() == n, Errc::dimension_mismatch, "A must be square");
  require(c.rows() == n && c.cols() == m, Errc::dimension_mismatch,
          "C must be n x m");
  validate_support({m, k}, n);

  ComplexMatrix stacked = vstack(shifted(a, lambda0), c.adjoint());

  // First column: solve [A - lambda0 I; C^H] x = [0; T_{1:m,1}].
  ComplexMatrix rhs(n + m, 1);
  rhs(n, 0) = 1.0;
  ComplexMatrix x = least_squares(stacked, rhs);

  ComplexMatrix x0(n, k);
  ComplexMatrix s(k, k);
  x0.set_col(0, x);

  for (int j = 0; j + 1 < k; ++j) {
    ComplexMatrix chain_rhs(n + m, 1);
    chain_rhs.set_block(0, 0, x0.col(j));
    ComplexMatrix w = least_squares(stacked, chain_rhs);
    double wn = w.frobenius_norm();
    require(wn >= kEps * n, Errc::staircase_breakdown,
            "staircase chain collapsed at column " + std::to_string(j + 2) +
                "; the Segre anchor is likely overestimated or lambda0 is far "
                "from an eigenvalue");
    double alpha = 1.0 / wn;
    w *= Complex(alpha);
    x0.set_col(j + 1, w);
    s(j, j + 1) = alpha;
  }

  PencilParameters p{c, s, make_T(m, k)};
  double consistency = residual_norm(a, p, lambda0, x0);
  return {std::move(x0), std::move(s), consistency};
}

namespace detail {

struct GnStep {
  Complex lambda_next;
  ComplexMatrix x_next;
  double residual_at_input;
  ComplexMatrix r_factor;  // R of the Jacobian QR, reused for conditioning
};

inline GnStep gn_step(const ComplexMatrix& a, const PencilParameters& p,
                      Complex lambda, const ComplexMatrix& x,
                      const MappingValue& g) {
  const int n = a.rows();
  const int k = p.S.rows();

  ComplexMatrix jac = assemble_jacobian(a, p, lambda, x);

  // Column equilibration: rescaling the unknowns does not change the
  // least-squares solution, but it keeps the triangular solve accurate when
  // the matrix entries span many orders of magnitude.
  const int nc = jac.cols();
  std::vector<double> colnorm(nc, 1.0);
  for (int j = 0; j < nc; ++j) {
    double cn = column_norm(jac, j);
    if (cn > 0.0) {
      colnorm[j] = cn;
      for (int i = 0; i < jac.rows(); ++i) jac(i, j) /= cn;
    }
  }

  QrFactors qr = thin_qr(jac);
  double jtol = kEps * jac.frobenius_norm();
  for (int i = 0; i < qr.R.rows(); ++i) {
    require(std::abs(qr.R(i, i)) > jtol, Errc::rank_deficient_jacobian,
            "Jacobian is numerically rank-deficient; the geometric "
            "multiplicity is likely underestimated");
  }

  ComplexMatrix u = solve_upper(qr.R, qr.Q.adjoint() * pack_image(g));
  for (int j = 0; j < nc; ++j) {
    u(j, 0) /= colnorm[j];
    // Undo the scaling inside R so it factors the original Jacobian; the
    // condition estimate needs sigma_min of the unscaled matrix.
    for (int i = 0; i <= j; ++i) qr.R(i, j) *= colnorm[j];
  }
  auto [sigma, y] = unpack(u, n, k);
  return {lambda - sigma, x - y, residual_norm(g), std::move(qr.R)};
}

inline void fd_check_jacobian(const ComplexMatrix& a,
                              const PencilParameters& p, Complex lambda,
                              const ComplexMatrix& x,
                              const ComplexMatrix& jac) {
  const int n = a.rows();
  const int k = p.S.rows();
  const double h = 1e-7;
  ComplexMatrix g0 = pack_image(eval_g(a, p, lambda, x));
  NormalSampler rng(0xfdc);
  for (int trial = 0; trial < 3; ++trial) {
    ComplexMatrix dy(n, k);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < k; ++j) dy(i, j) = rng.next_complex();
    Complex ds = rng.next_complex();
    ComplexMatrix dir = pack(ds, dy);
    double dn = dir.frobenius_norm();
    dir *= Complex(1.0 / dn);
    ds /= dn;
    dy *= Complex(1.0 / dn);

    ComplexMatrix g1 =
        pack_image(eval_g(a, p, lambda + h * ds, x + Complex(h) * dy));
    ComplexMatrix fd = (g1 - g0) * Complex(1.0 / h);
    double err = (fd - jac * dir).frobenius_norm();
    // g is linear in X and affine in lambda*X; only the bilinear cross-term
    // survives, which is O(h).
    require(err <= 1e3 * h * std::max(1.0, jac.frobenius_norm()),
            Errc::invalid_argument,
            "assembled Jacobian disagrees with finite differences");
  }
}

}  // namespace detail

/// One Gauss-Newton step: solve the Jacobian least-squares system at
/// (lambda, X) and subtract the correction. Returns the new iterate together
/// with the residual norm at the input point.
inline std::tuple<Complex, ComplexMatrix, double> gauss_newton_step(
    const ComplexMatrix& a, const PencilParameters& p, Complex lambda,
    const ComplexMatrix& x) {
  MappingValue g = eval_g(a, p, lambda, x);
  detail::GnStep st = detail::gn_step(a, p, lambda, x, g);
  return {st.lambda_next, std::move(st.x_next), st.residual_at_input};
}

/// Core Gauss-Newton loop from an explicit starting point, taking plain
/// full-length steps. Termination keeps the previous iterate on a residual
/// increase once the steps have become small (the terminal phase); while the
/// steps are still large, a temporary rise is walked through, since the
/// staircase start can sit in a shallow residual pocket well away from the
/// least-squares solution. Two guards: stop as soon as the residual falls
/// below the round-off floor eps*(||A||_F+|lambda|)*sqrt(nk), and cap the
/// step count by max_iter. The condition estimate reuses the R factor of
/// the last Jacobian QR.
inline PseudoEigSolution run_gauss_newton(const ComplexMatrix& a,
                                          const PencilParameters& p,
                                          Complex lambda0,
                                          const ComplexMatrix& x0,
                                          const SolverConfig& cfg) {
  const int n = a.rows();
  require(a.cols() == n, Errc::dimension_mismatch, "A must be square");
  validate_pencil(p, n);
  require(x0.rows() == n && x0.cols() == p.S.rows(), Errc::dimension_mismatch,
          "X0 must be n x k");
  require(cfg.max_iter >= 1, Errc::invalid_argument, "max_iter must be >= 1");

  const int k = p.S.rows();
  const double anorm = a.frobenius_norm();
  const double scale = std::sqrt(static_cast<double>(n) * k);
  auto roundoff_floor = [&](Complex lam) {
    return kEps * (anorm + std::abs(lam)) * scale;
  };
  // Steps below this relative size mean the iteration is polishing, not
  // traveling; only then is a residual increase a stopping signal.
  constexpr double kTerminalStep = 1e-6;

  Complex lambda = lambda0;
  ComplexMatrix x = x0;
  MappingValue g = eval_g(a, p, lambda, x);
  double resid = residual_norm(g);

  PseudoEigSolution sol;
  sol.residual_history.push_back(resid);
  const double resid_initial = resid;

  ComplexMatrix last_r;
  bool stopped = false;
  for (int it = 0; it < cfg.max_iter && !stopped; ++it) {
    if (cfg.fd_check && it == 0) {
      detail::fd_check_jacobian(a, p, lambda, x,
                                assemble_jacobian(a, p, lambda, x));
    }

    detail::GnStep st;
    try {
      st = detail::gn_step(a, p, lambda, x, g);
    } catch (const Error& e) {
      bool at_roundoff = resid < 100.0 * roundoff_floor(lambda);
      if (e.kind() == Errc::rank_deficient_jacobian &&
          (at_roundoff || sol.iterations > 0)) {
        // The iterate has walked onto a degenerate manifold, which is the
        // signature of an underestimated support; keep what we have and let
        // the condition estimate report the blow-up. Rethrow only when not
        // even the first step could be formed.
        sol.converged = at_roundoff;
        if (!at_roundoff) sol.diagnostic = e.what();
        stopped = true;
        break;
      }
      throw;
    }
    last_r = st.r_factor;

    MappingValue g_next = eval_g(a, p, st.lambda_next, st.x_next);
    double resid_next = residual_norm(g_next);
    double step_size = std::hypot(std::abs(st.lambda_next - lambda),
                                  (st.x_next - x).frobenius_norm());
    double iterate_size = std::hypot(std::abs(lambda), x.frobenius_norm());
    bool terminal = step_size <= kTerminalStep * (1.0 + iterate_size);
    bool negligible_gain = resid_next >= resid * (1.0 - 1e-3);

    if (resid < resid_next && terminal) {
      // Terminal-phase increase: keep the current iterate.
      if (resid >= 100.0 * roundoff_floor(lambda) && resid >= resid_initial) {
        sol.diagnostic =
            "the Gauss-Newton iteration never improved on its starting "
            "residual; the starting point may be outside the convergence "
            "region or the multiplicity support may be wrong";
        sol.converged = false;
      } else {
        sol.converged = true;
      }
      stopped = true;
      break;
    }

    double resid_prev = resid;
    lambda = st.lambda_next;
    x = std::move(st.x_next);
    g = std::move(g_next);
    resid = resid_next;
    ++sol.iterations;
    sol.residual_history.push_back(resid);

    // Two ways to be done: the residual sits below rounding level and a
    // step barely shrinks it, or the iteration has settled on a positive
    // local minimum (data with errors) where terminal-sized steps no longer
    // buy anything.
    if (resid == 0.0 ||
        (resid < roundoff_floor(lambda) && resid > 0.9 * resid_prev) ||
        (terminal && negligible_gain)) {
      sol.converged = true;
      stopped = true;
    }
  }
  if (!stopped) {
    sol.converged = false;
    sol.diagnostic = "iteration budget exhausted before the stopping rule "
                     "triggered";
  }

  sol.params = p;

  // Gauge fix: rotate the global phase so the (1,1) pivot of X is real
  // non-negative; C absorbs the same phase, which leaves g unchanged.
  Complex pivot = x(0, 0);
  if (std::abs(pivot) > kEps) {
    Complex phase = std::conj(pivot) / std::abs(pivot);
    x *= phase;
    sol.params.C *= phase;
  }

  sol.lambda_hat = lambda;
  sol.residual = residual_norm(a, sol.params, lambda, x);
  sol.backward_error = sol.residual * pinv_norm(x);
  sol.X_hat = std::move(x);

  if (last_r.empty()) {
    // No step was ever factored (immediate round-off accept); factor once
    // so a condition estimate is still reported.
    last_r = thin_qr(assemble_jacobian(a, sol.params, lambda, sol.X_hat)).R;
  }
  try {
    double smin =
        smallest_sv_inverse_iteration(last_r, cfg.inverse_iteration_steps);
    sol.condition = (smin > 0.0) ? 1.0 / smin
                                 : std::numeric_limits<double>::infinity();
  } catch (const Error& e) {
    if (e.kind() != Errc::numerically_singular) throw;
    sol.condition = std::numeric_limits<double>::infinity();
  }
  return sol;
}

/// Draws the random parameter C for a solve at lambda0: a seeded random
/// matrix whose columns are then rotated into the numerical kernel of
/// A - lambda0 I (the m least-stretched right singular directions) and
/// orthonormalized. Any generic C admits the staircase, but aligning it
/// with the rank-revealed kernel makes C^H N unitary, which keeps the
/// chain scaling natural (||x1|| = 1) and the Jacobian condition number
/// close to the intrinsic sensitivity instead of inflating it by the
/// chance conditioning of a raw Gaussian draw.
inline ComplexMatrix draw_oriented_C(const ComplexMatrix& a, Complex lambda0,
                                     int m, std::uint64_t seed) {
  const int n = a.rows();
  ComplexMatrix c0 = random_C(n, m, seed);
  SvdResult f = svd(shifted(a, lambda0), false, true);
  ComplexMatrix kernel(n, m);
  for (int j = 0; j < m; ++j)
    kernel.set_col(j, f.V.col(n - 1 - j));
  ComplexMatrix mixed = kernel * (kernel.adjoint() * c0);
  QrFactors qr = thin_qr(mixed);
  return std::move(qr.Q);
}

/// End-to-end solve for one eigenvalue estimate: draw the random parameter
/// C (oriented along the numerical kernel at lambda0), build the staircase
/// start, then run Gauss-Newton.
inline PseudoEigSolution pseudoeig(const ComplexMatrix& a, Complex lambda0,
                                   int m, int k,
                                   const SolverConfig& cfg = {}) {
  const int n = a.rows();
  require(a.cols() == n, Errc::dimension_mismatch, "A must be square");
  validate_support({m, k}, n);

  ComplexMatrix c = draw_oriented_C(a, lambda0, m, cfg.seed);
  auto [x0, s, consistency] = init_staircase(a, lambda0, c, m, k);
  (void)consistency;
  PencilParameters p{std::move(c), std::move(s), make_T(m, k)};
  return run_gauss_newton(a, p, lambda0, x0, cfg);
}

/// Backward-error certificate: the perturbation E X^+ makes lambda_hat an
/// exact eigenvalue of the perturbed matrix with a Jordan block of size at
/// least k.
struct BackwardCertificate {
  ComplexMatrix E;                 // (A - lambda I) X - X S, n x k
  ComplexMatrix perturbation;      // E X^+, n x n
  ComplexMatrix perturbed_matrix;  // A - E X^+
  double perturbation_norm = 0.0;  // ||E X^+||_F
  double chain_residual = 0.0;     // ||(M - lambda I) X - X S||_F
  bool chain_verified = false;     // chain_residual <= 1e-12 ||A||_F
  std::vector<int> kernel_staircase;  // dim ker (M - lambda I)^j, j = 1..k
  bool jordan_block_verified = false;
};

inline BackwardCertificate certify(const ComplexMatrix& a,
                                   const PseudoEigSolution& sol) {
  const int n = a.rows();
  const int k = sol.X_hat.cols();

  SvdResult xf = svd(sol.X_hat);
  require(xf.sigma.back() >= kEps * n, Errc::rank_deficient_x,
          "X is numerically rank-deficient; no certificate");

  BackwardCertificate cert;
  cert.E = shifted(a, sol.lambda_hat) * sol.X_hat - sol.X_hat * sol.params.S;

  // X^+ = V Sigma^-1 U^H, full column rank established above.
  ComplexMatrix xpinv =
      pseudo_inverse_solve(xf, ComplexMatrix::identity(n), 0.0);
  cert.perturbation = cert.E * xpinv;
  cert.perturbed_matrix = a - cert.perturbation;
  cert.perturbation_norm = cert.perturbation.frobenius_norm();

  ComplexMatrix chain = shifted(cert.perturbed_matrix, sol.lambda_hat) *
                            sol.X_hat -
                        sol.X_hat * sol.params.S;
  cert.chain_residual = chain.frobenius_norm();
  cert.chain_verified = cert.chain_residual <= 1e-12 * a.frobenius_norm();

  // Kernel staircase dim ker (M - lambda I)^j for j = 1..k: strict growth
  // through j = k confirms a Jordan block of size >= k. Computed by the
  // deflation recursion ker B^{j+1} = { v : B v in ker B^j } instead of
  // explicit powers, whose singular values collapse across scales.
  // Meaningful at small dimension only.
  if (n <= 30) {
    ComplexMatrix b = shifted(cert.perturbed_matrix, sol.lambda_hat);
    const double bscale = singular_values(b).front();
    const double tol =
        std::max(100.0 * cert.chain_residual, 1e-11 * bscale);
    ComplexMatrix kernel;  // orthonormal basis of the current level
    bool strict = true;
    int prev = 0;
    for (int j = 1; j <= k; ++j) {
      ComplexMatrix level = b;
      if (kernel.cols() > 0) level = b - kernel * (kernel.adjoint() * b);
      SvdResult f = svd(level, false, true);
      int nullity = 0;
      for (double v : f.sigma)
        if (v < tol) ++nullity;
      cert.kernel_staircase.push_back(nullity);
      if (nullity <= prev) {
        strict = false;
        break;
      }
      prev = nullity;
      kernel = ComplexMatrix(n, nullity);
      for (int c = 0; c < nullity; ++c)
        kernel.set_col(c, f.V.col(n - 1 - c));
    }
    cert.jordan_block_verified = strict && cert.chain_verified;
  }
  return cert;
}

}  // namespace defeig
