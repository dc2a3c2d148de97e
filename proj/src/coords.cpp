#include "projkit/coords.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "projkit/error.hpp"

namespace projkit {
namespace {

constexpr double kStratumTol = 1e-9;

// log(1 + e^x) without overflow.
double softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

std::size_t prev(std::size_t i) { return (i + 2) % 3; }
std::size_t next(std::size_t i) { return (i + 1) % 3; }

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::NonPositiveParameter,
                std::string(name) + " must be a positive finite number");
  }
}

void inconsistent(const std::string& what) {
  throw Error(ErrorCode::InconsistentStratum, what);
}

// Log-linear part of the conversion. Unknowns x = (log s, log λ₁..₃, log μ₁..₃);
// observables are σ₁(B₁..₃), σ₂(B₁..₃) and τ₁₁₁(T₊) + τ₁₁₁(T₋) = Σ log μᵢ.
using Matrix7 = Eigen::Matrix<double, 7, 7>;
using Vector7 = Eigen::Matrix<double, 7, 1>;

enum Unknown { kLogS = 0, kLogLambda = 1, kLogMu = 4 };
enum Observable { kSigma1 = 0, kSigma2 = 3, kTauSum = 6 };

Matrix7 observation_matrix() {
  Matrix7 k = Matrix7::Zero();
  for (std::size_t i = 0; i < 3; ++i) {
    const auto r1 = static_cast<Eigen::Index>(kSigma1 + i);
    const auto r2 = static_cast<Eigen::Index>(kSigma2 + i);
    for (auto r : {r1, r2}) {
      k(r, kLogLambda + prev(i)) += 0.5;
      k(r, kLogLambda + next(i)) += 0.5;
      k(r, kLogLambda + i) -= 0.5;
    }
    k(r1, kLogS) = 1.0;
    k(r1, kLogMu + prev(i)) = 1.0;
    k(r2, kLogS) = -1.0;
    k(r2, kLogMu + next(i)) = 1.0;
    k(kTauSum, kLogMu + i) = 1.0;
  }
  return k;
}

// A stratum as a linear subspace x = P·z of the unknowns together with the
// observables that serve as its free coordinates.
struct Stratum {
  Eigen::MatrixXd param;  // 7 × dim
  std::vector<int> rows;  // dim observables
  std::array<BoundaryKind, 3> kinds;
};

Vector7 solve_stratum(const Stratum& st, const Eigen::VectorXd& observed) {
  const Matrix7 k = observation_matrix();
  Eigen::MatrixXd reduced(st.rows.size(), st.param.cols());
  for (std::size_t r = 0; r < st.rows.size(); ++r) {
    reduced.row(static_cast<Eigen::Index>(r)) = k.row(st.rows[r]) * st.param;
  }
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(reduced);
  if (!lu.isInvertible()) inconsistent("stratum coordinates do not determine the structure");
  return st.param * lu.solve(observed);
}

// Basis vector helpers for stratum parametrizations.
Vector7 unit(int i) { return Vector7::Unit(i); }

Eigen::MatrixXd columns(std::initializer_list<Vector7> cols) {
  Eigen::MatrixXd p(7, static_cast<Eigen::Index>(cols.size()));
  Eigen::Index c = 0;
  for (const Vector7& v : cols) p.col(c++) = v;
  return p;
}

// Boundary record for recovered log-eigenvalues, checked against its kind.
BoundaryData boundary_from_logs(double log_lambda, double log_mu, BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::parabolic:
      return BoundaryData::parabolic();
    case BoundaryKind::quasi_hyperbolic: {
      const double mu = std::exp(log_mu);
      if (!(mu > 1.0)) inconsistent("recovered quasi-hyperbolic eigenvalue mu <= 1");
      return BoundaryData::quasi_hyperbolic(mu);
    }
    case BoundaryKind::hyperbolic: {
      const double lambda = std::exp(log_lambda);
      const double mu = std::exp(log_mu);
      const double nu = 1.0 / (lambda * mu);
      if (!(lambda < mu && mu < nu)) {
        inconsistent("recovered eigenvalues are not ordered lambda < mu < nu");
      }
      return BoundaryData{lambda, mu + nu, BoundaryKind::hyperbolic};
    }
  }
  return BoundaryData::parabolic();
}

PantsRecovery finish_pants(const Stratum& st, const Vector7& x, double tplus) {
  PantsGoldman g;
  for (std::size_t i = 0; i < 3; ++i) {
    g.boundaries[i] = boundary_from_logs(x(kLogLambda + static_cast<int>(i)),
                                         x(kLogMu + static_cast<int>(i)), st.kinds[i]);
  }
  g.s = std::exp(x(kLogS));
  const Vector7 obs = observation_matrix() * x;
  const double log_t = softplus(-obs(kSigma2 + 1)) + softplus(-obs(kSigma2 + 2)) -
                       softplus(obs(kSigma1 + 2)) - tplus;
  g.t = std::exp(log_t);
  require_positive(g.s, "recovered s");
  require_positive(g.t, "recovered t");
  return PantsRecovery{g, pants_goldman_to_bd(g)};
}

TorusRecovery finish_torus(const Stratum& st, const Vector7& x, double tplus,
                           double sigma_c1, double sigma_c2) {
  const PantsRecovery p = finish_pants(st, x, tplus);
  TorusGoldman g;
  g.b = p.goldman.boundaries[0];
  g.c = p.goldman.boundaries[1];
  g.s = p.goldman.s;
  g.t = p.goldman.t;
  g.u = 0.5 * (sigma_c1 + sigma_c2);
  g.v = (sigma_c2 - sigma_c1) / 6.0;
  return TorusRecovery{g, torus_goldman_to_bd(g)};
}

constexpr auto kHyp = BoundaryKind::hyperbolic;
constexpr auto kQuasi = BoundaryKind::quasi_hyperbolic;
constexpr auto kPara = BoundaryKind::parabolic;

// Torus: λ₂ = λ₃ and μ₂ = μ₃ (both boundaries of the cut pants are C).
Vector7 torus_log_lambda() { return unit(kLogLambda + 1) + unit(kLogLambda + 2); }
Vector7 torus_log_mu() { return unit(kLogMu + 1) + unit(kLogMu + 2); }
// Quasi-hyperbolic A₁: log μ₁ = −½ log λ₁.
Vector7 quasi_log_lambda1() { return unit(kLogLambda) - 0.5 * unit(kLogMu); }

}  // namespace

// ---------------------------------------------------------------------------
// Boundary data
// ---------------------------------------------------------------------------

BoundaryData BoundaryData::hyperbolic(double lambda, double tau) {
  return BoundaryData{lambda, tau, BoundaryKind::hyperbolic};
}

BoundaryData BoundaryData::from_eigenvalues(double lambda, double mu) {
  return BoundaryData{lambda, mu + 1.0 / (lambda * mu), BoundaryKind::hyperbolic};
}

BoundaryData BoundaryData::quasi_hyperbolic(double mu) {
  return BoundaryData{1.0 / (mu * mu), 2.0 * mu, BoundaryKind::quasi_hyperbolic};
}

BoundaryData BoundaryData::parabolic() { return BoundaryData{1.0, 2.0, BoundaryKind::parabolic}; }

void validate(const BoundaryData& b) {
  if (!std::isfinite(b.lambda) || !std::isfinite(b.tau) || !(b.lambda > 0.0)) {
    inconsistent("boundary eigenvalue data must be finite with lambda > 0");
  }
  switch (b.kind) {
    case BoundaryKind::parabolic:
      if (std::abs(b.lambda - 1.0) > 1e-12 || std::abs(b.tau - 2.0) > 1e-12) {
        inconsistent("parabolic boundary needs lambda = 1, tau = 2");
      }
      return;
    case BoundaryKind::quasi_hyperbolic:
      if (!(b.lambda < 1.0) || std::abs(b.tau * b.tau * b.lambda / 4.0 - 1.0) > kStratumTol) {
        inconsistent("quasi-hyperbolic boundary needs lambda < 1 and tau^2 = 4/lambda");
      }
      return;
    case BoundaryKind::hyperbolic: {
      const double disc = b.tau * b.tau - 4.0 / b.lambda;
      if (disc < 0.0) {
        throw Error(ErrorCode::ComplexEigenvalues,
                    "tau^2 < 4/lambda: the other two eigenvalues are complex");
      }
      if (!(b.lambda < 1.0) || !(disc > 0.0)) {
        inconsistent("hyperbolic boundary needs lambda in (0,1) and tau^2 > 4/lambda");
      }
      const double mu = 0.5 * (b.tau - std::sqrt(disc));
      if (!(b.lambda < mu)) inconsistent("lambda is not the smallest eigenvalue");
      return;
    }
  }
}

double middle_eigenvalue(const BoundaryData& b) {
  if (!std::isfinite(b.lambda) || !std::isfinite(b.tau) || !(b.lambda > 0.0)) {
    inconsistent("boundary eigenvalue data must be finite with lambda > 0");
  }
  const double disc = b.tau * b.tau - 4.0 / b.lambda;
  if (disc < 0.0 && b.kind == BoundaryKind::hyperbolic) {
    throw Error(ErrorCode::ComplexEigenvalues,
                "tau^2 < 4/lambda: the other two eigenvalues are complex");
  }
  switch (b.kind) {
    case BoundaryKind::parabolic:
      validate(b);
      return 1.0;
    case BoundaryKind::quasi_hyperbolic:
      validate(b);
      return 0.5 * b.tau;
    case BoundaryKind::hyperbolic: break;
  }
  return 0.5 * (b.tau - std::sqrt(disc));
}

// ---------------------------------------------------------------------------
// Forward conversion
// ---------------------------------------------------------------------------

std::array<double, PantsBD::arity> PantsBD::values() const {
  return {sigma1[0], sigma1[1], sigma1[2], sigma2[0], sigma2[1], sigma2[2], tplus, tminus};
}

PantsBD PantsBD::from_values(const std::array<double, arity>& v) {
  return PantsBD{{v[0], v[1], v[2]}, {v[3], v[4], v[5]}, v[6], v[7]};
}

PantsBD pants_goldman_to_bd(const PantsGoldman& g) {
  require_positive(g.s, "s");
  require_positive(g.t, "t");
  std::array<double, 3> log_lambda{}, log_mu{};
  for (std::size_t i = 0; i < 3; ++i) {
    validate(g.boundaries[i]);
    log_mu[i] = std::log(middle_eigenvalue(g.boundaries[i]));
    log_lambda[i] = std::log(g.boundaries[i].lambda);
  }
  const double log_s = std::log(g.s);
  PantsBD bd;
  for (std::size_t i = 0; i < 3; ++i) {
    const double root =
        0.5 * (log_lambda[prev(i)] + log_lambda[next(i)] - log_lambda[i]);
    bd.sigma1[i] = log_s + log_mu[prev(i)] + root;
    bd.sigma2[i] = -log_s + log_mu[next(i)] + root;
  }
  const double edge_terms = softplus(-bd.sigma2[1]) + softplus(-bd.sigma2[2]);
  const double b3_term = softplus(bd.sigma1[2]);
  const double log_t = std::log(g.t);
  bd.tplus = edge_terms - log_t - b3_term;
  bd.tminus = log_t + log_mu[0] + log_mu[1] + log_mu[2] + b3_term - edge_terms;
  return bd;
}

TorusBD torus_goldman_to_bd(const TorusGoldman& g) {
  if (g.c.kind != BoundaryKind::hyperbolic) {
    inconsistent("the gluing curve C must be hyperbolic");
  }
  if (!std::isfinite(g.u) || !std::isfinite(g.v)) {
    throw Error(ErrorCode::InvalidArgument, "gluing parameters must be finite");
  }
  TorusBD bd;
  bd.pants = pants_goldman_to_bd(PantsGoldman{{g.b, g.c, g.c}, g.s, g.t});
  bd.sigma_c1 = g.u - 3.0 * g.v;
  bd.sigma_c2 = g.u + 3.0 * g.v;
  return bd;
}

// ---------------------------------------------------------------------------
// Strata
// ---------------------------------------------------------------------------

AllParabolicCoords all_parabolic_coords(double s, double t) {
  require_positive(s, "s");
  require_positive(t, "t");
  return AllParabolicCoords{std::log(s), std::log1p(s) - std::log(t)};
}

AllParabolicParams all_parabolic_recover(const AllParabolicCoords& c) {
  const double s = std::exp(c.sigma1_b1);
  return AllParabolicParams{s, (s + 1.0) * std::exp(-c.tplus)};
}

OneParabolicPantsCoords OneParabolicPantsCoords::from(const PantsBD& bd) {
  return {bd.sigma1[0], bd.sigma2[0], bd.sigma1[1], bd.sigma1[2], bd.tplus, bd.tminus};
}

OneQuasiHyperbolicPantsCoords OneQuasiHyperbolicPantsCoords::from(const PantsBD& bd) {
  return {bd.sigma1[0], bd.sigma2[0], bd.sigma1[1], bd.sigma2[1],
          bd.sigma1[2], bd.tplus,     bd.tminus};
}

TorusInteriorCoords TorusInteriorCoords::from(const TorusBD& bd) {
  const PantsBD& p = bd.pants;
  return {p.sigma1[0], p.sigma2[0], p.sigma1[1], p.sigma1[2],
          p.tplus,     p.tminus,    bd.sigma_c1, bd.sigma_c2};
}

TorusQuasiHyperbolicCoords TorusQuasiHyperbolicCoords::from(const TorusBD& bd) {
  const PantsBD& p = bd.pants;
  return {p.sigma1[0], p.sigma1[1], p.sigma1[2], p.tplus,
          p.tminus,    bd.sigma_c1, bd.sigma_c2};
}

TorusParabolicCoords TorusParabolicCoords::from(const TorusBD& bd) {
  const PantsBD& p = bd.pants;
  return {p.sigma1[0], p.sigma1[1], p.sigma1[2], p.tplus, bd.sigma_c1, bd.sigma_c2};
}

PantsRecovery recover_pants_interior(const PantsBD& bd) {
  const Stratum st{Eigen::MatrixXd::Identity(7, 7),
                   {kSigma1, kSigma1 + 1, kSigma1 + 2, kSigma2, kSigma2 + 1, kSigma2 + 2,
                    kTauSum},
                   {kHyp, kHyp, kHyp}};
  Eigen::VectorXd obs(7);
  obs << bd.sigma1[0], bd.sigma1[1], bd.sigma1[2], bd.sigma2[0], bd.sigma2[1],
      bd.sigma2[2], bd.tplus + bd.tminus;
  return finish_pants(st, solve_stratum(st, obs), bd.tplus);
}

PantsRecovery recover_pants_one_quasi_hyperbolic(const OneQuasiHyperbolicPantsCoords& c) {
  const Stratum st{columns({unit(kLogS), quasi_log_lambda1(), unit(kLogLambda + 1),
                            unit(kLogLambda + 2), unit(kLogMu + 1), unit(kLogMu + 2)}),
                   {kSigma1, kSigma2, kSigma1 + 1, kSigma2 + 1, kSigma1 + 2, kTauSum},
                   {kQuasi, kHyp, kHyp}};
  Eigen::VectorXd obs(6);
  obs << c.sigma1_b1, c.sigma2_b1, c.sigma1_b2, c.sigma2_b2, c.sigma1_b3,
      c.tplus + c.tminus;
  return finish_pants(st, solve_stratum(st, obs), c.tplus);
}

PantsRecovery recover_pants_one_parabolic(const OneParabolicPantsCoords& c) {
  const Stratum st{columns({unit(kLogS), unit(kLogLambda + 1), unit(kLogLambda + 2),
                            unit(kLogMu + 1), unit(kLogMu + 2)}),
                   {kSigma1, kSigma2, kSigma1 + 1, kSigma1 + 2, kTauSum},
                   {kPara, kHyp, kHyp}};
  Eigen::VectorXd obs(5);
  obs << c.sigma1_b1, c.sigma2_b1, c.sigma1_b2, c.sigma1_b3, c.tplus + c.tminus;
  return finish_pants(st, solve_stratum(st, obs), c.tplus);
}

TorusRecovery recover_torus_interior(const TorusInteriorCoords& c) {
  const Stratum st{columns({unit(kLogS), unit(kLogLambda), unit(kLogMu), torus_log_lambda(),
                            torus_log_mu()}),
                   {kSigma1, kSigma2, kSigma1 + 1, kSigma1 + 2, kTauSum},
                   {kHyp, kHyp, kHyp}};
  Eigen::VectorXd obs(5);
  obs << c.sigma1_b1, c.sigma2_b1, c.sigma1_b2, c.sigma1_b3, c.tplus + c.tminus;
  return finish_torus(st, solve_stratum(st, obs), c.tplus, c.sigma_c1, c.sigma_c2);
}

TorusRecovery recover_torus_quasi_hyperbolic(const TorusQuasiHyperbolicCoords& c) {
  const Stratum st{
      columns({unit(kLogS), quasi_log_lambda1(), torus_log_lambda(), torus_log_mu()}),
      {kSigma1, kSigma1 + 1, kSigma1 + 2, kTauSum},
      {kQuasi, kHyp, kHyp}};
  Eigen::VectorXd obs(4);
  obs << c.sigma1_b1, c.sigma1_b2, c.sigma1_b3, c.tplus + c.tminus;
  return finish_torus(st, solve_stratum(st, obs), c.tplus, c.sigma_c1, c.sigma_c2);
}

TorusRecovery recover_torus_parabolic(const TorusParabolicCoords& c) {
  const Stratum st{columns({unit(kLogS), torus_log_lambda(), torus_log_mu()}),
                   {kSigma1, kSigma1 + 1, kSigma1 + 2},
                   {kPara, kHyp, kHyp}};
  Eigen::VectorXd obs(3);
  obs << c.sigma1_b1, c.sigma1_b2, c.sigma1_b3;
  return finish_torus(st, solve_stratum(st, obs), c.tplus, c.sigma_c1, c.sigma_c2);
}

OneParabolicResiduals one_parabolic_residuals(const PantsBD& bd, double s) {
  require_positive(s, "s");
  return OneParabolicResiduals{
      bd.sigma1[1] + bd.sigma2[2],
      bd.sigma1[0] - bd.sigma2[0] + bd.sigma1[2] - bd.sigma2[1] - 4.0 * std::log(s)};
}

double quasi_hyperbolic_residual(const PantsBD& bd) { return bd.sigma1[1] + bd.sigma2[2]; }

TorusParabolicRecovery torus_parabolic_recover(const std::array<double, 3>& sigma1,
                                               double tplus) {
  for (double v : sigma1) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "sigma1 must be finite");
  }
  const double log_s = sigma1[1];
  const double s = std::exp(log_s);
  const double mu2 = std::exp(sigma1[2]) / s;
  const double lambda2 = std::exp(sigma1[0] - sigma1[2]);
  const double nu2 = 1.0 / (lambda2 * mu2);
  if (!(lambda2 > 0.0 && lambda2 < 1.0) || !(lambda2 < mu2 && mu2 < nu2)) {
    inconsistent("coordinates do not come from a hyperbolic meridian (need lambda2 < mu2 < nu2)");
  }

  PantsBD full;
  full.sigma1 = sigma1;
  full.sigma2[2] = -log_s;
  full.sigma2[0] = std::log(mu2 * lambda2 / s);
  full.sigma2[1] = std::log(mu2 / s);
  const double edge_terms = softplus(-full.sigma2[1]) + softplus(-full.sigma2[2]);
  const double b3_term = softplus(full.sigma1[2]);
  const double log_t = edge_terms - b3_term - tplus;
  const double t = std::exp(log_t);
  require_positive(t, "recovered t");
  full.tplus = tplus;
  full.tminus = log_t + 2.0 * std::log(mu2) + b3_term - edge_terms;
  return TorusParabolicRecovery{s, lambda2, mu2, t, full};
}

int stratum_codimension(std::span<const BoundaryKind> kinds) {
  if (kinds.size() != 3 && kinds.size() != 1) {
    throw Error(ErrorCode::InvalidArgument,
                "codimension needs 3 (pants) or 1 (torus) boundary kinds");
  }
  int codim = 0;
  for (BoundaryKind k : kinds) {
    switch (k) {
      case BoundaryKind::hyperbolic: break;
      case BoundaryKind::quasi_hyperbolic: codim += 1; break;
      case BoundaryKind::parabolic: codim += 2; break;
    }
  }
  return codim;
}

BoundaryData pinch(const BoundaryData& b, double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "pinch fraction must lie in [0, 1]");
  }
  validate(b);
  const double mu = middle_eigenvalue(b);
  if (s == 1.0 || b.kind == BoundaryKind::parabolic) return BoundaryData::parabolic();
  const double scale = 1.0 - s;
  if (b.kind == BoundaryKind::quasi_hyperbolic) {
    return BoundaryData::quasi_hyperbolic(std::pow(mu, scale));
  }
  return BoundaryData::from_eigenvalues(std::pow(b.lambda, scale), std::pow(mu, scale));
}

}  // namespace projkit
