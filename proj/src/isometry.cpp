#include "projkit/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "projkit/error.hpp"

namespace projkit {
namespace {

using Complex = std::complex<double>;

// Eigenvalues whose pairwise distance is within the clustering threshold,
// merged by single linkage.
struct Cluster {
  std::vector<Complex> members;

  [[nodiscard]] Complex mean() const {
    Complex sum{0.0, 0.0};
    for (const Complex& z : members) sum += z;
    return sum / static_cast<double>(members.size());
  }
  [[nodiscard]] bool all_real(double tol) const {
    return std::all_of(members.begin(), members.end(), [tol](const Complex& z) {
      return std::abs(z.imag()) <= tol * std::max(1.0, std::abs(z));
    });
  }
};

std::vector<Cluster> cluster_eigenvalues(const std::array<Complex, 3>& ev, double tol) {
  std::array<int, 3> label{0, 1, 2};
  auto close = [tol](Complex a, Complex b) {
    return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
  };
  for (int pass = 0; pass < 2; ++pass) {
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (close(ev[i], ev[j])) {
          const int lo = std::min(label[i], label[j]);
          label[i] = label[j] = lo;
        }
      }
    }
  }
  std::vector<Cluster> clusters;
  for (int id = 0; id < 3; ++id) {
    Cluster c;
    for (int i = 0; i < 3; ++i) {
      if (label[i] == id) c.members.push_back(ev[i]);
    }
    if (!c.members.empty()) clusters.push_back(std::move(c));
  }
  return clusters;
}

int rank_of_shift(const Mat3& m, double shift, double threshold) {
  const Mat3 a = m - shift * Mat3::Identity();
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Mat3>(a).singularValues();
  return static_cast<int>((sv.array() > threshold).count());
}

// Pairwise separation of the raw eigenvalues beyond tol·max(1, |λ|).
bool separated(const std::array<Complex, 3>& ev, double tol) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(ev[i] - ev[j]) <= tol * std::max(1.0, std::abs(ev[i]))) return false;
  return true;
}

IsometryClass from_distinct(std::vector<double> values, const std::array<Complex, 3>& ev) {
  std::sort(values.begin(), values.end(), std::greater<>());
  if (values[2] <= 0.0 || !(values[0] > values[1] && values[1] > values[2])) {
    return OtherIsometry{ev};
  }
  // Computed eigenvalues of an ill-conditioned unimodular matrix drift off
  // product 1; project back.
  const double scale = std::cbrt(values[0] * values[1] * values[2]);
  return Hyperbolic(values[0] / scale, values[1] / scale, values[2] / scale);
}

}  // namespace

SL3Matrix::SL3Matrix(const Mat3& entries) : entries_(entries) {
  const double det = entries_.determinant();
  if (!entries_.allFinite() || !(std::abs(det - 1.0) <= kDetTol)) {
    throw Error(ErrorCode::NotUnimodular,
                "determinant " + std::to_string(det) + " is not 1");
  }
}

SL3Matrix SL3Matrix::normalized(const Mat3& entries) {
  const double det = entries.determinant();
  if (det == 0.0 || !std::isfinite(det)) {
    throw Error(ErrorCode::NotUnimodular, "matrix is singular");
  }
  // Rescaled entries have unit determinant up to rounding that grows with the
  // condition number, so the tolerance check is skipped here.
  const Mat3 scaled = entries / std::cbrt(det);
  if (!scaled.allFinite()) throw Error(ErrorCode::NotUnimodular, "matrix is not finite");
  return SL3Matrix(scaled, Unchecked{});
}

Hyperbolic::Hyperbolic(double l1, double l2, double l3) : l1_(l1), l2_(l2), l3_(l3) {
  if (!(l1 > l2 && l2 > l3 && l3 > 0.0) || !(std::abs(l1 * l2 * l3 - 1.0) <= 1e-9)) {
    throw Error(ErrorCode::InvalidArgument,
                "hyperbolic eigenvalues must satisfy l1 > l2 > l3 > 0 with product 1");
  }
}

QuasiHyperbolic::QuasiHyperbolic(double mu, double nu) : mu_(mu), nu_(nu) {
  if (!(mu > 0.0 && nu > 0.0 && mu != nu) || !(std::abs(mu * mu * nu - 1.0) <= 1e-9)) {
    throw Error(ErrorCode::InvalidArgument,
                "quasi-hyperbolic data must satisfy mu, nu > 0, mu != nu, mu^2 nu = 1");
  }
}

std::string_view kind_name(const IsometryClass& c) noexcept {
  switch (c.index()) {
    case 0: return "hyperbolic";
    case 1: return "quasi-hyperbolic";
    case 2: return "parabolic";
    default: return "other";
  }
}

IsometryClass classify(const SL3Matrix& sl, double tol) {
  if (!(tol > 0.0 && tol < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "classification tolerance must lie in (0, 1)");
  }
  const Mat3& m = sl.matrix();
  const Eigen::Vector3cd computed = Eigen::EigenSolver<Mat3>(m, false).eigenvalues();
  const std::array<Complex, 3> ev{computed(0), computed(1), computed(2)};

  const double cluster_tol = std::cbrt(tol);
  const double rank_threshold = tol * m.norm();
  const std::vector<Cluster> clusters = cluster_eigenvalues(ev, cluster_tol);

  for (const Cluster& c : clusters) {
    const Complex mu = c.mean();
    if (std::abs(mu.imag()) > cluster_tol * std::max(1.0, std::abs(mu))) {
      return OtherIsometry{ev};
    }
  }

  auto real_parts = [](const Cluster& c) {
    std::vector<double> out;
    for (const Complex& z : c.members) out.push_back(z.real());
    return out;
  };

  if (clusters.size() == 3) {
    if (!clusters[0].all_real(cluster_tol) || !clusters[1].all_real(cluster_tol) ||
        !clusters[2].all_real(cluster_tol)) {
      return OtherIsometry{ev};
    }
    return from_distinct({ev[0].real(), ev[1].real(), ev[2].real()}, ev);
  }

  if (clusters.size() == 2) {
    const Cluster& pair = clusters[0].members.size() == 2 ? clusters[0] : clusters[1];
    const Cluster& single = clusters[0].members.size() == 2 ? clusters[1] : clusters[0];
    const double mean = pair.mean().real();
    const double nu = single.members[0].real();
    const int rank = rank_of_shift(m, mean, rank_threshold);
    if (rank == 3) {
      // Close but genuinely distinct eigenvalues.
      if (!pair.all_real(cluster_tol)) return OtherIsometry{ev};
      std::vector<double> values = real_parts(pair);
      values.push_back(nu);
      return from_distinct(values, ev);
    }
    if (rank == 2 && mean > 0.0 && nu > 0.0) {
      const double mu = 1.0 / std::sqrt(nu);
      if (mu != nu) return QuasiHyperbolic(mu, nu);
    }
    return OtherIsometry{ev};
  }

  const double mean = clusters[0].mean().real();
  const int rank = rank_of_shift(m, mean, rank_threshold);
  if (rank == 3) {
    if (!clusters[0].all_real(cluster_tol)) return OtherIsometry{ev};
    return from_distinct(real_parts(clusters[0]), ev);
  }
  if (rank == 2 && mean > 0.0) {
    // A unipotent block also needs (M − λI)² ≠ 0 with rank 1; three close but
    // distinct eigenvalues symmetric about the mean pass the first test only.
    const Mat3 n = m - mean * Mat3::Identity();
    if (rank_of_shift(n * n, 0.0, tol * n.squaredNorm()) == 1) return Parabolic{};
    if (clusters[0].all_real(cluster_tol) && separated(ev, tol)) {
      return from_distinct(real_parts(clusters[0]), ev);
    }
  }
  return OtherIsometry{ev};
}

GoldmanLengths goldman_lengths(const IsometryClass& c) {
  const auto* h = std::get_if<Hyperbolic>(&c);
  if (h == nullptr) {
    throw Error(ErrorCode::WrongClass,
                "Goldman lengths need a hyperbolic element, got " +
                    std::string(kind_name(c)));
  }
  const double l1 = std::log(h->l1()) - std::log(h->l2());
  const double l2 = std::log(h->l2()) - std::log(h->l3());
  return GoldmanLengths{l1, l2, std::log(h->l1()) - std::log(h->l3())};
}

SL3Matrix bulging_matrix(double v) {
  Mat3 b = Mat3::Zero();
  b(0, 0) = std::exp(-v);
  b(1, 1) = std::exp(2.0 * v);
  b(2, 2) = std::exp(-v);
  return SL3Matrix(b);
}

Vec3 bulge_vertex(double y, double x, double v) {
  return Vec3(1.0, std::exp(3.0 * v) * y, x);
}

std::pair<double, double> shear_shift(double s1, double s2, double v) {
  return {s1 - 3.0 * v, s2 + 3.0 * v};
}

Flag bulge_flag(const Flag& flag, double v) {
  return flag.transformed(bulging_matrix(v).matrix());
}

std::array<Flag, 4> bulging_configuration(double y, double x) {
  if (!(y != 0.0) || !(x > 0.0) || !std::isfinite(y) || !std::isfinite(x)) {
    throw Error(ErrorCode::InvalidArgument,
                "bulging configuration needs y != 0 and x > 0");
  }
  const double k = y * y / x;
  auto tangent_flag = [k](const Vec3& p) {
    const Vec3 normal(k * p.z(), -2.0 * p.y(), k * p.x());
    return Flag(ProjPoint(p), ProjLine(p, normal.cross(p)));
  };
  const Flag e(ProjPoint(1.0, 0.0, 0.0), ProjLine(Vec3(1, 0, 0), Vec3(0, 1, 0)));
  const Flag f(ProjPoint(0.0, 0.0, 1.0), ProjLine(Vec3(0, 0, 1), Vec3(0, 1, 0)));
  return {e, f, tangent_flag(Vec3(1.0, -y, x)), tangent_flag(Vec3(1.0, y, x))};
}

}  // namespace projkit
