#include "projkit/rp2.hpp"

#include <array>
#include <cmath>
#include <span>

#include "projkit/error.hpp"

namespace projkit {
namespace {

void require_nonzero(const Vec3& v, const char* what) {
  if (!v.allFinite() || v.isZero(0.0)) {
    throw Error(ErrorCode::DegenerateVector,
                std::string(what) + " must be a finite nonzero vector");
  }
}

double normalized_pairing(const ProjPoint& p, const ProjLine& l) {
  return std::abs(p.unit().dot(l.normal().normalized()));
}

double normalized_triple(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  Mat3 m;
  m << a.unit(), b.unit(), c.unit();
  return std::abs(m.determinant());
}

bool is_generic(std::span<const Flag* const> flags, double tol) {
  if (!(tol > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "genericity tolerance must be positive");
  }
  const std::size_t n = flags.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && !(normalized_pairing(flags[i]->point(), flags[j]->line()) > tol)) {
        return false;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (!(normalized_triple(flags[i]->point(), flags[j]->point(),
                                flags[k]->point()) > tol)) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

ProjPoint::ProjPoint(const Vec3& coords) : coords_(coords) {
  require_nonzero(coords_, "point representative");
}

bool ProjPoint::same_as(const ProjPoint& other, double tol) const {
  return coords_.cross(other.coords_).norm() <=
         tol * coords_.norm() * other.coords_.norm();
}

ProjLine::ProjLine(const Vec3& first, const Vec3& second)
    : first_(first), second_(second) {
  require_nonzero(first_, "line spanning vector");
  require_nonzero(second_, "line spanning vector");
  if (!(first_.cross(second_).norm() > 1e-12 * first_.norm() * second_.norm())) {
    throw Error(ErrorCode::DependentSpan, "line spanning vectors are linearly dependent");
  }
}

Flag::Flag(const ProjPoint& point, const ProjLine& line, double tol)
    : point_(point), line_(line) {
  const double bound = tol * point_.coords().norm() * line_.first().norm() *
                       line_.second().norm();
  if (!(std::abs(pairing13(point_, line_)) <= bound)) {
    throw Error(ErrorCode::NonIncidentFlag, "flag point does not lie on its line");
  }
}

Flag Flag::transformed(const Mat3& g) const {
  return Flag(ProjPoint(g * point_.coords()),
              ProjLine(g * line_.first(), g * line_.second()));
}

Flag Flag::rescaled(double point_scale, double first_scale, double second_scale) const {
  return Flag(ProjPoint(point_scale * point_.coords()),
              ProjLine(first_scale * line_.first(), second_scale * line_.second()));
}

double pairing13(const ProjPoint& p, const ProjLine& l) {
  Mat3 m;
  m << p.coords(), l.first(), l.second();
  return m.determinant();
}

double triple_det(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  Mat3 m;
  m << a.coords(), b.coords(), c.coords();
  return m.determinant();
}

bool is_generic_triple(const Flag& e, const Flag& f, const Flag& g, double tol) {
  const std::array<const Flag*, 3> flags{&e, &f, &g};
  return is_generic(flags, tol);
}

bool is_generic_quadruple(const Flag& e, const Flag& f, const Flag& g, const Flag& l,
                          double tol) {
  const std::array<const Flag*, 4> flags{&e, &f, &g, &l};
  return is_generic(flags, tol);
}

}  // namespace projkit
