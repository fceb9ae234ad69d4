#include "imdet/decompose.hpp"

#include <cmath>
#include <sstream>

#include "imdet/error.hpp"

namespace imdet {

namespace {

void require_one_dimensional(const SignedMeasure& m, const char* op) {
  if (m.domain().kind() == DomainKind::RealBox) {
    throw UnsupportedDomain(std::string(op) + " is not offered on " + m.domain().describe());
  }
}

}  // namespace

SymAntiSplit sym_anti_split(const SignedMeasure& m) {
  require_one_dimensional(m, "sym_anti_split");
  const SignedMeasure mirror = reflect(m);
  return {scale(m + mirror, 0.5), scale(m - mirror, 0.5)};
}

JordanPair hahn_jordan(const SignedMeasure& m) {
  require_one_dimensional(m, "hahn_jordan");
  const auto& d = m.domain();
  const double origin = d.reflection_origin();

  std::vector<Atom> pos_atoms;
  std::vector<Atom> neg_atoms;
  std::vector<double> pos_points;
  std::vector<Interval> negative_pieces;
  for (const auto& a : m.atoms()) {
    if (a.w > 0.0) {
      pos_atoms.push_back(a);
      pos_points.push_back(a.t);
    } else if (a.w < 0.0) {
      neg_atoms.push_back({a.t, -a.w});
      negative_pieces.push_back(Interval::point(a.t));
    }
  }

  std::vector<DensitySegment> pos_density;
  std::vector<DensitySegment> neg_density;
  for (const auto& s : m.density()) {
    for (const auto& piece : sign_pieces(s, origin)) {
      if (piece.sign > 0) {
        pos_density.push_back(s.restricted(piece.lo, piece.hi));
      } else if (piece.sign < 0) {
        neg_density.push_back(s.restricted(piece.lo, piece.hi).scaled(-1.0));
        negative_pieces.push_back({piece.lo, piece.hi, std::isfinite(piece.lo), false});
      }
    }
  }

  BorelSet negative = BorelSet::from_intervals(d, std::move(negative_pieces));
  // Positive atoms sitting on the edge of a negative density piece stay in A⁺.
  negative = difference(negative, BorelSet::from_points(d, pos_points));
  BorelSet positive = negative.complement();
  return {SignedMeasure(d, std::move(pos_atoms), std::move(pos_density)),
          SignedMeasure(d, std::move(neg_atoms), std::move(neg_density)), std::move(positive), std::move(negative)};
}

double antisymmetry_defect(const SignedMeasure& m) {
  require_one_dimensional(m, "antisymmetry check");
  return total_variation(m + reflect(m));
}

VSetCertificate lemma1_v_set(const SignedMeasure& eta) {
  const double defect = antisymmetry_defect(eta);
  if (defect > kAntisymmetryTolerance) {
    std::ostringstream os;
    os.precision(17);
    os << "measure is not antisymmetric: defect |eta + reflect(eta)| = " << defect;
    throw PreconditionError(os.str());
  }
  const JordanPair jp = hahn_jordan(eta);
  VSetCertificate cert{intersect(jp.hahn_positive, jp.hahn_negative.negated()), false, {}, 0.0};
  cert.disjointness_ok = disjoint_from_reflection(cert.v_set);
  cert.masses = {measure_of(jp.positive, cert.v_set), total_variation(jp.positive), total_variation(jp.negative),
                 measure_of(jp.negative, cert.v_set.negated())};
  cert.half_norm = 0.5 * total_variation(eta);
  return cert;
}

}  // namespace imdet
