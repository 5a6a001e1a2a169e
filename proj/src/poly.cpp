#include "declab/poly.hpp"

#include <cmath>

namespace declab {

Polynomial::Polynomial(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  if (coeffs_.size() > 33)
    fail(ErrorCode::InvalidArgument, "polynomial degree capped at 32");
  for (const auto& c : coeffs_)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      fail(ErrorCode::InvalidArgument, "polynomial has non-finite coefficients");
}

cplx Polynomial::eval(cplx z) const {
  cplx acc = 0.0;
  for (size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial({cplx(0.0)});
  std::vector<cplx> d(coeffs_.size() - 1);
  for (size_t k = 1; k < coeffs_.size(); ++k)
    d[k - 1] = coeffs_[k] * static_cast<double>(k);
  return Polynomial(std::move(d));
}

double Polynomial::sup_on_circle(int samples) const {
  Polynomial dp = derivative();
  Polynomial ddp = dp.derivative();
  const double two_pi = 6.283185307179586477;

  auto q = [&](double theta) {
    cplx z(std::cos(theta), std::sin(theta));
    return std::norm(eval(z));
  };

  std::vector<double> vals(samples);
  for (int k = 0; k < samples; ++k) vals[k] = q(two_pi * k / samples);

  double best = 0.0;
  for (int k = 0; k < samples; ++k) {
    double prev = vals[(k + samples - 1) % samples];
    double next = vals[(k + 1) % samples];
    if (vals[k] < prev || vals[k] < next) {
      best = std::max(best, vals[k]);
      continue;
    }
    // local maximum: Newton on d/dtheta |P|^2
    double theta = two_pi * k / samples;
    double cur = vals[k];
    for (int it = 0; it < 12; ++it) {
      cplx z(std::cos(theta), std::sin(theta));
      cplx pz = eval(z), dz = dp.eval(z), d2z = ddp.eval(z);
      cplx zi = z * cplx(0.0, 1.0);
      double q1 = 2.0 * std::real(std::conj(pz) * dz * zi);
      double q2 = 2.0 * (std::norm(dz * z) -
                         std::real(std::conj(pz) * (d2z * z * z + dz * z)));
      if (q2 >= 0.0 || !std::isfinite(q2)) break;
      double step = q1 / q2;
      if (!std::isfinite(step)) break;
      // stay inside the sampling cell
      double cap = two_pi / samples;
      if (step > cap) step = cap;
      if (step < -cap) step = -cap;
      double cand = theta - step;
      double qc = q(cand);
      if (qc >= cur) {
        theta = cand;
        cur = qc;
      } else {
        break;
      }
    }
    best = std::max(best, cur);
  }
  return std::sqrt(best);
}

}  // namespace declab
