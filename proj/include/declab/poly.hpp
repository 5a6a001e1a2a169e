#ifndef DECLAB_POLY_HPP
#define DECLAB_POLY_HPP

#include <vector>

#include "declab/linalg.hpp"

namespace declab {

class Polynomial {
 public:
  Polynomial() : coeffs_{cplx(0.0)} {}
  explicit Polynomial(std::vector<cplx> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }
  cplx eval(cplx z) const;
  Polynomial derivative() const;

  // sup_{|z|=1} |P(z)|: dense circle sampling plus Newton refinement of the
  // local maxima of |P(e^{i theta})|^2.
  double sup_on_circle(int samples = 1 << 14) const;

 private:
  std::vector<cplx> coeffs_;  // a_0 .. a_deg
};

}  // namespace declab

#endif
