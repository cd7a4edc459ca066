#ifndef WEAVEQ_SRC_KAHAN_SUM_HPP
#define WEAVEQ_SRC_KAHAN_SUM_HPP

#include <cmath>

namespace weaveq::detail {

// Neumaier variant of compensated summation.
class KahanSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0;
  double comp_ = 0;
};

} // namespace weaveq::detail

#endif
