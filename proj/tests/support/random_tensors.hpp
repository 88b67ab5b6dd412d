#ifndef HBKIT_TESTS_RANDOM_TENSORS_HPP
#define HBKIT_TESTS_RANDOM_TENSORS_HPP

#include <random>

#include "hbkit/geom/tensors.hpp"

namespace hbkit::testing {

/// Deterministic generator of small random elements of the coefficient ring.
class RandomTensors {
 public:
  RandomTensors(symcalc::ChartPtr chart, std::uint64_t seed) : chart_(std::move(chart)), rng_(seed) {}

  const symcalc::ChartPtr& chart() const { return chart_; }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  symcalc::Rational rational() {
    int num = integer(-5, 5);
    if (num == 0) num = 1;
    symcalc::Rational r(num, integer(1, 3));
    r.canonicalize();
    return r;
  }

  /// Up to `terms` monomials, degree <= max_degree in the coordinates; with
  /// `trig` set, random harmonics in the chart angles of frequency <= 2.
  symcalc::Scalar scalar(int terms = 3, int max_degree = 2, bool trig = true) {
    using symcalc::Scalar;
    Scalar out(chart_);
    const int n = integer(1, terms);
    for (int t = 0; t < n; ++t) {
      Scalar mono(chart_, rational());
      const int degree = integer(0, max_degree);
      for (int d = 0; d < degree; ++d) {
        const auto i = static_cast<std::size_t>(integer(0, static_cast<int>(chart_->dimension()) - 1));
        mono *= Scalar::symbol(chart_, symcalc::Symbol{symcalc::SymbolKind::kCoordinate, i});
      }
      if (trig && chart_->n_angles() > 0 && integer(0, 1) == 1) {
        std::vector<int> freqs(chart_->n_angles());
        for (auto& f : freqs) f = integer(-2, 2);
        mono *= Scalar::harmonic(chart_, freqs, integer(0, 1) == 1);
      }
      out += mono;
    }
    return out;
  }

  geom::VectorField vector_field(int terms = 2, int max_degree = 2, bool trig = false) {
    std::vector<symcalc::Scalar> comps;
    for (std::size_t i = 0; i < chart_->dimension(); ++i)
      comps.push_back(integer(0, 2) == 0 ? symcalc::Scalar(chart_) : scalar(terms, max_degree, trig));
    return geom::VectorField(chart_, std::move(comps));
  }

  template <class T>
  T alternating(std::size_t degree, int terms = 2, int max_degree = 2, bool trig = false) {
    T out(chart_, degree);
    const std::size_t dim = chart_->dimension();
    const int n = integer(1, 3);
    for (int k = 0; k < n; ++k) {
      std::vector<std::size_t> idx;
      while (idx.size() < degree) {
        auto i = static_cast<std::size_t>(integer(0, static_cast<int>(dim) - 1));
        if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
      }
      std::sort(idx.begin(), idx.end());
      out.add_to(geom::mask_of(idx), scalar(terms, max_degree, trig));
    }
    return out;
  }

  geom::DiffForm form(std::size_t degree, int terms = 2, int max_degree = 2) {
    return alternating<geom::DiffForm>(degree, terms, max_degree);
  }
  geom::Multivector multivector(std::size_t degree, int terms = 2, int max_degree = 2) {
    return alternating<geom::Multivector>(degree, terms, max_degree);
  }

  geom::VecValuedForm vv_form(std::size_t degree, int terms = 1, int max_degree = 2) {
    std::vector<geom::DiffForm> comps;
    for (std::size_t a = 0; a < chart_->dimension(); ++a)
      comps.push_back(integer(0, 1) == 0 ? geom::DiffForm(chart_, degree) : form(degree, terms, max_degree));
    return geom::VecValuedForm(chart_, std::move(comps));
  }

 private:
  symcalc::ChartPtr chart_;
  std::mt19937_64 rng_;
};

}  // namespace hbkit::testing

#endif  // HBKIT_TESTS_RANDOM_TENSORS_HPP
