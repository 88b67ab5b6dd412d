#include "hbkit/symcalc/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "hbkit/errors.hpp"

namespace hbkit::symcalc {

namespace {

std::size_t n_poly(const Chart& c) { return c.n_poly_slots(); }

// Adopts a chart for a binary operation, allowing chart-less zeros.
ChartPtr join_charts(const ChartPtr& a, const ChartPtr& b) {
  if (!a) return b;
  if (!b) return a;
  require_same_chart(a, b);
  return a;
}

bool by_key(const Term& a, const Term& b) { return a.key < b.key; }

// Maps poly slots of `from` onto slots of `to` by name.
std::vector<std::size_t> poly_slot_map(const Chart& from, const Chart& to) {
  std::vector<std::size_t> map(from.n_poly_slots());
  for (std::size_t i = 0; i < from.dimension(); ++i) map[i] = to.poly_slot(to.lookup(from.coordinate_name(i)));
  for (std::size_t i = 0; i < from.n_parameters(); ++i) {
    auto s = to.lookup(from.parameters()[i]);
    if (s.kind != SymbolKind::kParameter) throw ChartMismatch("parameter '" + from.parameters()[i] + "' changes kind");
    map[from.dimension() + i] = to.poly_slot(s);
  }
  map[from.pi_slot()] = to.pi_slot();
  return map;
}

}  // namespace

// ---------------------------------------------------------------------------
// key helpers

std::size_t key_size(const Chart& chart) { return chart.n_poly_slots() + chart.n_angles() + 1; }

int key_frequency(const Chart& chart, const TermKey& key, std::size_t angle) {
  return key[chart.n_poly_slots() + angle];
}

bool key_is_sine(const TermKey& key) { return key.back() == 1; }

// ---------------------------------------------------------------------------
// builder

ScalarBuilder::ScalarBuilder(ChartPtr chart) : chart_(std::move(chart)) {}

void ScalarBuilder::add(const TermKey& key, const Rational& coeff) {
  if (sgn(coeff) == 0) return;
  pending_.push_back({key, coeff});
}

void ScalarBuilder::add_trig(TermKey key, Rational coeff) {
  if (sgn(coeff) == 0) return;
  const std::size_t np = n_poly(*chart_);
  const std::size_t na = chart_->n_angles();
  std::size_t first = np;
  while (first < np + na && key[first] == 0) ++first;
  if (first == np + na) {
    if (key.back() == 1) return;  // sin(0)
    pending_.push_back({std::move(key), std::move(coeff)});
    return;
  }
  if (key[first] < 0) {
    for (std::size_t i = first; i < np + na; ++i) key[i] = -key[i];
    if (key.back() == 1) coeff = -coeff;
  }
  pending_.push_back({std::move(key), std::move(coeff)});
}

void ScalarBuilder::add(const Scalar& s, const Rational& factor) {
  if (s.is_zero()) return;
  if (!chart_) chart_ = s.chart();
  require_same_chart(chart_, s.chart());
  for (const auto& t : s.terms()) pending_.push_back({t.key, t.coeff * factor});
}

Scalar ScalarBuilder::build() && {
  Scalar out(chart_);
  std::sort(pending_.begin(), pending_.end(), by_key);
  for (auto& t : pending_) {
    if (!out.terms_.empty() && out.terms_.back().key == t.key) {
      out.terms_.back().coeff += t.coeff;
      if (sgn(out.terms_.back().coeff) == 0) out.terms_.pop_back();
    } else if (sgn(t.coeff) != 0) {
      out.terms_.push_back(std::move(t));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar(ChartPtr chart, const Rational& c) : chart_(std::move(chart)) {
  if (sgn(c) == 0) return;
  terms_.push_back({TermKey(key_size(*chart_), 0), c});
  terms_.back().coeff.canonicalize();
}

Scalar Scalar::symbol(ChartPtr chart, std::string_view name) {
  auto s = chart->lookup(name);
  return symbol(std::move(chart), s);
}

Scalar Scalar::symbol(ChartPtr chart, const Symbol& s) {
  if (s.kind == SymbolKind::kAngle)
    throw ExpressionError("angle '" + chart->symbol_name(s) + "' may only appear inside sin or cos");
  Scalar out(chart);
  TermKey key(key_size(*chart), 0);
  key[chart->poly_slot(s)] = 1;
  out.terms_.push_back({std::move(key), Rational(1)});
  return out;
}

Scalar Scalar::harmonic(ChartPtr chart, std::vector<int> freqs, bool sine) {
  if (freqs.size() != chart->n_angles()) throw ExpressionError("frequency vector has wrong length");
  TermKey key(key_size(*chart), 0);
  std::copy(freqs.begin(), freqs.end(), key.begin() + static_cast<long>(chart->n_poly_slots()));
  key.back() = sine ? 1 : 0;
  ScalarBuilder b(chart);
  b.add_trig(std::move(key), Rational(1));
  return std::move(b).build();
}

Scalar Scalar::from_terms(ChartPtr chart, std::vector<Term> terms) {
  ScalarBuilder b(chart);
  for (auto& t : terms) {
    if (t.key.size() != key_size(*chart)) throw ExpressionError("term key has wrong length");
    t.coeff.canonicalize();
    b.add_trig(std::move(t.key), std::move(t.coeff));
  }
  return std::move(b).build();
}

bool Scalar::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& k = terms_.front().key;
  return std::all_of(k.begin(), k.end(), [](int e) { return e == 0; });
}

Rational Scalar::constant_term() const {
  for (const auto& t : terms_)
    if (std::all_of(t.key.begin(), t.key.end(), [](int e) { return e == 0; })) return t.coeff;
  return Rational(0);
}

Scalar Scalar::operator-() const {
  Scalar out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) {
    if (!chart_) chart_ = o.chart_;
    return *this;
  }
  chart_ = join_charts(chart_, o.chart_);
  // Merge of two sorted term lists.
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].key < o.terms_[j].key)) {
      out.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || o.terms_[j].key < terms_[i].key) {
      out.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].coeff + o.terms_[j].coeff;
      if (sgn(c) != 0) out.push_back({std::move(terms_[i].key), std::move(c)});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(out);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  *this = *this * o;
  return *this;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  ChartPtr chart = join_charts(a.chart_, b.chart_);
  if (a.is_zero() || b.is_zero()) return Scalar(chart);
  const std::size_t np = n_poly(*chart);
  const std::size_t na = chart->n_angles();
  const std::size_t ks = np + na + 1;
  ScalarBuilder builder(chart);
  TermKey sum(ks), diff(ks);
  for (const auto& ta : a.terms_) {
    bool a_trivial = true;
    for (std::size_t i = np; i < np + na; ++i) a_trivial = a_trivial && ta.key[i] == 0;
    for (const auto& tb : b.terms_) {
      Rational c = ta.coeff * tb.coeff;
      for (std::size_t i = 0; i < np; ++i) sum[i] = ta.key[i] + tb.key[i];
      bool b_trivial = true;
      for (std::size_t i = np; i < np + na; ++i) b_trivial = b_trivial && tb.key[i] == 0;
      if (a_trivial || b_trivial) {
        const TermKey& trig = a_trivial ? tb.key : ta.key;
        for (std::size_t i = np; i < ks; ++i) sum[i] = trig[i];
        builder.add(sum, c);
        continue;
      }
      // product-to-sum
      for (std::size_t i = 0; i < np; ++i) diff[i] = sum[i];
      for (std::size_t i = np; i < np + na; ++i) {
        sum[i] = ta.key[i] + tb.key[i];
        diff[i] = ta.key[i] - tb.key[i];
      }
      const bool sa = key_is_sine(ta.key), sb = key_is_sine(tb.key);
      Rational half = c / 2;
      if (!sa && !sb) {  // cos a cos b = (cos(a-b) + cos(a+b))/2
        sum.back() = 0;
        diff.back() = 0;
        builder.add_trig(diff, half);
        builder.add_trig(sum, half);
      } else if (sa && sb) {  // sin a sin b = (cos(a-b) - cos(a+b))/2
        sum.back() = 0;
        diff.back() = 0;
        builder.add_trig(diff, half);
        builder.add_trig(sum, -half);
      } else if (sa) {  // sin a cos b = (sin(a+b) + sin(a-b))/2
        sum.back() = 1;
        diff.back() = 1;
        builder.add_trig(sum, half);
        builder.add_trig(diff, half);
      } else {  // cos a sin b = (sin(a+b) - sin(a-b))/2
        sum.back() = 1;
        diff.back() = 1;
        builder.add_trig(sum, half);
        builder.add_trig(diff, -half);
      }
    }
  }
  return std::move(builder).build();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  if (!same_chart(a.chart_, b.chart_)) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].key != b.terms_[i].key || a.terms_[i].coeff != b.terms_[i].coeff) return false;
  return true;
}

// ---------------------------------------------------------------------------
// operations

Scalar pow(const Scalar& base, unsigned exponent) {
  Scalar result(base.chart(), Rational(1));
  if (!base.chart()) return exponent == 0 ? result : Scalar();
  Scalar b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

Scalar partial_derivative(const Scalar& f, const Symbol& v) {
  if (f.is_zero()) return f;
  const Chart& chart = *f.chart();
  ScalarBuilder b(f.chart());
  if (v.kind == SymbolKind::kAngle) {
    const std::size_t slot = chart.n_poly_slots() + v.index;
    for (const auto& t : f.terms()) {
      const int m = t.key[slot];
      if (m == 0) continue;
      TermKey k = t.key;
      if (key_is_sine(k)) {  // d sin(u) = m cos(u)
        k.back() = 0;
        b.add(k, t.coeff * m);
      } else {  // d cos(u) = -m sin(u)
        k.back() = 1;
        b.add(k, -t.coeff * m);
      }
    }
  } else {
    const std::size_t slot = chart.poly_slot(v);
    for (const auto& t : f.terms()) {
      const int e = t.key[slot];
      if (e == 0) continue;
      TermKey k = t.key;
      k[slot] = e - 1;
      b.add(k, t.coeff * e);
    }
  }
  return std::move(b).build();
}

Scalar partial_derivative(const Scalar& f, std::string_view name) {
  if (!f.chart()) return f;
  return partial_derivative(f, f.chart()->lookup(name));
}

Scalar lift(const Scalar& f, const ChartPtr& target) {
  if (!f.chart() || f.chart() == target) {
    Scalar out = f;
    if (f.is_zero()) return Scalar(target);
    return out;
  }
  if (*f.chart() == *target) return Scalar::from_terms(target, f.terms());
  if (!target->extends(*f.chart())) throw ChartMismatch("target chart does not extend source chart");
  std::vector<std::vector<int>> identity(f.chart()->n_angles(), std::vector<int>(target->n_angles(), 0));
  for (std::size_t j = 0; j < identity.size(); ++j) identity[j][j] = 1;
  return substitute_angles(f, target, identity);
}

Scalar substitute_angles(const Scalar& f, const ChartPtr& target, const std::vector<std::vector<int>>& angle_map) {
  if (f.is_zero()) return Scalar(target);
  const Chart& src = *f.chart();
  if (angle_map.size() != src.n_angles()) throw ExpressionError("angle map has wrong length");
  for (const auto& row : angle_map)
    if (row.size() != target->n_angles()) throw ExpressionError("angle map row has wrong length");
  const auto slots = poly_slot_map(src, *target);
  const std::size_t np_s = src.n_poly_slots(), np_t = target->n_poly_slots();
  ScalarBuilder b(target);
  for (const auto& t : f.terms()) {
    TermKey k(key_size(*target), 0);
    for (std::size_t i = 0; i < np_s; ++i) k[slots[i]] += t.key[i];
    for (std::size_t j = 0; j < src.n_angles(); ++j) {
      const int m = t.key[np_s + j];
      if (m == 0) continue;
      for (std::size_t l = 0; l < target->n_angles(); ++l) k[np_t + l] += m * angle_map[j][l];
    }
    k.back() = t.key.back();
    b.add_trig(std::move(k), t.coeff);
  }
  return std::move(b).build();
}

Scalar substitute(const Scalar& f, const std::vector<std::pair<Symbol, Scalar>>& replacements) {
  ChartPtr target = f.chart();
  for (const auto& [sym, value] : replacements) {
    if (value.chart()) {
      if (target == f.chart()) {
        target = value.chart();
      } else {
        require_same_chart(target, value.chart());
      }
    }
  }
  if (!f.chart()) return Scalar(target);
  if (!same_chart(target, f.chart()) && !target->extends(*f.chart()))
    throw ChartMismatch("replacement chart does not extend the chart of the substituted scalar");
  const Chart& src = *f.chart();
  const std::size_t np = src.n_poly_slots();
  std::vector<const Scalar*> by_slot(np, nullptr);
  for (const auto& [sym, value] : replacements) {
    if (sym.kind != SymbolKind::kCoordinate && sym.kind != SymbolKind::kParameter)
      throw ExpressionError("only coordinates and parameters can be substituted");
    by_slot[src.poly_slot(sym)] = &value;
  }
  std::vector<std::vector<Scalar>> powers(np);
  auto power = [&](std::size_t slot, int e) -> const Scalar& {
    auto& cache = powers[slot];
    if (cache.empty()) cache.push_back(Scalar(target, Rational(1)));
    while (static_cast<int>(cache.size()) <= e) {
      Scalar v = lift(*by_slot[slot], target);
      cache.push_back(cache.back() * v);
    }
    return cache[static_cast<std::size_t>(e)];
  };
  ScalarBuilder b(target);
  for (const auto& t : f.terms()) {
    TermKey rest = t.key;
    Scalar factor(target, Rational(1));
    bool any = false;
    for (std::size_t i = 0; i < np; ++i) {
      if (by_slot[i] && rest[i] > 0) {
        factor *= power(i, rest[i]);
        rest[i] = 0;
        any = true;
      }
    }
    Scalar base = lift(Scalar::from_terms(f.chart(), {Term{rest, t.coeff}}), target);
    b.add(any ? base * factor : base);
  }
  return std::move(b).build();
}

Scalar substitute(const Scalar& f, const std::vector<std::pair<std::string, Scalar>>& replacements) {
  if (!f.chart()) return f;
  std::vector<std::pair<Symbol, Scalar>> resolved;
  resolved.reserve(replacements.size());
  for (const auto& [name, value] : replacements) resolved.emplace_back(f.chart()->lookup(name), value);
  return substitute(f, resolved);
}

Scalar average_over_angle(const Scalar& f, std::size_t angle) {
  if (f.is_zero()) return f;
  const std::size_t slot = f.chart()->n_poly_slots() + angle;
  ScalarBuilder b(f.chart());
  for (const auto& t : f.terms())
    if (t.key[slot] == 0) b.add(t.key, t.coeff);
  return std::move(b).build();
}

Scalar average_over_angle(const Scalar& f, std::string_view angle) {
  if (!f.chart()) return f;
  return average_over_angle(f, f.chart()->angle_index(angle));
}

Scalar average_of_running_integral(const Scalar& f, std::size_t angle) {
  if (f.is_zero()) return f;
  const Chart& chart = *f.chart();
  const std::size_t slot = chart.n_poly_slots() + angle;
  ScalarBuilder b(f.chart());
  for (const auto& t : f.terms()) {
    const int m = t.key[slot];
    TermKey k = t.key;
    if (m == 0) {  // mean of theta over the circle is pi
      k[chart.pi_slot()] += 1;
      b.add_trig(std::move(k), t.coeff);
      continue;
    }
    k[slot] = 0;
    if (key_is_sine(t.key)) {  // mean of (cos(r) - cos(m theta + r))/m
      k.back() = 0;
      b.add_trig(std::move(k), t.coeff / m);
    } else {  // mean of (sin(m theta + r) - sin(r))/m
      k.back() = 1;
      b.add_trig(std::move(k), -t.coeff / m);
    }
  }
  return std::move(b).build();
}

Scalar integrate_unit_interval(const Scalar& f, const Symbol& t) {
  if (f.is_zero()) return f;
  if (t.kind == SymbolKind::kAngle) {
    if (depends_on(f, t))
      throw NonPolynomialIntegrand("integrand depends trigonometrically on '" + f.chart()->symbol_name(t) + "'");
    return f;
  }
  if (t.kind == SymbolKind::kPi) throw ExpressionError("cannot integrate over pi");
  const std::size_t slot = f.chart()->poly_slot(t);
  ScalarBuilder b(f.chart());
  for (const auto& term : f.terms()) {
    TermKey k = term.key;
    const int e = k[slot];
    k[slot] = 0;
    b.add(k, term.coeff / (e + 1));
  }
  return std::move(b).build();
}

Scalar integrate_unit_interval(const Scalar& f, std::string_view t) {
  if (!f.chart()) return f;
  return integrate_unit_interval(f, f.chart()->lookup(t));
}

bool is_identically_zero(const Scalar& f) { return f.is_zero(); }

bool depends_on(const Scalar& f, const Symbol& s) {
  if (f.is_zero()) return false;
  const Chart& chart = *f.chart();
  const std::size_t slot = s.kind == SymbolKind::kAngle ? chart.n_poly_slots() + s.index : chart.poly_slot(s);
  return std::any_of(f.terms().begin(), f.terms().end(), [slot](const Term& t) { return t.key[slot] != 0; });
}

double evaluate(const Scalar& f, const std::vector<double>& poly, const std::vector<double>& angles) {
  if (f.is_zero()) return 0.0;
  const Chart& chart = *f.chart();
  const std::size_t np = chart.n_poly_slots();
  if (poly.size() != np - 1 || angles.size() != chart.n_angles())
    throw ExpressionError("evaluation point has wrong dimension");
  double total = 0.0;
  for (const auto& t : f.terms()) {
    double v = t.coeff.get_d();
    for (std::size_t i = 0; i + 1 < np; ++i)
      if (t.key[i] != 0) v *= std::pow(poly[i], t.key[i]);
    if (t.key[np - 1] != 0) v *= std::pow(std::numbers::pi, t.key[np - 1]);
    double phase = 0.0;
    for (std::size_t j = 0; j < angles.size(); ++j) phase += t.key[np + j] * angles[j];
    v *= key_is_sine(t.key) ? std::sin(phase) : std::cos(phase);
    total += v;
  }
  return total;
}

std::string to_string(const Scalar& f) {
  if (f.is_zero()) return "0";
  const Chart& chart = *f.chart();
  const std::size_t np = chart.n_poly_slots();
  std::ostringstream out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::vector<std::string> factors;
    for (std::size_t i = 0; i < np; ++i) {
      if (t.key[i] == 0) continue;
      std::string name = i == chart.pi_slot()    ? std::string("pi")
                         : i < chart.dimension() ? chart.coordinate_name(i)
                                                 : chart.parameters()[i - chart.dimension()];
      if (t.key[i] > 1) name += "^" + std::to_string(t.key[i]);
      factors.push_back(std::move(name));
    }
    std::string arg;
    for (std::size_t j = 0; j < chart.n_angles(); ++j) {
      const int m = t.key[np + j];
      if (m == 0) continue;
      if (!arg.empty())
        arg += m > 0 ? " + " : " - ";
      else if (m < 0)
        arg += "-";
      const int a = std::abs(m);
      if (a != 1) arg += std::to_string(a) + "*";
      arg += chart.angles()[j];
    }
    if (!arg.empty()) factors.push_back((key_is_sine(t.key) ? "sin(" : "cos(") + arg + ")");

    Rational c = t.coeff;
    if (first) {
      if (sgn(c) < 0) out << "-";
    } else {
      out << (sgn(c) < 0 ? " - " : " + ");
    }
    first = false;
    c = abs(c);
    bool need_star = false;
    if (factors.empty() || c != 1) {
      out << c.get_str();
      need_star = true;
    }
    for (const auto& fac : factors) {
      if (need_star) out << "*";
      out << fac;
      need_star = true;
    }
  }
  return out.str();
}

}  // namespace hbkit::symcalc
