#include "dqkit/fedosov/fedosov.hpp"

#include <stdexcept>

namespace dqkit {

namespace {

WeylKey key_with(std::initializer_list<int> y, std::uint8_t form) {
  WeylKey k;
  for (int i : y) ++k.y[static_cast<std::size_t>(i)];
  k.form = form;
  return k;
}

std::uint8_t bit(int i) { return static_cast<std::uint8_t>(1u << i); }

WeylT build_gamma_bar(const WeylT::Structure& s, int maxw, const SymTensor3& g) {
  // (1/2) omega_{lk} Gamma^k_{ij} = -(1/2) G_{ijl}
  const int n = s->dim();
  WeylT out(s, maxw, TrigPoly(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        if (!g(i, j, l).is_zero()) out.add_term(key_with({l, j}, bit(i)), g(i, j, l) * Rational(-1, 2));
  return out;
}

WeylT build_r_bar(const WeylT::Structure& s, int maxw, const TorusConnection& c) {
  const int n = s->dim();
  auto curv = curvature(c);
  Tensor<TrigPoly> low = lowered_curvature(c, curv.riemann);  // omega_{ri} R^r_{jkl}
  WeylT out(s, maxw, TrigPoly(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          if (k == l || low(i, j, k, l).is_zero()) continue;
          // omega_{ir} = -omega_{ri}; dx^k ^ dx^l = -dx^l ^ dx^k for k > l
          Rational f(k < l ? -1 : 1, 4);
          out.add_term(key_with({i, j}, static_cast<std::uint8_t>(bit(k) | bit(l))), low(i, j, k, l) * f);
        }
  return out;
}

WeylT build_omega(const WeylT::Structure& s, int maxw, const std::vector<CentralTerm>& terms) {
  const int n = s->dim();
  WeylT out(s, maxw, TrigPoly(n));
  for (const auto& t : terms) {
    if (t.nu_power < 1) throw std::invalid_argument("central 2-form must start at order nu^1");
    if (t.form.size() != n) throw std::invalid_argument("central 2-form has the wrong size");
    for (int k = 0; k < n; ++k)
      for (int l = 0; l < n; ++l)
        if (!(t.form(k, l) == -t.form(l, k))) throw std::invalid_argument("central 2-form is not antisymmetric");
    for (int k = 0; k < n; ++k)
      for (int l = k + 1; l < n; ++l) {
        WeylKey key;
        key.form = static_cast<std::uint8_t>(bit(k) | bit(l));
        key.nu = static_cast<std::int8_t>(t.nu_power);
        out.add_term(key, t.form(k, l));
      }
  }
  if (!out.exterior_derivative().is_zero()) throw std::invalid_argument("central 2-form is not closed");
  return out;
}

}  // namespace

WeylKey weyl_key(std::initializer_list<int> y, std::uint8_t form, int nu) {
  WeylKey k = key_with(y, form);
  k.nu = static_cast<std::int8_t>(nu);
  return k;
}

FedosovConnection::FedosovConnection(FedosovInput in)
    : in_(std::move(in)),
      s_(std::make_shared<const SymplecticStructure>(in_.structure)),
      conn_(torus_connection(in_.structure, in_.gamma)),
      gamma_bar_(build_gamma_bar(s_, in_.max_wdeg + 2, in_.gamma)),
      r_bar_(build_r_bar(s_, in_.max_wdeg + 2, conn_)),
      omega_(build_omega(s_, in_.max_wdeg + 2, in_.omega)) {
  if (in_.max_wdeg < 3) throw std::invalid_argument("W-degree budget must be at least 3");
  solve();
}

WeylT FedosovConnection::partial(const WeylT& a) const {
  return a.exterior_derivative() + commutator_over_nu(gamma_bar_, a);
}

WeylT FedosovConnection::r() const {
  WeylT s = empty();
  for (const auto& c : r_) s += c;
  return s;
}

WeylT FedosovConnection::fedosov_derivative(const WeylT& a) const {
  return partial(a) - a.delta() + commutator_over_nu(r(), a);
}

void FedosovConnection::solve() {
  const int D = in_.max_wdeg;
  r_.assign(static_cast<std::size_t>(D) + 1, empty());
  r_[3] = (r_bar_ - omega_.homogeneous(2)).delta_inverse().homogeneous(3).truncated(D);
  for (int d = 4; d <= D; ++d) {
    WeylT x = partial(r_[d - 1]) - omega_.homogeneous(d - 1);
    // (1/nu) sum r^(a) o r^(b) over a + b = d + 1, written through the symmetric commutator.
    WeylT quad = empty();
    for (int a = 3; a <= d - 2; ++a) quad += commutator_over_nu(r_[a], r_[d + 1 - a]);
    x += quad * Rational(1, 2);
    r_[d] = x.delta_inverse().homogeneous(d).truncated(D);
  }
}

WeylT FedosovConnection::flatness_residual() const {
  WeylT rr = r();
  WeylT res = r_bar_.truncated(in_.max_wdeg) + partial(rr) - rr.delta() + commutator_over_nu(rr, rr) * Rational(1, 2) -
              omega_.truncated(in_.max_wdeg);
  return res.truncated(in_.max_wdeg - 1);
}

StarEvaluator::StarEvaluator(FedosovInput in, int nu_order) : fed_(std::move(in)), order_(nu_order) {
  if (nu_order < 0 || 2 * nu_order + 2 > fed_.max_wdeg())
    throw std::invalid_argument("nu order exceeds the W-degree budget: need N <= (D - 2) / 2");
}

std::vector<WeylT> StarEvaluator::lift_through(const TrigPoly& f, int depth) const {
  const int D = fed_.max_wdeg();
  const auto& r = fed_.r_components();
  std::vector<WeylT> q(static_cast<std::size_t>(depth) + 1, fed_.empty());
  q[0].add_term(WeylKey{}, f);
  for (int k = 0; k < depth; ++k) {
    WeylT y = fed_.partial(q[k]);
    for (int l = 1; l <= k - 1; ++l) y += commutator_over_nu(r[l + 2], q[k - l]);
    q[k + 1] = y.delta_inverse().homogeneous(k + 1).truncated(D);
  }
  return q;
}

const std::vector<WeylT>& StarEvaluator::lift_components(const TrigPoly& f) {
  std::string key = f.to_string();
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  // sigma(QF o QG) through nu^N only reads components of W-degree <= 2N
  return cache_.emplace(std::move(key), lift_through(f, 2 * order_)).first->second;
}

WeylT StarEvaluator::lift(const TrigPoly& f) const {
  WeylT s = fed_.empty();
  for (const auto& c : lift_through(f, fed_.max_wdeg())) s += c;
  return s;
}

NuSeries<TrigPoly> StarEvaluator::star(const TrigPoly& f, const TrigPoly& g) {
  const auto& qf = lift_components(f);
  const auto& qg = lift_components(g);
  WeylT a = fed_.empty(), b = fed_.empty();
  for (const auto& c : qf) a += c;
  for (const auto& c : qg) b += c;
  return symbol_of_product(a, b, order_);
}

NuSeries<TrigPoly> StarEvaluator::star(const NuSeries<TrigPoly>& f, const NuSeries<TrigPoly>& g) {
  NuSeries<TrigPoly> out(std::min({order_, f.truncation() + std::max(0, g.min_order()),
                                   g.truncation() + std::max(0, f.min_order())}));
  for (const auto& [kf, cf] : f.terms())
    for (const auto& [kg, cg] : g.terms()) {
      if (kf + kg > out.truncation()) continue;
      const NuSeries<TrigPoly> p = star(cf, cg);
      for (const auto& [k, c] : p.terms()) out.add(k + kf + kg, c);
    }
  return out;
}

TrigPoly StarEvaluator::coefficient(int r, const TrigPoly& f, const TrigPoly& g) {
  if (r < 0 || r > order_) throw std::invalid_argument("requested coefficient beyond the nu order");
  return star(f, g).coefficient(r);
}

bool StarEvaluator::truncation_stable(const TrigPoly& f, const TrigPoly& g) const {
  FedosovInput in = fed_.input();
  StarEvaluator lo(in, order_);
  in.max_wdeg += 2;
  StarEvaluator hi(in, order_);
  return lo.star(f, g) == hi.star(f, g);
}

}  // namespace dqkit
