#include "dqkit/fedosov/trace.hpp"

#include <stdexcept>

namespace dqkit {

TrigPoly poisson_bracket(const SymplecticStructure& s, const TrigPoly& f, const TrigPoly& g) {
  const int n = s.dim();
  TrigPoly out(n);
  for (int i = 0; i < n; ++i) {
    TrigPoly fi = f.derive(i);
    if (fi.is_zero()) continue;
    for (int j = 0; j < n; ++j)
      if (sgn(s.lambda(i, j)) != 0) out += fi * g.derive(j) * s.lambda(i, j);
  }
  return out;
}

TrigPoly s3_cocycle(const TorusConnection& c, const TrigPoly& f, const TrigPoly& g) {
  auto curv = curvature(c);
  return triple_contraction(c.lambda(), lie_derivative_connection(c, curv, f), lie_derivative_connection(c, curv, g));
}

NuSeries<TrigPoly> truncated_star3(const TorusConnection& c, const TrigPoly& f, const TrigPoly& g) {
  const int n = c.dim();
  const auto& L = c.lambda();
  auto hf = second_cov_deriv(c, Tensor<TrigPoly>(0, n, f));
  auto hg = second_cov_deriv(c, Tensor<TrigPoly>(0, n, g));
  TrigPoly c2(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (L(a, b).is_zero()) continue;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          if (!L(p, q).is_zero()) c2 += hf(a, p) * hg(b, q) * L(a, b) * L(p, q);
    }
  TrigPoly c1(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!L(i, j).is_zero()) c1 += f.derive(i) * g.derive(j) * L(i, j);
  NuSeries<TrigPoly> out(3);
  out.add(0, f * g);
  out.add(1, c1 * Rational(1, 2));
  out.add(2, c2 * Rational(1, 8));
  out.add(3, s3_cocycle(c, f, g) * Rational(1, 48));
  return out;
}

NuSeries<TrigPoly> trace_density_order2(const TorusConnection& c) {
  const int n = c.dim();
  NuSeries<TrigPoly> rho(TrigPoly::constant(n, Gaussian(1)), 2);
  rho.add(2, cahen_gutt_momentum(c) * Rational(-1, 24));
  return rho;
}

NuSeries<TrigPoly> trace_density_order2(const StarEvaluator& se) {
  return trace_density_order2(se.fedosov().connection());
}

std::vector<Rational> commutator_trace(StarEvaluator& se, const NuSeries<TrigPoly>& rho, const TrigPoly& f,
                                       const TrigPoly& g) {
  const auto& s = se.fedosov().input().structure;
  NuSeries<TrigPoly> comm = se.star(f, g) - se.star(g, f);
  const int N = se.nu_order();
  std::vector<Rational> out(static_cast<std::size_t>(N) + 1, Rational(0));
  for (int k = 0; k <= N; ++k)
    for (int j = 0; j <= k && j <= rho.truncation(); ++j) {
      TrigPoly rj = rho.coefficient(j), cm = comm.coefficient(k - j);
      if (rj.is_zero() || cm.is_zero()) continue;
      out[static_cast<std::size_t>(k)] += volume_integral(rj * cm, s);
    }
  return out;
}

Rational trace_equation_residual(StarEvaluator& se, const NuSeries<TrigPoly>& rho, const TrigPoly& f,
                                 const TrigPoly& g, int k) {
  if (k < 0 || k + 1 > se.nu_order()) throw std::invalid_argument("trace equation needs the product through nu^{k+1}");
  return commutator_trace(se, rho, f, g)[static_cast<std::size_t>(k) + 1];
}

ClosingEquivalence::ClosingEquivalence(const TorusConnection& c) : mu_(cahen_gutt_momentum(c)) {
  TrigPoly centered = mu_ - TrigPoly::constant(c.dim(), mu_.mean());
  u_ = -poisson_solve(centered);
}

TrigPoly ClosingEquivalence::x2(const TrigPoly& f) const {
  TrigPoly out = f.zero();
  for (int j = 0; j < f.dim(); ++j) out += u_.derive(j) * f.derive(j);
  return out * Rational(1, 24);
}

TrigPoly ClosingEquivalence::x2_divergence() const { return flat_laplacian(u_) * Rational(1, 24); }

NuSeries<TrigPoly> ClosingEquivalence::apply(const NuSeries<TrigPoly>& f) const {
  NuSeries<TrigPoly> out = f;
  for (const auto& [k, c] : f.terms()) out.add(k + 2, x2(c));
  return out;
}

NuSeries<TrigPoly> ClosingEquivalence::apply_inverse(const NuSeries<TrigPoly>& f) const {
  NuSeries<TrigPoly> out = f, term = f;
  while (!term.is_zero() && term.min_order() + 2 <= f.truncation()) {
    NuSeries<TrigPoly> next(f.truncation());
    for (const auto& [k, c] : term.terms()) next.add(k + 2, -x2(c));
    term = next;
    out += term;
  }
  return out;
}

NuSeries<TrigPoly> ClosingEquivalence::conjugated_star(StarEvaluator& se, const TrigPoly& f, const TrigPoly& g) const {
  const int N = se.nu_order();
  return apply_inverse(se.star(apply(NuSeries<TrigPoly>(f, N)), apply(NuSeries<TrigPoly>(g, N))));
}

}  // namespace dqkit
