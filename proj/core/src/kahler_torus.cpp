#include "dqkit/kahler/kahler_torus.hpp"

#include <stdexcept>

namespace dqkit {

namespace {

EpsJet scale(const EpsJet& f, const Gaussian& z) {
  return f.map([&](const TrigPoly& x) { return x * z; });
}

// dz^a(e_j): 1 on x^a, i on x^{m+a}.
Gaussian frame(int m, int a, int j) {
  if (j == a) return Gaussian(1);
  if (j == m + a) return Gaussian::i();
  return Gaussian(0);
}

EpsJet determinant(const SquareMatrix<EpsJet>& a) {
  const int n = a.size();
  if (n == 1) return a(0, 0);
  EpsJet out = a(0, 0).zero();
  for (int c = 0; c < n; ++c) {
    SquareMatrix<EpsJet> minor(n - 1, a(0, 0).zero());
    for (int r = 1; r < n; ++r)
      for (int k = 0, kk = 0; k < n; ++k)
        if (k != c) minor(r - 1, kk++) = a(r, k);
    EpsJet t = a(0, c) * determinant(minor);
    if (c % 2 == 0)
      out += t;
    else
      out -= t;
  }
  return out;
}

}  // namespace

KahlerJetTorus::KahlerJetTorus(int m, TrigPoly phi, int order) : m_(m), order_(order), phi_(std::move(phi)) {
  if (m < 1 || m > 3) throw std::invalid_argument("complex dimension must be 1, 2 or 3");
  if (phi_.dim() != 2 * m) throw std::invalid_argument("potential lives on the wrong torus");
  if (!phi_.is_real()) throw std::invalid_argument("Kahler potential must be real");
  const int n = 2 * m;
  const EpsJet zero(order, TrigPoly(n)), one = zero.constant(Rational(1));

  EpsJet p = EpsJet::linear(order, TrigPoly(n), phi_);
  h_ = SquareMatrix<EpsJet>(m, zero);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      h_(a, b) = dz(a, dzbar(b, p));
      if (a == b) h_(a, b) += one;
    }
  hinv_ = matrix_inverse(h_, zero, one);

  // c(e_i, e_j) = h_{a bbar} dz^a(e_i) conj(dz^b(e_j))
  SquareMatrix<EpsJet> c(n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
          Gaussian w = frame(m, a, i) * frame(m, b, j).conj();
          if (!w.is_zero()) c(i, j) += scale(h_(a, b), w);
        }
  g_ = SquareMatrix<EpsJet>(n, zero);
  omega_ = SquareMatrix<EpsJet>(n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      g_(i, j) = c(i, j) + c(j, i);
      omega_(i, j) = scale(c(i, j) - c(j, i), Gaussian::i());
    }
  ginv_ = matrix_inverse(g_, zero, one);
}

EpsJet KahlerJetTorus::dz(int a, const EpsJet& f) const {
  return (f.derive(a) - scale(f.derive(m_ + a), Gaussian::i())) * Rational(1, 2);
}

EpsJet KahlerJetTorus::dzbar(int a, const EpsJet& f) const {
  return (f.derive(a) + scale(f.derive(m_ + a), Gaussian::i())) * Rational(1, 2);
}

Connection<EpsJet> KahlerJetTorus::levi_civita() const { return levi_civita_connection(g_, ginv_, omega_); }

Tensor<EpsJet> KahlerJetTorus::holomorphic_christoffel() const {
  const int n = dim(), m = m_;
  const EpsJet zero = g_(0, 0).zero();
  // hol(c, a, b) = Gamma^c_{ab} = sum_d d_a h_{b dbar} M(d, c)
  Tensor<EpsJet> hol(3, m, zero);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int d = 0; d < m; ++d) {
        EpsJet dh = dz(a, h_(b, d));
        if (dh.is_zero()) continue;
        for (int c = 0; c < m; ++c) hol(c, a, b) += dh * hinv_(d, c);
      }
  // nabla_{e_i} e_j = V^c d_c + conj = Re V^c e_c + Im V^c e_{m+c}
  Tensor<EpsJet> gamma(3, n, zero);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int c = 0; c < m; ++c) {
        EpsJet v = zero;
        for (int a = 0; a < m; ++a)
          for (int b = 0; b < m; ++b) {
            Gaussian w = frame(m, a, i) * frame(m, b, j);
            if (!w.is_zero() && !hol(c, a, b).is_zero()) v += scale(hol(c, a, b), w);
          }
        gamma(c, i, j) = v.map([](const TrigPoly& x) { return x.real_part(); });
        gamma(m + c, i, j) = v.map([](const TrigPoly& x) { return x.imag_part(); });
      }
  return gamma;
}

EpsJet KahlerJetTorus::laplacian(const EpsJet& f) const {
  EpsJet out = f.zero();
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      if (!hinv_(b, a).is_zero()) out += hinv_(b, a) * dz(a, dzbar(b, f));
  return out;
}

EpsJet KahlerJetTorus::scalar_curvature() const {
  EpsJet ld = log_relative(determinant(h_));
  EpsJet out = ld.zero();
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b) out -= hinv_(b, a) * dz(a, dzbar(b, ld));
  return out;
}

EpsJet KahlerJetTorus::scalar_curvature_from_connection() const {
  return ricci_trace(ginv_, curvature(levi_civita()).ricci) * Rational(1, 2);
}

LvMomentumCheck lv_momentum_check(const KahlerJetTorus& k) {
  auto lc = k.levi_civita();
  auto curv = curvature(lc);
  LvMomentumCheck out;
  out.pontryagin = pontryagin_scalar(lc, curv);
  out.mu = ricci_hessian_trace(lc, curv) + out.pontryagin;
  out.laplacian_term = k.laplacian(k.scalar_curvature()) * Rational(2);
  out.residual = out.mu - out.laplacian_term - out.pontryagin;
  return out;
}

}  // namespace dqkit
