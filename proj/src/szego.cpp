#include "opuc/szego.hpp"

#include <cmath>
#include <sstream>

#include "opuc/errors.hpp"

namespace opuc {

PolynomialPair PolynomialPair::initial() {
  return PolynomialPair{{cd(1.0)}, {cd(1.0)}};
}

PolynomialPair advance(const PolynomialPair& pair, cd alpha) {
  if (std::abs(alpha) >= 1.0)
    throw DomainError("advance: Verblunsky coefficient must satisfy |alpha| < 1");
  const std::size_t n = pair.degree();
  PolynomialPair next;
  next.phi.assign(n + 2, cd(0.0));
  next.phi_star.assign(n + 2, cd(0.0));

  const cd abar = std::conj(alpha);
  // Phi_{n+1} = z Phi_n - conj(alpha) Phi_n^*
  for (std::size_t k = 0; k <= n; ++k) next.phi[k + 1] = pair.phi[k];
  for (std::size_t k = 0; k < pair.phi_star.size(); ++k)
    next.phi[k] -= abar * pair.phi_star[k];
  // Phi_{n+1}^* = Phi_n^* - z alpha Phi_n
  for (std::size_t k = 0; k < pair.phi_star.size(); ++k)
    next.phi_star[k] = pair.phi_star[k];
  for (std::size_t k = 0; k <= n; ++k)
    next.phi_star[k + 1] -= alpha * pair.phi[k];
  return next;
}

MonicPolynomial opuc_polynomial(const Schedule& schedule, std::size_t n, std::size_t N) {
  PolynomialPair pair = PolynomialPair::initial();
  for (std::size_t k = 0; k < n; ++k)
    pair = opuc::advance(pair, schedule.coefficient(k, N));
  return MonicPolynomial{pair.phi};
}

MonicPolynomial popuc_polynomial(const Schedule& schedule, std::size_t n, std::size_t N,
                      cd beta) {
  if (n < 1) throw DomainError("popuc: degree n >= 1 required");
  if (std::abs(std::abs(beta) - 1.0) > 1e-14)
    throw DomainError("popuc: |beta| = 1 required");
  PolynomialPair pair = PolynomialPair::initial();
  for (std::size_t k = 0; k + 1 < n; ++k)
    pair = opuc::advance(pair, schedule.coefficient(k, N));
  // Phi_n^{(beta)} = z Phi_{n-1} - conj(beta) Phi_{n-1}^*
  std::vector<cd> out(n + 1, cd(0.0));
  for (std::size_t k = 0; k < pair.phi.size(); ++k) out[k + 1] = pair.phi[k];
  const cd bbar = std::conj(beta);
  for (std::size_t k = 0; k < pair.phi_star.size(); ++k)
    out[k] -= bbar * pair.phi_star[k];
  return MonicPolynomial{std::move(out)};
}

cd evaluate(const MonicPolynomial& poly, cd z) {
  cd acc(0.0);
  for (std::size_t k = poly.coeffs.size(); k-- > 0;)
    acc = acc * z + poly.coeffs[k];
  return acc;
}

std::string coefficients_csv(const MonicPolynomial& poly) {
  std::ostringstream os;
  os.precision(17);
  os << "k,re,im\n";
  for (std::size_t k = 0; k < poly.coeffs.size(); ++k)
    os << k << "," << poly.coeffs[k].real() << "," << poly.coeffs[k].imag()
       << "\n";
  return os.str();
}

std::vector<cd> reverse_conjugate(const std::vector<cd>& coeffs) {
  std::vector<cd> out(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    out[k] = std::conj(coeffs[coeffs.size() - 1 - k]);
  return out;
}

double ScaledPairValue::log_abs_phi() const {
  return std::log(std::abs(phi)) + log_scale;
}

double ScaledPairValue::log_abs_phi_star() const {
  return std::log(std::abs(phi_star)) + log_scale;
}

namespace {

// Renormalize (v, w) by max(|v|, |w|) and fold the factor into log_scale.
void renormalize(cd& v, cd& w, double& log_scale) {
  double m = std::max(std::abs(v), std::abs(w));
  if (m == 0.0)
    throw DegenerateEvaluationError(
        "evaluate_pair_at: both components vanished");
  v /= m;
  w /= m;
  log_scale += std::log(m);
}

}  // namespace

ScaledPairValue evaluate_pair_at(const Schedule& schedule, std::size_t n,
                                 std::size_t N, cd z) {
  cd v(1.0), w(1.0);
  double log_scale = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cd alpha = schedule.coefficient(k, N);
    cd v_next = z * v - std::conj(alpha) * w;
    cd w_next = w - z * alpha * v;
    v = v_next;
    w = w_next;
    renormalize(v, w, log_scale);
  }
  return ScaledPairValue{v, w, log_scale};
}

ScaledPairValue evaluate_popuc_at(const Schedule& schedule, std::size_t n,
                                  std::size_t N, cd beta, cd z) {
  if (n < 1) throw DomainError("evaluate_popuc_at: n >= 1 required");
  if (std::abs(std::abs(beta) - 1.0) > 1e-14)
    throw DomainError("evaluate_popuc_at: |beta| = 1 required");
  ScaledPairValue p = evaluate_pair_at(schedule, n - 1, N, z);
  cd value = z * p.phi - std::conj(beta) * p.phi_star;
  return ScaledPairValue{value, value, p.log_scale};
}

PairTrace trace_pair(const Schedule& schedule, std::size_t n, std::size_t N,
                     cd z) {
  PairTrace trace;
  trace.phi.reserve(n + 1);
  trace.phi_star.reserve(n + 1);
  trace.log_scale.reserve(n + 1);
  cd v(1.0), w(1.0);
  double log_scale = 0.0;
  trace.phi.push_back(v);
  trace.phi_star.push_back(w);
  trace.log_scale.push_back(log_scale);
  for (std::size_t k = 0; k < n; ++k) {
    cd alpha = schedule.coefficient(k, N);
    cd v_next = z * v - std::conj(alpha) * w;
    cd w_next = w - z * alpha * v;
    v = v_next;
    w = w_next;
    renormalize(v, w, log_scale);
    trace.phi.push_back(v);
    trace.phi_star.push_back(w);
    trace.log_scale.push_back(log_scale);
  }
  return trace;
}

}  // namespace opuc
