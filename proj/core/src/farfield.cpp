#include "amlab/farfield.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>
#include <vector>

#include "amlab/reduce.hpp"

namespace amlab {

namespace {

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Gauss-Legendre rule on [-1, 1].
template <unsigned N>
Rule legendre() {
  static_assert(N % 2 == 0);
  using G = boost::math::quadrature::gauss<double, N>;
  Rule r;
  const auto& a = G::abscissa();
  const auto& w = G::weights();
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.x.push_back(-a[i]);
    r.w.push_back(w[i]);
    r.x.push_back(a[i]);
    r.w.push_back(w[i]);
  }
  return r;
}

constexpr int kOrder = FarFieldModel::kOrder;
constexpr int kTerms = kOrder + 1;

constexpr int pow3(int l) { return l == 0 ? 1 : 3 * pow3(l - 1); }

// Derivatives d_{a1..an} (1/r) for n = 1..kOrder+1, flattened with a1 slowest.
struct Derivs {
  std::array<std::array<double, pow3(kOrder + 1)>, kOrder + 2> t{};
};

Derivs derivs(const Vec3& x) {
  const double r2 = dot(x, x);
  const double r = std::sqrt(r2);
  const double i1 = 1.0 / r;
  const double i3 = i1 / r2;
  const double i5 = i3 / r2;
  const double i7 = i5 / r2;
  const double i9 = i7 / r2;
  auto dl = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  Derivs d;
  d.t[0][0] = i1;
  for (int a = 0; a < 3; ++a) {
    d.t[1][a] = -x[a] * i3;
    for (int b = 0; b < 3; ++b) {
      d.t[2][3 * a + b] = 3.0 * x[a] * x[b] * i5 - dl(a, b) * i3;
      for (int c = 0; c < 3; ++c) {
        d.t[3][9 * a + 3 * b + c] =
            -15.0 * x[a] * x[b] * x[c] * i7 +
            3.0 * (x[a] * dl(b, c) + x[b] * dl(a, c) + x[c] * dl(a, b)) * i5;
        for (int e = 0; e < 3; ++e) {
          d.t[4][27 * a + 9 * b + 3 * c + e] =
              105.0 * x[a] * x[b] * x[c] * x[e] * i9 -
              15.0 *
                  (x[a] * x[b] * dl(c, e) + x[a] * x[c] * dl(b, e) + x[a] * x[e] * dl(b, c) +
                   x[b] * x[c] * dl(a, e) + x[b] * x[e] * dl(a, c) + x[c] * x[e] * dl(a, b)) *
                  i7 +
              3.0 * (dl(a, b) * dl(c, e) + dl(a, c) * dl(b, e) + dl(a, e) * dl(b, c)) * i5;
        }
      }
    }
  }
  return d;
}

constexpr double kFact[kTerms] = {1.0, 1.0, 2.0, 6.0};

// E and B contributions of each multipole order l; both are homogeneous of degree -(l + 2).
void field_terms(const FarFieldModel& m, const Vec3& r, std::array<Vec3, kTerms>& E,
                 std::array<Vec3, kTerms>& B) {
  const Derivs d = derivs(r);
  for (int l = 0; l < kTerms; ++l) {
    const int n = pow3(l);
    const double s = (l % 2 ? -1.0 : 1.0) / kFact[l];
    const auto& T = d.t[l + 1];  // index k * 3^l + flat(a)
    const auto& M = m.charge_moments[l];
    const auto& N = m.current_moments[l];
    Vec3 e;
    Vec3 dA[3];  // dA[mm][i] = d_mm A_i
    for (int k = 0; k < 3; ++k) {
      double se = 0.0;
      for (int a = 0; a < n; ++a) se += M[a] * T[k * n + a];
      e[k] = -s * se;
      for (int i = 0; i < 3; ++i) {
        double sa = 0.0;
        for (int a = 0; a < n; ++a) sa += N[i * n + a] * T[k * n + a];
        dA[k][i] = s * sa / m.c;
      }
    }
    E[l] = e;
    B[l] = {dA[1][2] - dA[2][1], dA[2][0] - dA[0][2], dA[0][1] - dA[1][0]};
  }
}

// Homogeneous pieces of the two integrands at offset r from the center; only
// pieces decaying faster than r^-3 are kept.
struct Pieces {
  std::vector<std::pair<int, Vec3>> angular;
  std::vector<std::pair<int, Vec3>> linear;
};

Pieces pieces(const FarFieldModel& m, const Vec3& r) {
  std::array<Vec3, kTerms> E;
  std::array<Vec3, kTerms> B;
  field_terms(m, r, E, B);
  Pieces p;
  for (int a = 0; a < kTerms; ++a) {
    for (int b = 0; b < kTerms; ++b) {
      const Vec3 exb = cross(E[a], B[b]);
      const int d = a + b + 4;
      if (d - 1 > 3) p.angular.emplace_back(d - 1, cross(r, exb));
      p.angular.emplace_back(d, cross(m.center, exb));
      p.linear.emplace_back(d, exb);
    }
  }
  return p;
}

double smooth_step(double r, double r0, double r1) {
  if (r <= r0) return 0.0;
  if (r >= r1) return 1.0;
  const double t = (r - r0) / (r1 - r0);
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

// integral_0^inf w(r) r^(2-d) dr for d > 3.
double radial(int d, double r0, double r1) {
  using G = boost::math::quadrature::gauss<double, 30>;
  constexpr int panels = 16;
  double s = 0.0;
  const double width = (r1 - r0) / panels;
  for (int k = 0; k < panels; ++k) {
    const double a = r0 + k * width;
    s += G::integrate(
        [&](double r) { return smooth_step(r, r0, r1) * std::pow(r, 2.0 - d); }, a, a + width);
  }
  return s + std::pow(r1, 3.0 - d) / (d - 3.0);
}

}  // namespace

FarFieldModel far_field_model(const ScalarField& rho, const VectorField& j, double c) {
  rho.require_same_grid(j);
  const Grid3& g = rho.grid();
  FarFieldModel m;
  m.c = c;
  const double abs_q = integrate_fn(g, [&](std::size_t i, const Vec3&) { return std::abs(rho(0, i)); });
  if (abs_q > 0.0) {
    m.center = integrate_vec(g, [&](std::size_t i, const Vec3& x) { return std::abs(rho(0, i)) * x; }) /
               abs_q;
  }
  const Vec3 c0 = m.center;

  // Moments are symmetric in the position indices, so only sorted index tuples
  // are integrated.
  for (int l = 0; l < kTerms; ++l) {
    const int n = pow3(l);
    m.charge_moments[l].assign(n, 0.0);
    m.current_moments[l].assign(3 * n, 0.0);
    for (int f = 0; f < n; ++f) {
      std::array<int, kOrder> idx{};
      for (int q = l - 1, v = f; q >= 0; --q, v /= 3) idx[q] = v % 3;
      std::array<int, kOrder> sorted = idx;
      std::sort(sorted.begin(), sorted.begin() + l);
      int fs = 0;
      for (int q = 0; q < l; ++q) fs = 3 * fs + sorted[q];
      if (fs != f) {
        m.charge_moments[l][f] = m.charge_moments[l][fs];
        for (int i = 0; i < 3; ++i) m.current_moments[l][i * n + f] = m.current_moments[l][i * n + fs];
        continue;
      }
      auto weight = [&](const Vec3& x) {
        const Vec3 r = x - c0;
        double w = 1.0;
        for (int q = 0; q < l; ++q) w *= r[idx[q]];
        return w;
      };
      m.charge_moments[l][f] =
          integrate_fn(g, [&](std::size_t i, const Vec3& x) { return rho(0, i) * weight(x); });
      const Vec3 jn =
          integrate_vec(g, [&](std::size_t i, const Vec3& x) { return weight(x) * at(j, i); });
      for (int i = 0; i < 3; ++i) m.current_moments[l][i * n + f] = jn[i];
    }
  }

  m.charge = m.charge_moments[0][0];
  for (int a = 0; a < 3; ++a) {
    m.dipole[a] = m.charge_moments[1][a];
    m.current[a] = m.current_moments[0][a];
  }
  double tr = 0.0;
  for (int a = 0; a < 3; ++a) tr += m.charge_moments[2][4 * a];
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      m.quadrupole[a][b] = 3.0 * m.charge_moments[2][3 * a + b] - (a == b ? tr : 0.0);
    }
  }
  // mu_k = (1/2c) eps_kab integral r_a j_b, with N_{b,a} = integral j_b r_a.
  const auto& N1 = m.current_moments[1];
  m.magnetic_moment = Vec3{N1[3 * 2 + 1] - N1[3 * 1 + 2], N1[3 * 0 + 2] - N1[3 * 2 + 0],
                           N1[3 * 1 + 0] - N1[3 * 0 + 1]} /
                      (2.0 * c);
  return m;
}

Vec3 far_E(const FarFieldModel& m, const Vec3& x) {
  std::array<Vec3, kTerms> E;
  std::array<Vec3, kTerms> B;
  field_terms(m, x - m.center, E, B);
  Vec3 s;
  for (const auto& v : E) s += v;
  return s;
}

Vec3 far_B(const FarFieldModel& m, const Vec3& x) {
  std::array<Vec3, kTerms> E;
  std::array<Vec3, kTerms> B;
  field_terms(m, x - m.center, E, B);
  Vec3 s;
  for (const auto& v : B) s += v;
  return s;
}

FieldTail field_tail(const FarFieldModel& m, const Grid3& grid) {
  FieldTail out;
  const Vec3 lo = grid.lower_corner();
  const Vec3 hi = grid.upper_corner();
  double D = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 3; ++a) D = std::min({D, m.center[a] - lo[a], hi[a] - m.center[a]});
  if (!(D > 0.0)) return out;
  out.r_inner = 0.45 * D;
  out.r_outer = 0.95 * D;
  out.applied = true;

  // Whole-space integral of w f_far, term by term.
  static const Rule mu = legendre<24>();
  constexpr int n_phi = 48;
  std::vector<std::pair<int, Vec3>> ang_terms;
  std::vector<std::pair<int, Vec3>> lin_terms;
  for (std::size_t i = 0; i < mu.x.size(); ++i) {
    const double ct = mu.x[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int k = 0; k < n_phi; ++k) {
      const double ph = 2.0 * std::numbers::pi * k / n_phi;
      const Vec3 u{st * std::cos(ph), st * std::sin(ph), ct};
      const double w = mu.w[i] * 2.0 * std::numbers::pi / n_phi;
      const Pieces p = pieces(m, u);
      if (ang_terms.empty()) {
        for (const auto& t : p.angular) ang_terms.emplace_back(t.first, Vec3{});
        for (const auto& t : p.linear) lin_terms.emplace_back(t.first, Vec3{});
      }
      for (std::size_t t = 0; t < p.angular.size(); ++t) ang_terms[t].second += w * p.angular[t].second;
      for (std::size_t t = 0; t < p.linear.size(); ++t) lin_terms[t].second += w * p.linear[t].second;
    }
  }
  Vec3 whole_ang;
  Vec3 whole_lin;
  for (const auto& [d, v] : ang_terms) whole_ang += radial(d, out.r_inner, out.r_outer) * v;
  for (const auto& [d, v] : lin_terms) whole_lin += radial(d, out.r_inner, out.r_outer) * v;

  // The same integrand summed over the grid cells.
  const auto sum_pieces = [&](bool angular) {
    return integrate_vec(grid, [&](std::size_t, const Vec3& x) {
      const Vec3 r = x - m.center;
      const double w = smooth_step(norm(r), out.r_inner, out.r_outer);
      if (w == 0.0) return Vec3{};
      const Pieces p = pieces(m, r);
      Vec3 s;
      for (const auto& t : angular ? p.angular : p.linear) s += t.second;
      return w * s;
    });
  };
  const double pref = 1.0 / (4.0 * std::numbers::pi * m.c);
  out.angular = pref * (whole_ang - sum_pieces(true));
  out.linear = pref * (whole_lin - sum_pieces(false));
  return out;
}

}  // namespace amlab
