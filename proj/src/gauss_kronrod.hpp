#pragma once

// Globally adaptive 15-point Gauss-Kronrod integration (7-point Gauss rule
// embedded for the error estimate), QUADPACK-style error scaling. Internal to
// the oracle; not part of the installed headers.

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace nmoments::detail {

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  double abs_integral = 0.0;  // estimate of the integral of |f|
  std::size_t evaluations = 0;
  bool converged = false;
};

struct QuadControl {
  double abs_tolerance = 0.0;
  double rel_tolerance = 1e-12;  // relative to the integral of |f|
  int max_depth = 60;
  std::size_t max_intervals = 20000;
};

namespace gk15 {

inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for nodes 1, 3, 5 and the centre.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class T>
struct Segment {
  double a = 0.0;
  double b = 0.0;
  T value{};
  double error = 0.0;
  double abs_value = 0.0;
  int depth = 0;
};

template <class T, class F>
Segment<T> rule(F& f, double a, double b, int depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  std::array<T, 7> f1{};
  std::array<T, 7> f2{};
  const T fc = f(centre);
  T resk = fc * kKronrodWeights[7];
  T resg = fc * kGaussWeights[3];
  double resabs = std::abs(fc) * kKronrodWeights[7];
  for (std::size_t i = 0; i < 7; ++i) {
    const double dx = half * kNodes[i];
    f1[i] = f(centre - dx);
    f2[i] = f(centre + dx);
    resk += kKronrodWeights[i] * (f1[i] + f2[i]);
    resabs += kKronrodWeights[i] * (std::abs(f1[i]) + std::abs(f2[i]));
    if (i % 2 == 1) resg += kGaussWeights[i / 2] * (f1[i] + f2[i]);
  }

  const T mean = resk * 0.5;
  double resasc = kKronrodWeights[7] * std::abs(fc - mean);
  for (std::size_t i = 0; i < 7; ++i) {
    resasc += kKronrodWeights[i] * (std::abs(f1[i] - mean) + std::abs(f2[i] - mean));
  }

  const double scale = std::fabs(half);
  resabs *= scale;
  resasc *= scale;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > DBL_MIN / (50.0 * DBL_EPSILON)) {
    err = std::max(50.0 * DBL_EPSILON * resabs, err);
  }
  return {a, b, resk * half, err, resabs, depth};
}

}  // namespace gk15

/// Integrates f over [a, b], always bisecting the segment with the largest
/// error estimate. Stops once the summed error is within
/// max(abs_tolerance, rel_tolerance * integral of |f|). Segments at max_depth
/// are frozen with their current estimate.
template <class F>
auto integrate(F f, double a, double b, const QuadControl& ctl = {})
    -> QuadResult<decltype(f(a))> {
  using T = decltype(f(a));
  using Seg = gk15::Segment<T>;
  auto by_error = [](const Seg& x, const Seg& y) { return x.error < y.error; };

  QuadResult<T> out;
  if (a == b) {
    out.converged = true;
    return out;
  }

  std::vector<Seg> heap{gk15::rule<T>(f, a, b, 0)};
  std::vector<Seg> frozen;
  out.evaluations = 15;
  double total_err = heap.front().error;
  double total_abs = heap.front().abs_value;

  auto resum = [&] {
    total_err = 0.0;
    total_abs = 0.0;
    for (const auto* v : {&heap, &frozen}) {
      for (const auto& s : *v) {
        total_err += s.error;
        total_abs += s.abs_value;
      }
    }
  };
  auto target = [&] { return std::max(ctl.abs_tolerance, ctl.rel_tolerance * total_abs); };

  for (;;) {
    if (total_err <= target()) {
      resum();
      if (total_err <= target()) {
        out.converged = true;
        break;
      }
    }
    if (heap.empty() || heap.size() + frozen.size() >= ctl.max_intervals) break;

    std::pop_heap(heap.begin(), heap.end(), by_error);
    Seg worst = heap.back();
    heap.pop_back();
    if (worst.depth >= ctl.max_depth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Seg left = gk15::rule<T>(f, worst.a, mid, worst.depth + 1);
    Seg right = gk15::rule<T>(f, mid, worst.b, worst.depth + 1);
    out.evaluations += 30;
    total_err += left.error + right.error - worst.error;
    total_abs += left.abs_value + right.abs_value - worst.abs_value;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  resum();
  // Sum in interval order so mirrored integrands give mirrored results.
  std::vector<Seg> all = heap;
  all.insert(all.end(), frozen.begin(), frozen.end());
  std::sort(all.begin(), all.end(), [](const Seg& x, const Seg& y) { return x.a < y.a; });
  for (const auto& s : all) out.value += s.value;
  out.error = total_err;
  out.abs_integral = total_abs;
  return out;
}

}  // namespace nmoments::detail
