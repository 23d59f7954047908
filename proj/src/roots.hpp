#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/tools/toms748_solve.hpp>

#include "chemeq/equilibrium.hpp"
#include "chemeq/shock.hpp"

namespace chemeq::detail {

// Evaluates f, mapping an inner solver failure to "no value".
template <class F>
std::optional<double> try_eval(F& f, double x) {
  try {
    const double v = f(x);
    if (std::isfinite(v)) return v;
  } catch (const SolverError&) {
  }
  return std::nullopt;
}

/// Root of f on [lo, hi]. When the end points do not bracket a sign change,
/// the ascending `scan` points are tried and the first sign change is used.
template <class F>
double bracketed_root(F& f, double lo, double hi, std::vector<double> scan, const std::string& what) {
  auto fa = try_eval(f, lo);
  auto fb = try_eval(f, hi);
  double a = lo, b = hi;
  if (!(fa && fb && (*fa) * (*fb) <= 0.0)) {
    scan.push_back(lo);
    scan.push_back(hi);
    std::sort(scan.begin(), scan.end());
    scan.erase(std::unique(scan.begin(), scan.end()), scan.end());
    std::vector<std::optional<double>> vals;
    for (double x : scan) vals.push_back(try_eval(f, x));
    bool found = false;
    for (std::size_t i = 0; i + 1 < scan.size() && !found; ++i) {
      if (vals[i] && vals[i + 1] && (*vals[i]) * (*vals[i + 1]) <= 0.0) {
        a = scan[i];
        b = scan[i + 1];
        fa = vals[i];
        fb = vals[i + 1];
        found = true;
      }
    }
    if (!found) {
      std::string diag = what + ": no sign change found; scanned";
      char buf[64];
      for (std::size_t i = 0; i < scan.size(); ++i) {
        if (vals[i]) {
          std::snprintf(buf, sizeof buf, " %.6g:%.3e", scan[i], *vals[i]);
        } else {
          std::snprintf(buf, sizeof buf, " %.6g:fail", scan[i]);
        }
        diag += buf;
      }
      throw ShockError(diag);
    }
  }
  if (*fa == 0.0) return a;
  if (*fb == 0.0) return b;

  auto g = [&](double x) {
    try {
      return f(x);
    } catch (const SolverError& err) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " (trial %.17g)", x);
      throw ShockError(what + ": " + err.what() + buf);
    }
  };
  std::uintmax_t max_iter = 200;
  const auto r = boost::math::tools::toms748_solve(g, a, b, *fa, *fb, boost::math::tools::eps_tolerance<double>(52),
                                                   max_iter);
  return 0.5 * (r.first + r.second);
}

}  // namespace chemeq::detail
