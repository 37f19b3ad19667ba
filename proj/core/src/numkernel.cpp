#include "crosswise/numkernel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace crosswise::kernel {
namespace {

constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;  // log(sqrt(2*pi))
constexpr double kLn2Pi = 1.837877066409345483560659472811;      // log(2*pi)

// Godfrey's coefficients for g = 607/128.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoef = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5,
};

double lanczos_log_gamma(double x) {
  // Valid for x >= 0.5.
  const double xm1 = x - 1.0;
  double sum = kLanczosCoef[0];
  for (std::size_t i = 1; i < kLanczosCoef.size(); ++i) {
    sum += kLanczosCoef[i] / (xm1 + static_cast<double>(i));
  }
  const double t = xm1 + kLanczosG + 0.5;
  return kLnSqrt2Pi + (xm1 + 0.5) * std::log(t) - t + std::log(sum);
}

// log Gamma(x) - Stirling approximation, for x >= 10. The truncated
// asymptotic series is accurate to ~1e-17 there.
double log_gamma_correction(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12.0 +
              r2 * (-1.0 / 360.0 +
                    r2 * (1.0 / 1260.0 +
                          r2 * (-1.0 / 1680.0 +
                                r2 * (1.0 / 1188.0 + r2 * (-691.0 / 360360.0 + r2 * (1.0 / 156.0)))))));
}

// Stirling error: log(n!) - log(sqrt(2*pi*n) * (n/e)^n).
double stirling_error(double n) {
  if (n <= 15.0) {
    return log_gamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLnSqrt2Pi;
  }
  return log_gamma_correction(n);
}

// Deviance term x*log(x/np) + np - x, evaluated without cancellation near x = np.
double deviance_term(double x, double np) {
  if (std::abs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    if (std::abs(s) < std::numeric_limits<double>::min()) {
      return s;
    }
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2.0 * j + 1.0);
      if (s1 == s) {
        return s1;
      }
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

// Loader's saddle-point binomial density, log scale. x and n may be real.
double log_binom_density(double x, double n, double p, double q) {
  if (p == 0.0) {
    return x == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  if (q == 0.0) {
    return x == n ? 0.0 : -std::numeric_limits<double>::infinity();
  }
  if (x == 0.0) {
    if (n == 0.0) {
      return 0.0;
    }
    return p < 0.1 ? -deviance_term(n, n * q) - n * p : n * std::log(q);
  }
  if (x == n) {
    return q < 0.1 ? -deviance_term(n, n * p) - n * q : n * std::log(p);
  }
  if (x < 0.0 || x > n) {
    return -std::numeric_limits<double>::infinity();
  }
  const double lc = stirling_error(n) - stirling_error(x) - stirling_error(n - x) -
                    deviance_term(x, n * p) - deviance_term(n - x, n * q);
  const double lf = kLn2Pi + std::log(x) + std::log1p(-x / n);
  return lc - 0.5 * lf;
}

double log_beta_pdf(double a, double b, double x) {
  if (a <= 2.0 || b <= 2.0) {
    return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta(a, b);
  }
  return std::log(a + b - 1.0) + log_binom_density(a - 1.0, a + b - 2.0, x, 1.0 - x);
}

// x^a (1-x)^b / B(a,b), the prefactor of the continued fraction.
double beta_prefactor(double a, double b, double x) {
  return std::exp(log_beta_pdf(a, b, x) + std::log(x) + std::log1p(-x));
}

// Modified Lentz evaluation of the incomplete Beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-15;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kContinuedFractionCap; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) {
      return h;
    }
  }
  throw NumericError("incomplete Beta continued fraction did not converge for a=" +
                     std::to_string(a) + " b=" + std::to_string(b) + " x=" + std::to_string(x));
}

double inc_beta_value(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return beta_prefactor(a, b, x) * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - beta_prefactor(b, a, 1.0 - x) * beta_continued_fraction(b, a, 1.0 - x) / b;
}

// Starting point for the quantile iteration (Abramowitz & Stegun 26.5.22 for
// a, b >= 1; power-law tails otherwise).
double quantile_initial_guess(double a, double b, double p) {
  double x;
  if (a >= 1.0 && b >= 1.0) {
    const double pp = p < 0.5 ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(pp));
    double z = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
    if (p < 0.5) z = -z;
    const double al = (z * z - 3.0) / 6.0;
    const double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
    const double w = (z * std::sqrt(al + h) / h) -
                     (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
    x = a / (a + b * std::exp(2.0 * w));
  } else {
    const double lna = std::log(a / (a + b));
    const double lnb = std::log(b / (a + b));
    const double t = std::exp(a * lna) / a;
    const double u = std::exp(b * lnb) / b;
    const double w = t + u;
    if (p < t / w) {
      x = std::pow(a * w * p, 1.0 / a);
    } else {
      x = 1.0 - std::pow(b * w * (1.0 - p), 1.0 / b);
    }
  }
  if (!(x > 0.0 && x < 1.0)) {
    x = 0.5;
  }
  return x;
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || std::isinf(x)) {
    throw DomainError("log_gamma requires a positive finite argument");
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - lanczos_log_gamma(1.0 - x);
  }
  return lanczos_log_gamma(x);
}

double log_beta(double a, double b) {
  const double p = std::min(a, b);
  const double q = std::max(a, b);
  if (!(p > 0.0)) {
    throw DomainError("log_beta requires positive arguments");
  }
  if (p >= 10.0) {
    const double corr = log_gamma_correction(p) + log_gamma_correction(q) - log_gamma_correction(p + q);
    return -0.5 * std::log(q) + kLnSqrt2Pi + corr + (p - 0.5) * std::log(p / (p + q)) +
           q * std::log1p(-p / (p + q));
  }
  if (q >= 10.0) {
    const double corr = log_gamma_correction(q) - log_gamma_correction(p + q);
    return log_gamma(p) + corr + p - p * std::log(p + q) + (q - 0.5) * std::log1p(-p / (p + q));
  }
  return log_gamma(p) + log_gamma(q) - log_gamma(p + q);
}

double binom_pmf(std::int64_t n, std::int64_t z, Probability p) {
  if (n < 1) throw DomainError("binom_pmf: n must be positive");
  if ( z < 0 || z > n) {
    throw DomainError("binom_pmf: count " + std::to_string(z) + " outside [0, " + std::to_string(n) + "]");
  }
  return std::exp(log_binom_density(static_cast<double>(z), static_cast<double>(n), p.value(), p.complement()));
}

Probability binom_cdf(std::int64_t n, std::int64_t z, Probability p) {
  if (n < 1) throw DomainError("binom_cdf: n must be positive");
  if ( z < 0 || z > n) {
    throw DomainError("binom_cdf: count " + std::to_string(z) + " outside [0, " + std::to_string(n) + "]");
  }
  double sum = 0.0;
  for (std::int64_t i = 0; i <= z; ++i) {
    sum += binom_pmf(n, i, p);
  }
  return Probability(std::min(sum, 1.0));
}

double beta_pdf(const BetaParams& params, double x) {
  const double a = params.a();
  const double b = params.b();
  if (x < 0.0 || x > 1.0) return 0.0;
  if (x == 0.0) {
    if (a > 1.0) return 0.0;
    if (a < 1.0) return std::numeric_limits<double>::infinity();
    return b;
  }
  if (x == 1.0) {
    if (b > 1.0) return 0.0;
    if (b < 1.0) return std::numeric_limits<double>::infinity();
    return a;
  }
  return std::exp(log_beta_pdf(a, b, x));
}

Probability reg_inc_beta(const BetaParams& params, Probability x) {
  const double v = inc_beta_value(params.a(), params.b(), x.value());
  return Probability(std::clamp(v, 0.0, 1.0));
}

Probability inv_reg_inc_beta(const BetaParams& params, Probability p) {
  const double target = p.value();
  if (target == 0.0) return Probability(0.0);
  if (target == 1.0) return Probability(1.0);

  const double a = params.a();
  const double b = params.b();
  double lo = 0.0;
  double hi = 1.0;
  double x = quantile_initial_guess(a, b, target);
  double best_x = x;
  double best_err = std::numeric_limits<double>::infinity();
  double best_floor = 0.0;

  for (int iter = 0; iter < kQuantileIterationCap; ++iter) {
    const double f = inc_beta_value(a, b, x) - target;
    const double density = std::exp(log_beta_pdf(a, b, x));
    if (std::abs(f) < best_err) {
      best_err = std::abs(f);
      best_x = x;
      // residual attainable with x rounded to a double
      const double ulp = std::nextafter(x, 1.0) - x;
      best_floor = std::isfinite(density) ? 2.0 * density * ulp : 0.0;
    }
    if (f == 0.0) break;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }

    double next = x - f / density;
    if (!std::isfinite(next) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);
    }
    // Stop once the CDF residual is within tolerance and the Newton update no
    // longer moves x at double precision.
    const double step = std::abs(next - x);
    if (best_err <= kQuantileTolerance + best_floor && step <= 4.0 * std::numeric_limits<double>::epsilon() * x) {
      break;
    }
    if (next == x || hi - lo <= 2.0 * std::numeric_limits<double>::denorm_min()) {
      break;
    }
    x = next;
  }

  if (!(best_err <= kQuantileTolerance + best_floor)) {
    throw NumericError("inv_reg_inc_beta failed to converge for a=" + std::to_string(a) +
                       " b=" + std::to_string(b) + " p=" + std::to_string(target));
  }
  return Probability(best_x);
}

double normal_quantile(Probability p) {
  const double pv = p.value();
  if (pv <= 0.0 || pv >= 1.0) {
    throw DomainError("normal_quantile requires p in (0,1)");
  }
  // Wichura, AS241 (PPND16).
  const double q = pv - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((r * 2509.0809287301226727 + 33430.575583588128105) * r + 67265.770927008700853) * r +
                45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((r * 5226.495278852545925 + 28729.085735721942674) * r + 39307.89580009271061) * r +
                21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  double r = q < 0.0 ? pv : 1.0 - pv;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((r * 7.7454501427834140764e-4 + .0227238449892691845833) * r + .24178072517745061177) * r +
               1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((r * 1.05075007164441684324e-9 + 5.475938084995344946e-4) * r + .0151986665636164571966) * r +
               .14810397642748007459) * r + .68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((r * 2.01033439929228813265e-7 + 2.71155556874348757815e-5) * r + .0012426609473880784386) * r +
               .026532189526576123093) * r + .29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((r * 2.04426310338993978564e-15 + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
               7.868691311456132591e-4) * r + .0148753612908506148525) * r + .13692988092273580531) * r +
            .59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

}  // namespace crosswise::kernel
