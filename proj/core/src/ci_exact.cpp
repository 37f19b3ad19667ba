#include "crosswise/ci_exact.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "crosswise/numkernel.hpp"

namespace crosswise {

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::cp:
      return "cp";
    case Method::wp:
      return "wp";
    case Method::ap:
      return "ap";
  }
  return "cp";
}

Method parse_method(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lowered == "cp") return Method::cp;
  if (lowered == "wp") return Method::wp;
  if (lowered == "ap") return Method::ap;
  throw DomainError("unknown interval method '" + std::string(text) + "' (expected cp, wp or ap)");
}

IntervalEstimate make_reported_interval(Method method, double raw_lower, double raw_upper) {
  IntervalEstimate out;
  out.method = method;
  out.raw_lower = raw_lower;
  out.raw_upper = raw_upper;
  out.lower_degenerate = raw_lower < 0.0;
  out.upper_degenerate = raw_upper > 1.0;
  out.lower = std::clamp(raw_lower, 0.0, 1.0);
  out.upper = std::clamp(raw_upper, 0.0, 1.0);
  return out;
}

IntervalEstimate cp_interval(const ModelConfig& config, ObservedCount z, ConfidenceLevel level) {
  const std::int64_t n = config.n();
  const std::int64_t count = z.value();
  const double q = config.q();
  const double nd = static_cast<double>(n);
  const double zd = static_cast<double>(count);

  const double rho_lower =
      count == 0 ? 0.0
                 : kernel::inv_reg_inc_beta(kernel::BetaParams(zd, nd - zd + 1.0), Probability(level.tail())).value();
  const double rho_upper =
      count == n ? 1.0
                 : kernel::inv_reg_inc_beta(kernel::BetaParams(zd + 1.0, nd - zd), Probability(1.0 - level.tail()))
                       .value();

  const double slope = 2.0 * q - 1.0;
  const double raw_lower = (rho_upper - (1.0 - q)) / slope;
  const double raw_upper = (rho_lower - (1.0 - q)) / slope;
  return make_reported_interval(Method::cp, raw_lower, raw_upper);
}

double cp_length(const ModelConfig& config, ObservedCount z, ConfidenceLevel level) {
  return cp_interval(config, z, level).length();
}

}  // namespace crosswise
