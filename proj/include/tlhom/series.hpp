#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace tlh {

/** Names accepted by `series`. */
const std::vector<std::string>& series_names();

/**
 * Power-series coefficients t^0..t^order of a named closed form:
 *   torsion-2n4     t^2 / ((1-t-t^3)(1-t^4))
 *   free-2n4        (1+t) / (1-t^4)
 *   model-dims-2n4  1 / (1-t-t^3)
 *   tor-ranks-2n4   (1+t^3) / (1-t^4)
 */
std::vector<long> series(const std::string& which, int order);

/** Coefficients of t^d s^w, d <= order, for the bigraded forms free-2n4 and model-dims-2n4. */
std::map<std::pair<int, int>, long> bigraded_series(const std::string& which, int order);

/** Quotient num/den truncated at `order`; den[0] must be 1. */
std::vector<long> expand_rational(const std::vector<long>& num, const std::vector<long>& den, int order);

}  // namespace tlh
