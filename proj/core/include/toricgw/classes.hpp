#pragma once

#include <vector>

#include "toricgw/toric_data.hpp"

namespace toricgw {

// Every d in K_eff with 0 < grade(d) <= bound, sorted by (grade, pairings).
std::vector<EffClass> enumerate_effective(const ToricData& data, const Rational& bound);

// c_1 . d through the h2 quotient: sum over rays of the h2 components of D_i.
Rational c1_pairing(const ToricData& data, const EffClass& d);

bool passes_g_smooth(const ToricData& data, const EffClass& d, int j);
bool passes_g_orbi(const ToricData& data, const EffClass& d, int j);
std::vector<EffClass> filter_g_smooth(const ToricData& data, const std::vector<EffClass>& classes, int j);
std::vector<EffClass> filter_g_orbi(const ToricData& data, const std::vector<EffClass>& classes, int j);

// y^d as a monomial in the data's y variables.
Monomial y_monomial(const ToricData& data, const EffClass& d);

}  // namespace toricgw
